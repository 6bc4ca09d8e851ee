#include "spb/error.hpp"
#include "spb/numeric.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

namespace spb {

RateOutOfRangeError::RateOutOfRangeError(double rate, double lower, double upper)
    : PreconditionError([&] {
        std::ostringstream os;
        os.precision(10);
        os << "rate " << rate << " outside the open interval (" << lower << ", "
           << upper << ")";
        return os.str();
      }()),
      rate_(rate),
      lower_(lower),
      upper_(upper) {}

BisectionResult bisect_increasing(const std::function<double(double)>& f,
                                  double target, double lo, double hi,
                                  double value_tol, double x_tol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (target <= flo) return {lo, flo, 0};
  if (target >= fhi) return {hi, fhi, 0};
  BisectionResult best{lo, flo, 0};
  auto keep = [&](double x, double fx) {
    if (std::abs(fx - target) < std::abs(best.value - target)) best = {x, fx, best.iterations};
  };
  keep(hi, fhi);
  int it = 0;
  while (it < max_iter && hi - lo > x_tol) {
    ++it;
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    keep(mid, fm);
    if (std::abs(fm - target) <= value_tol) break;
    if (fm < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  best.iterations = it;
  return best;
}

unsigned worker_count() {
  if (const char* env = std::getenv("SPB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace spb
