#include "spb/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spb/error.hpp"

namespace spb::io {

using nlohmann::json;

namespace {

json parse_object(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("document must be an object");
  return doc;
}

VectorXd number_array(const json& node, const char* what) {
  if (!node.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  VectorXd v(Index(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw InputError(std::string(what) + " must contain only numbers");
    }
    v(Index(i)) = node[i].get<double>();
    if (v(Index(i)) < 0.0) {
      throw PreconditionError(std::string(what) + " contains a negative entry");
    }
  }
  return v;
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw InputError(std::string("missing field \"") + name + "\"");
  return *it;
}

FiniteDist masses_to_dist(const json& node) {
  return FiniteDist(number_array(node, "masses"), kFileTolerance);
}

json to_json(const VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

FiniteDist parse_distribution(const std::string& text) {
  return masses_to_dist(field(parse_object(text), "masses"));
}

DiscreteChannel parse_channel(const std::string& text) {
  const json doc = parse_object(text);
  const json& rows = field(doc, "rows");
  if (!rows.is_array() || rows.empty()) throw InputError("rows must be a non-empty array");
  const std::size_t inputs = rows.size();
  const std::size_t outputs = rows[0].is_array() ? rows[0].size() : 0;
  if (doc.contains("inputs") && doc["inputs"].get<std::size_t>() != inputs) {
    throw InputError("\"inputs\" does not match the number of rows");
  }
  if (doc.contains("outputs") && doc["outputs"].get<std::size_t>() != outputs) {
    throw InputError("\"outputs\" does not match the row length");
  }
  MatrixXd m(static_cast<Index>(inputs), static_cast<Index>(outputs));
  for (std::size_t x = 0; x < inputs; ++x) {
    const VectorXd r = number_array(rows[x], "rows");
    if (std::size_t(r.size()) != outputs) throw InputError("rows have unequal lengths");
    m.row(Index(x)) = r.transpose();
  }
  return DiscreteChannel(std::move(m), kFileTolerance);
}

ConstraintSet parse_constraint(const std::string& text) {
  const json doc = parse_object(text);
  const std::string kind = field(doc, "kind").get<std::string>();
  if (kind == "all") return ConstraintSet::all();
  if (kind == "single") return ConstraintSet::single(masses_to_dist(field(doc, "masses")));
  if (kind == "cost") {
    const json& budget = field(doc, "budget");
    if (!budget.is_number()) throw InputError("budget must be a number");
    return ConstraintSet::cost(number_array(field(doc, "costs"), "costs"), budget.get<double>());
  }
  if (kind == "list") {
    const json& members = field(doc, "members");
    if (!members.is_array()) throw InputError("members must be an array");
    std::vector<FiniteDist> list;
    for (const auto& m : members) list.push_back(masses_to_dist(m));
    return ConstraintSet::explicit_list(std::move(list));
  }
  throw InputError("unknown constraint kind \"" + kind + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string format_distribution(const FiniteDist& p) {
  return json{{"masses", to_json(p.masses())}}.dump();
}

std::string format_channel(const DiscreteChannel& w) {
  json rows = json::array();
  for (Index x = 0; x < w.inputs(); ++x) rows.push_back(to_json(w.matrix().row(x).transpose()));
  return json{{"inputs", w.inputs()}, {"outputs", w.outputs()}, {"rows", rows}}.dump();
}

double round9(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace spb::io
