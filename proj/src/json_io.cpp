#include "dyadic/json_io.hpp"

namespace dyadic::io {

namespace {

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw MalformedInput(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw MalformedInput(std::string(what) + ": expected a number");
    out.push_back(x.get<double>());
  }
  return out;
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw MalformedInput(std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

template <class Coords>
json coords_json(const Coords& c) {
  return json(std::vector<double>(c.coords().begin(), c.coords().end()));
}

}  // namespace

Vector vector_from_json(const json& j) { return Vector(numbers(j, "vector")); }
Covector covector_from_json(const json& j) { return Covector(numbers(j, "covector")); }

SquareMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw MalformedInput("matrix: expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (const auto& r : j) rows.push_back(numbers(r, "matrix row"));
  return SquareMatrix::from_rows(rows);
}

DyadicPerturbation perturbation_from_json(const json& j) {
  const json& list = j.is_object() ? field(j, "dyads") : j;
  if (!list.is_array()) throw MalformedInput("dyads: expected an array");
  std::vector<Dyad> dyads;
  for (const auto& d : list) dyads.emplace_back(vector_from_json(field(d, "v")), covector_from_json(field(d, "p")));
  return DyadicPerturbation(std::move(dyads));
}

std::vector<DualDyad> dual_perturbation_from_json(const json& j) {
  const json& list = j.is_object() ? field(j, "w") : j;
  if (!list.is_array() || list.empty()) throw MalformedInput("w: expected a non-empty array");
  std::vector<DualDyad> out;
  for (const auto& d : list) out.emplace_back(covector_from_json(field(d, "q")), covector_from_json(field(d, "p")));
  return out;
}

json to_json(const Vector& v) { return coords_json(v); }
json to_json(const Covector& p) { return coords_json(p); }

json to_json(const SquareMatrix& m) { return json(m.rows()); }

json to_json(const DyadicPerturbation& q) {
  json list = json::array();
  for (const auto& d : q.dyads()) list.push_back({{"v", to_json(d.vector)}, {"p", to_json(d.covector)}});
  return {{"dyads", list}};
}

json to_json(const std::vector<DualDyad>& w) {
  json list = json::array();
  for (const auto& d : w) list.push_back({{"q", to_json(d.q)}, {"p", to_json(d.p)}});
  return {{"w", list}};
}

Problem problem_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("problem: expected a JSON object");
  Problem p{matrix_from_json(field(j, "B")), std::nullopt, std::nullopt, {}};
  if (j.contains("g")) {
    p.metric.emplace(matrix_from_json(j.at("g")));
    if (p.metric->dim() != p.b.size()) throw DimensionMismatch("metric and B differ in dimension");
    p.dual = dual_perturbation_from_json(field(j, "w"));
    for (const auto& d : p.dual)
      if (d.q.dim() != p.b.size()) throw DimensionMismatch("w and B differ in dimension");
  } else {
    p.dyads.emplace(perturbation_from_json(field(j, "dyads")));
    if (p.dyads->dim() != p.b.size()) throw DimensionMismatch("dyads and B differ in dimension");
  }
  return p;
}

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
  return problem_from_json(j);
}

}  // namespace dyadic::io
