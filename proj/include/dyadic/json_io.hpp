#pragma once

// JSON value schema:
//   Vector / Covector   [x0, x1, ...]
//   Operator / Metric   [[row0...], [row1...], ...]
//   DyadicPerturbation  {"dyads": [{"v": [...], "p": [...]}, ...]}
//   dual perturbation   {"w": [{"q": [...], "p": [...]}, ...]}
//   problem             {"B": matrix, "dyads": [...], "g": optional matrix, "w": optional}

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyadic/errors.hpp"
#include "dyadic/metric.hpp"
#include "dyadic/tensor.hpp"

namespace dyadic::io {

using nlohmann::json;

// Structurally invalid JSON or a value of the wrong JSON type.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

Vector vector_from_json(const json& j);
Covector covector_from_json(const json& j);
SquareMatrix matrix_from_json(const json& j);
// Accepts either {"dyads": [...]} or the bare array.
DyadicPerturbation perturbation_from_json(const json& j);
std::vector<DualDyad> dual_perturbation_from_json(const json& j);

json to_json(const Vector& v);
json to_json(const Covector& p);
json to_json(const SquareMatrix& m);
json to_json(const DyadicPerturbation& q);
json to_json(const std::vector<DualDyad>& w);

// B' = B + sum v_i (x) p_i, or with "g" present, A' = B + W : V -> V*.
struct Problem {
  SquareMatrix b;
  std::optional<DyadicPerturbation> dyads;
  std::optional<Metric> metric;
  std::vector<DualDyad> dual;

  bool is_dual() const noexcept { return metric.has_value(); }
};

// Throws MalformedInput on bad JSON and DimensionMismatch on inconsistent sizes.
Problem parse_problem(const std::string& text);
Problem problem_from_json(const json& j);

}  // namespace dyadic::io
