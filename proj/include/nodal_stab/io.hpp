#pragma once

// JSON documents for every external surface. Keys are emitted in sorted
// order (nlohmann's default std::map storage) and rationals as lowest-terms
// strings, so reports are byte-for-byte reproducible.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "nodal_stab/balancer.hpp"
#include "nodal_stab/gpb.hpp"
#include "nodal_stab/truncated.hpp"

namespace nodal_stab::io {

using json = nlohmann::json;

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, where + ": missing field '" + key + "'");
  return j.at(key);
}

inline Int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw Error(ErrorCode::ParseError, where + ": expected an integer");
  return j.get<Int>();
}

inline Id key_id(const std::string& key, const std::string& where) {
  try {
    return parse_int(key);
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, where + ": key '" + key + "' is not a component id");
  }
}

inline std::map<Id, Int> int_map(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, where + ": expected an object keyed by component id");
  std::map<Id, Int> out;
  for (const auto& [key, value] : j.items()) out[key_id(key, where)] = as_int(value, where + "." + key);
  return out;
}

inline Rational as_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<Int>());
  if (!j.is_string()) throw Error(ErrorCode::ParseError, where + ": expected a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, where + ": " + e.what());
  }
}

template <class Map>
json keyed(const Map& m) {
  json out = json::object();
  for (const auto& [id, v] : m) out[std::to_string(id)] = v;
  return out;
}

}  // namespace detail

// --- curve ------------------------------------------------------------------

inline CurveDescription curve_from_json(const json& j) {
  CurveDescription desc;
  const auto& comps = detail::field(j, "components", "curve");
  if (!comps.is_array()) throw Error(ErrorCode::ParseError, "curve.components: expected an array");
  for (std::size_t k = 0; k < comps.size(); ++k) {
    std::string where = "curve.components[" + std::to_string(k) + "]";
    Component c;
    c.id = detail::as_int(detail::field(comps[k], "id", where), where + ".id");
    c.geometric_genus = comps[k].contains("geometric_genus")
                            ? detail::as_int(comps[k].at("geometric_genus"), where + ".geometric_genus")
                            : 0;
    c.internal_nodes = comps[k].contains("internal_nodes")
                           ? detail::as_int(comps[k].at("internal_nodes"), where + ".internal_nodes")
                           : 0;
    desc.components.push_back(c);
  }
  const auto& edges = j.contains("edges") ? j.at("edges") : json::array();
  if (!edges.is_array()) throw Error(ErrorCode::ParseError, "curve.edges: expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    std::string where = "curve.edges[" + std::to_string(k) + "]";
    if (!edges[k].is_array() || edges[k].size() != 2) throw Error(ErrorCode::ParseError, where + ": expected [i, j]");
    desc.edges.emplace_back(detail::as_int(edges[k][0], where), detail::as_int(edges[k][1], where));
  }
  return desc;
}

inline json to_json(const CurveDescription& desc) {
  json comps = json::array();
  for (const auto& c : desc.components)
    comps.push_back({{"id", c.id}, {"geometric_genus", c.geometric_genus}, {"internal_nodes", c.internal_nodes}});
  json edges = json::array();
  for (auto [a, b] : desc.edges) edges.push_back({a, b});
  return {{"components", comps}, {"edges", edges}};
}

inline json to_json(const CurveReport& r) {
  return {{"valid", true},
          {"components", r.components},
          {"edges", r.edges},
          {"arithmetic_genus", r.arithmetic_genus},
          {"genus_at_least_two", r.genus_at_least_two}};
}

inline json to_json(const Ordering& ord) {
  json indices = json::array();
  for (std::size_t i = 1; i <= ord.size(); ++i) {
    json entry = {{"index", i}, {"component", ord.perm[i - 1]}, {"G", ord.G[i - 1]}, {"B", ord.B[i - 1]}};
    entry["nu"] = i < ord.size() ? json(ord.nu[i - 1]) : json(nullptr);
    indices.push_back(entry);
  }
  return {{"perm", ord.perm}, {"indices", indices}};
}

// --- classes, twists, polarizations -----------------------------------------

inline BundleClass class_from_json(const json& j) {
  BundleClass bc;
  bc.rank = detail::as_int(detail::field(j, "rank", "bundle"), "bundle.rank");
  bc.multidegree = detail::int_map(detail::field(j, "multidegree", "bundle"), "bundle.multidegree");
  return bc;
}

inline json to_json(const BundleClass& bc) { return {{"rank", bc.rank}, {"multidegree", detail::keyed(bc.multidegree)}}; }

inline TwistDivisor twist_from_json(const json& j) {
  return TwistDivisor{detail::int_map(detail::field(j, "coeffs", "twist"), "twist.coeffs")};
}

inline json to_json(const TwistDivisor& t) { return {{"coeffs", detail::keyed(t.coeffs)}}; }

inline Polarization polarization_from_json(const json& j) {
  Polarization pol;
  const auto& w = detail::field(j, "weights", "polarization");
  if (!w.is_object()) throw Error(ErrorCode::ParseError, "polarization.weights: expected an object");
  for (const auto& [key, value] : w.items())
    pol.weights[detail::key_id(key, "polarization.weights")] =
        detail::as_rational(value, "polarization.weights." + key);
  return pol;
}

inline AmpleDegrees ample_from_json(const json& j) {
  return AmpleDegrees{detail::int_map(detail::field(j, "degrees", "ample"), "ample.degrees")};
}

inline json to_json(const Polarization& pol) {
  json w = json::object();
  for (const auto& [id, q] : pol.weights) w[std::to_string(id)] = to_string(q);
  return {{"weights", w}};
}

// --- reports ----------------------------------------------------------------

inline json to_json(const IndexVerdict& v) {
  return {{"index", v.index},         {"component", v.component},     {"g_size", v.g_size},
          {"lambda_sum", to_string(v.lambda_sum)}, {"lower", to_string(v.lower)}, {"upper", to_string(v.upper)},
          {"value", v.value},         {"pass", v.pass}};
}

inline json to_json(const LambdaReport& r) {
  json idx = json::array();
  for (const auto& v : r.indices) idx.push_back(to_json(v));
  return {{"pass", r.pass()}, {"indices", idx}};
}

inline json to_json(const BalanceStep& s) {
  return {{"index", s.index},
          {"component", s.component},
          {"lower", to_string(s.lower)},
          {"upper", to_string(s.upper)},
          {"value_before", s.value_before},
          {"value_after", s.value_after},
          {"a_window", {s.a_min, s.a_max}},
          {"a", s.chosen}};
}

inline json to_json(const BalanceResult& r) {
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s));
  return {{"ordering", r.ordering.perm},
          {"twist", detail::keyed(r.twist.coeffs)},
          {"rank", r.balanced.rank},
          {"multidegree", detail::keyed(r.balanced.multidegree)},
          {"steps", steps}};
}

inline json to_json(const DetVerdict& v) {
  json issues = json::array();
  for (const auto& i : v.issues) issues.push_back({{"component", i.component}, {"reason", i.reason}});
  return {{"pass", v.pass()},
          {"degrees_match", v.degrees_match},
          {"rational_divisible", v.rational_divisible},
          {"issues", issues}};
}

inline json to_json(const std::vector<UnbalanceEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries)
    out.push_back({{"index", e.index}, {"component", e.component}, {"distance", to_string(e.distance)}});
  return out;
}

// --- gluing flags -----------------------------------------------------------

using AnyFlag = std::variant<GluingFlag<PrimeField>, GluingFlag<RationalField>>;

/// `{"field":"F7","rank":2,"basis":[["1","0","0","1"],["0","1","1","0"]]}`
inline AnyFlag flag_from_json(const json& j) {
  const auto& fj = detail::field(j, "field", "flag");
  if (!fj.is_string()) throw Error(ErrorCode::ParseError, "flag.field: expected a string");
  auto f = [&]() -> AnyField {
    try {
      return parse_field(fj.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, std::string("flag.field: ") + e.what());
    }
  }();
  const auto& basis = detail::field(j, "basis", "flag");
  if (!basis.is_array()) throw Error(ErrorCode::ParseError, "flag.basis: expected an array of rows");
  auto r = j.contains("rank") ? static_cast<std::size_t>(detail::as_int(j.at("rank"), "flag.rank")) : basis.size();

  return std::visit(
      [&](const auto& field) -> AnyFlag {
        using F = std::decay_t<decltype(field)>;
        GluingFlag<F> flag{field, r, {}};
        for (std::size_t row = 0; row < basis.size(); ++row) {
          std::string where = "flag.basis[" + std::to_string(row) + "]";
          if (!basis[row].is_array()) throw Error(ErrorCode::ParseError, where + ": expected an array");
          std::vector<typename F::Element> values;
          for (const auto& e : basis[row]) {
            std::string s = e.is_string() ? e.get<std::string>() : e.dump();
            try {
              values.push_back(field.parse(s));
            } catch (const Error& err) {
              throw Error(ErrorCode::ParseError, where + ": " + err.what());
            }
          }
          flag.basis.push_back(std::move(values));
        }
        try {
          validate_flag(flag);
        } catch (const Error& err) {
          throw Error(ErrorCode::ParseError, std::string("flag: ") + err.what());
        }
        return flag;
      },
      f);
}

template <class Field>
json to_json(const GluingFlag<Field>& flag) {
  json basis = json::array();
  for (const auto& row : flag.basis) {
    json r = json::array();
    for (const auto& e : row) r.push_back(flag.field.format(e));
    basis.push_back(r);
  }
  return {{"field", flag.field.name()}, {"rank", flag.rank}, {"basis", basis}};
}

inline json to_json(const ProjectionVerdict& v) {
  return {{"full_rank", v.full_rank}, {"pr1_iso", v.pr1_iso}, {"pr2_iso", v.pr2_iso}, {"locally_free", v.locally_free()}};
}

inline json to_json(const KernelSectionVerdict& v) {
  return {{"meets_p_side", v.meets_p_side}, {"meets_q_side", v.meets_q_side}, {"pass", v.pass()}};
}

inline json to_json(const PhiNumerics& p) {
  return {{"rank", p.rank},
          {"chi_normalization", p.chi_normalization},
          {"chi", p.chi},
          {"arithmetic_genus", p.arithmetic_genus},
          {"degree", p.degree}};
}

// --- truncated rings ----------------------------------------------------------

/// Scalars are coefficient vectors [c0, c1, ..., cn].
inline TruncatedScalar scalar_from_json(const json& j, const PrimeField& f, std::size_t order, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, where + ": expected a coefficient array");
  std::vector<Int> coeffs;
  for (const auto& c : j) coeffs.push_back(detail::as_int(c, where));
  if (coeffs.size() > order + 1) throw Error(ErrorCode::ParseError, where + ": more than n+1 coefficients");
  return TruncatedScalar(f, order, coeffs);
}

inline json to_json(const TruncatedScalar& s) { return s.coeffs(); }

inline TruncatedMatrix truncated_from_json(const json& j, const PrimeField& f, std::size_t order,
                                           const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, where + ": expected a nonempty array of rows");
  TruncatedMatrix m(f, order, j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j.size()) throw Error(ErrorCode::ParseError, where + ": matrix is not square");
    for (std::size_t k = 0; k < j.size(); ++k)
      m(i, k) = scalar_from_json(j[i][k], f, order, where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

inline json to_json(const TruncatedMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<std::vector<Int>> int_matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, where + ": expected a nonempty array of rows");
  std::vector<std::vector<Int>> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) throw Error(ErrorCode::ParseError, where + ": matrix is not square");
    std::vector<Int> r;
    for (const auto& e : row) r.push_back(detail::as_int(e, where));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nodal_stab::io
