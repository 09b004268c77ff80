#pragma once

#include <map>
#include <string>
#include <vector>

#include "nodal_stab/curve.hpp"
#include "nodal_stab/twist.hpp"

namespace nodal_stab {

/// Positive rational weights on the components summing to one.
struct Polarization {
  std::map<Id, Rational> weights;

  friend bool operator==(const Polarization&, const Polarization&) = default;
};

/// Degrees of a fixed ample class on each component.
struct AmpleDegrees {
  std::map<Id, Int> degrees;
};

inline void validate_polarization(const TreeLikeCurve& c, const Polarization& pol) {
  if (pol.weights.size() != c.size())
    throw Error(ErrorCode::InvalidPolarization, "polarization must weight every component exactly once");
  Rational sum = 0;
  for (const auto& [id, w] : pol.weights) {
    if (!c.contains(id)) throw Error(ErrorCode::InvalidPolarization, "weight for unknown id " + std::to_string(id));
    if (w <= 0) throw Error(ErrorCode::InvalidPolarization, "weight of component " + std::to_string(id) + " is not positive");
    sum += w;
  }
  if (sum != 1) throw Error(ErrorCode::InvalidPolarization, "weights sum to " + to_string(sum) + ", not 1");
}

/// d / r on an irreducible curve.
inline Rational slope(const TreeLikeCurve& c, const BundleClass& bc) {
  if (c.size() != 1) throw Error(ErrorCode::WrongArity, "slope is defined on irreducible curves only");
  validate_class(c, bc);
  return make_rational(bc.total_degree(), bc.rank);
}

/// chi(E) / sum(lambda_i r); with constant rank the denominator is r.
inline Rational seshadri_slope(const TreeLikeCurve& c, const BundleClass& bc, const Polarization& pol) {
  validate_polarization(c, pol);
  Rational denom = 0;
  for (const auto& [id, w] : pol.weights) denom += w * bc.rank;
  return Rational(euler_char_total(c, bc)) / denom;
}

/// lambda_i = h_i / sum h.
inline Polarization polarization_from_ample(const AmpleDegrees& h) {
  Int total = 0;
  for (const auto& [id, deg] : h.degrees) {
    if (deg < 1) throw Error(ErrorCode::InvalidPolarization, "ample degree on " + std::to_string(id) + " must be >= 1");
    total += deg;
  }
  if (h.degrees.empty()) throw Error(ErrorCode::InvalidPolarization, "no ample degrees given");
  Polarization pol;
  for (const auto& [id, deg] : h.degrees) pol.weights[id] = make_rational(deg, total);
  return pol;
}

/// One row of the window check at order index i.
struct IndexVerdict {
  std::size_t index = 0;   // order index, 1-based
  Id component = 0;        // id of Y_i
  std::size_t g_size = 0;  // |G(i)|
  Rational lambda_sum;     // sum of lambda_j over G(i)
  Rational lower;          // L_i
  Rational upper;          // L_i + r
  Int value = 0;           // S_i, the chi-sum over G(i)
  bool pass = false;
};

struct LambdaReport {
  std::vector<IndexVerdict> indices;
  bool pass() const {
    for (const auto& v : indices)
      if (!v.pass) return false;
    return true;
  }
};

/// Evaluates the window L_i <= S_i <= L_i + r at order index i.
inline IndexVerdict lambda_check_index(const TreeLikeCurve& c, const Ordering& ord, const BundleClass& bc,
                                       const Polarization& pol, std::size_t i, Int chi_total) {
  IndexVerdict v;
  v.index = i;
  v.component = ord.perm[i - 1];
  const auto& g = ord.G[i - 1];
  v.g_size = g.size();
  for (Id id : g) v.lambda_sum += pol.weights.at(id);
  v.lower = v.lambda_sum * chi_total + Rational(bc.rank * static_cast<Int>(g.size() - 1));
  v.upper = v.lower + Rational(bc.rank);
  v.value = chi_subcurve_sum(c, bc, g);
  v.pass = v.lower <= v.value && Rational(v.value) <= v.upper;
  return v;
}

/// Per-index lambda-semistability verdicts for the given ordering.
inline LambdaReport lambda_check(const TreeLikeCurve& c, const Ordering& ord, const BundleClass& bc,
                                 const Polarization& pol) {
  if (!(make_ordering(c, ord.perm) == ord))
    throw Error(ErrorCode::OrderingMismatch, "ordering does not belong to this curve");
  validate_class(c, bc);
  validate_polarization(c, pol);
  const Int chi = euler_char_total(c, bc);
  LambdaReport report;
  for (std::size_t i = 1; i <= c.size(); ++i) report.indices.push_back(lambda_check_index(c, ord, bc, pol, i, chi));
  return report;
}

struct ComponentIssue {
  Id component = 0;
  std::string reason;
};

struct DetVerdict {
  bool degrees_match = true;        // (a) det multidegree equals the bundle's
  bool rational_divisible = true;   // (b) r | d_i on every rational component
  std::vector<ComponentIssue> issues;
  bool pass() const { return degrees_match && rational_divisible; }
};

/// A bundle can only carry a prescribed determinant if the multidegrees
/// agree and, on smooth rational components, the degree is a multiple of r.
inline DetVerdict det_compatibility(const TreeLikeCurve& c, const BundleClass& bc, const std::map<Id, Int>& det_multidegree) {
  validate_class(c, bc);
  detail::require_keys(c, det_multidegree, "determinant multidegree");
  DetVerdict v;
  for (const auto& comp : c.components()) {
    Int d = bc.multidegree.at(comp.id);
    Int det_d = det_multidegree.at(comp.id);
    if (d != det_d) {
      v.degrees_match = false;
      v.issues.push_back({comp.id, "degree " + std::to_string(d) + " differs from determinant degree " +
                                       std::to_string(det_d)});
    }
    if (comp.is_rational() && d % bc.rank != 0) {
      v.rational_divisible = false;
      v.issues.push_back({comp.id, "rational component degree " + std::to_string(d) + " is not a multiple of rank " +
                                       std::to_string(bc.rank)});
    }
  }
  return v;
}

/// Caller-supplied numerics of a subsheaf: per-component ranks and chi.
struct SubobjectNumerics {
  std::map<Id, Int> multirank;
  Int chi = 0;
};

enum class Comparison { Less, Equal, Greater };

inline std::string to_string(Comparison cmp) {
  switch (cmp) {
    case Comparison::Less: return "<";
    case Comparison::Equal: return "=";
    case Comparison::Greater: return ">";
  }
  return "?";
}

struct GiesekerComparison {
  Rational sub_value;    // chi_sub / sum(r_i' h_i)
  Rational class_value;  // chi(E) / (r sum h_i)
  Comparison result = Comparison::Equal;
  bool destabilizing() const { return result == Comparison::Greater; }
};

/// Reduced-Hilbert-polynomial comparison for curve classes, via the
/// Hilbert-coefficient weights h_i.
inline GiesekerComparison gieseker_vs_seshadri(const TreeLikeCurve& c, const BundleClass& bc, const AmpleDegrees& h,
                                               const SubobjectNumerics& sub) {
  validate_class(c, bc);
  polarization_from_ample(h);
  detail::require_keys(c, h.degrees, "ample degrees");
  detail::require_keys(c, sub.multirank, "multirank");
  Int weighted = 0, h_total = 0;
  for (const auto& [id, r] : sub.multirank) {
    if (r < 0 || r > bc.rank)
      throw Error(ErrorCode::InvalidMultirank, "rank " + std::to_string(r) + " on component " + std::to_string(id) +
                                                   " outside 0.." + std::to_string(bc.rank));
    weighted += r * h.degrees.at(id);
  }
  if (weighted == 0) throw Error(ErrorCode::ZeroMultirank, "subobject has rank zero everywhere");
  for (const auto& [id, deg] : h.degrees) h_total += deg;

  GiesekerComparison out;
  out.sub_value = make_rational(sub.chi, weighted);
  out.class_value = make_rational(euler_char_total(c, bc), bc.rank * h_total);
  out.result = out.sub_value < out.class_value   ? Comparison::Less
               : out.sub_value == out.class_value ? Comparison::Equal
                                                  : Comparison::Greater;
  return out;
}

}  // namespace nodal_stab
