#pragma once

#include <map>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "nodal_stab/curve.hpp"

namespace nodal_stab {

/// Numerical class of a locally free sheaf of constant rank.
struct BundleClass {
  Int rank = 1;
  std::map<Id, Int> multidegree;

  Int total_degree() const {
    Int d = 0;
    for (const auto& [id, deg] : multidegree) d += deg;
    return d;
  }

  friend bool operator==(const BundleClass&, const BundleClass&) = default;
};

/// Coefficients of a fibral divisor sum a_i Y_i.
struct TwistDivisor {
  std::map<Id, Int> coeffs;

  static TwistDivisor zero(const TreeLikeCurve& c) {
    TwistDivisor t;
    for (auto id : c.ids()) t.coeffs[id] = 0;
    return t;
  }

  friend bool operator==(const TwistDivisor&, const TwistDivisor&) = default;
};

namespace detail {

template <class Map>
void require_keys(const TreeLikeCurve& c, const Map& m, const char* what) {
  if (m.size() != c.size())
    throw Error(ErrorCode::ClassMismatch, std::string(what) + " has " + std::to_string(m.size()) +
                                              " entries for a curve with " + std::to_string(c.size()) + " components");
  for (const auto& [id, v] : m)
    if (!c.contains(id)) throw Error(ErrorCode::ClassMismatch, std::string(what) + " names unknown id " + std::to_string(id));
}

}  // namespace detail

inline void validate_class(const TreeLikeCurve& c, const BundleClass& bc) {
  if (bc.rank < 1) throw Error(ErrorCode::ClassMismatch, "rank must be positive");
  detail::require_keys(c, bc.multidegree, "multidegree");
}

inline void validate_twist(const TreeLikeCurve& c, const TwistDivisor& t) {
  detail::require_keys(c, t.coeffs, "twist");
}

/// Y_i . Y_j on the regular model: 1 across a node, minus the valence on the diagonal.
inline Int intersection(const TreeLikeCurve& c, Id i, Id j) {
  auto a = c.index_of(i), b = c.index_of(j);
  if (a == b) return -static_cast<Int>(c.neighbors(a).size());
  return c.adjacent(a, b) ? 1 : 0;
}

/// Full intersection matrix in curve (input) order.
inline std::vector<std::vector<Int>> intersection_matrix(const TreeLikeCurve& c) {
  std::vector<std::vector<Int>> m(c.size(), std::vector<Int>(c.size(), 0));
  for (std::size_t a = 0; a < c.size(); ++a) {
    m[a][a] = -static_cast<Int>(c.neighbors(a).size());
    for (auto b : c.neighbors(a)) m[a][b] = 1;
  }
  return m;
}

/// Riemann-Roch on one component: d_i + r(1 - rho_a).
inline Int euler_char_component(const TreeLikeCurve& c, const BundleClass& bc, Id i) {
  const auto& comp = c.component(c.index_of(i));
  auto it = bc.multidegree.find(i);
  if (it == bc.multidegree.end()) throw Error(ErrorCode::ClassMismatch, "no degree for component " + std::to_string(i));
  return it->second + bc.rank * (1 - comp.arithmetic_genus());
}

/// chi over the whole curve: the normalization sequence loses r per connecting node.
inline Int euler_char_total(const TreeLikeCurve& c, const BundleClass& bc) {
  validate_class(c, bc);
  Int chi = 0;
  for (auto id : c.ids()) chi += euler_char_component(c, bc, id);
  return chi - bc.rank * static_cast<Int>(c.size() - 1);
}

template <class Range>
Int chi_subcurve_sum(const TreeLikeCurve& c, const BundleClass& bc, const Range& subset) {
  Int sum = 0;
  bool any = false;
  for (Id id : subset) {
    sum += euler_char_component(c, bc, id);
    any = true;
  }
  if (!any) throw Error(ErrorCode::EmptySubcurve, "subcurve has no components");
  return sum;
}

inline Int chi_subcurve_sum(const TreeLikeCurve& c, const BundleClass& bc, std::initializer_list<Id> subset) {
  return chi_subcurve_sum(c, bc, std::vector<Id>(subset));
}

/// Tensoring with O(sum a_j Y_j): d_i' = d_i + r * sum_j a_j (Y_j . Y_i).
inline BundleClass twist(const TreeLikeCurve& c, const BundleClass& bc, const TwistDivisor& t) {
  validate_class(c, bc);
  validate_twist(c, t);
  BundleClass out = bc;
  for (const auto& [j, a] : t.coeffs) {
    if (a == 0) continue;
    auto k = c.index_of(j);
    out.multidegree[j] -= bc.rank * a * static_cast<Int>(c.neighbors(k).size());
    for (auto nb : c.neighbors(k)) out.multidegree[c.id(nb)] += bc.rank * a;
  }
  return out;
}

/// Twist by a single multiple a * Y_i.
inline BundleClass twist_single(const TreeLikeCurve& c, const BundleClass& bc, Id i, Int a) {
  auto t = TwistDivisor::zero(c);
  t.coeffs.at(i) = a;
  return twist(c, bc, t);
}

}  // namespace nodal_stab
