#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nodal_stab/field.hpp"
#include "nodal_stab/rational.hpp"

namespace nodal_stab {

/// Flag dimensions over one node divisor D = p + q: m1 = dim F0/F1, m2 = dim F1.
/// Weights are fixed at (0, 1).
struct NodeFlag {
  Int m1 = 0;
  Int m2 = 0;
};

/// Numerical generalized parabolic bundle on the normalization of an
/// irreducible nodal curve.
struct GpbClass {
  Int rank = 1;
  Int degree = 0;
  std::vector<NodeFlag> flags;  // one per node

  /// The diagonal structure spanned by e_j + f_j: m1 = m2 = r at every node.
  static GpbClass canonical(Int rank, Int degree, Int nodes) {
    return GpbClass{rank, degree, std::vector<NodeFlag>(static_cast<std::size_t>(nodes), NodeFlag{rank, rank})};
  }

  Int nodes() const { return static_cast<Int>(flags.size()); }
};

inline void validate_gpb(const GpbClass& g) {
  if (g.rank < 1) throw Error(ErrorCode::InvalidGpb, "rank must be positive");
  for (std::size_t i = 0; i < g.flags.size(); ++i) {
    const auto& f = g.flags[i];
    if (f.m1 < 0 || f.m2 < 0 || f.m1 + f.m2 != 2 * g.rank)
      throw Error(ErrorCode::InvalidGpb, "flag at node " + std::to_string(i + 1) + " must split 2r = " +
                                             std::to_string(2 * g.rank) + " as m1 + m2");
  }
}

/// wt = sum over nodes of m1*0 + m2*1.
inline Int parabolic_weight(const GpbClass& g) {
  validate_gpb(g);
  Int wt = 0;
  for (const auto& f : g.flags) wt += f.m2;
  return wt;
}

inline Int parabolic_degree(const GpbClass& g) { return g.degree + parabolic_weight(g); }

inline Rational parabolic_slope(const GpbClass& g) { return make_rational(parabolic_degree(g), g.rank); }

/// Numerics of a subbundle K with its induced flag: dim F1(K) per node.
struct SubbundleNumerics {
  Int rank = 1;
  Int degree = 0;
  std::vector<Int> flag_dims;
};

struct SubbundleVerdict {
  Rational sub_slope;    // par mu(K)
  Rational class_slope;  // par mu(E)
  Rational bound;        // (d' + gamma r') / r'
  bool below = false;    // par mu(K) <= par mu(E)
  bool slope_hypothesis = false;  // d'/r' <= d/r
  bool chain_holds = false;       // par mu(K) <= bound <= par mu(E), meaningful under the hypothesis
};

inline SubbundleVerdict gpb_subbundle_check(const GpbClass& g, const SubbundleNumerics& sub) {
  validate_gpb(g);
  if (sub.rank < 1 || sub.rank >= g.rank)
    throw Error(ErrorCode::InvalidGpb, "subbundle rank must lie in 1.." + std::to_string(g.rank - 1));
  if (static_cast<Int>(sub.flag_dims.size()) != g.nodes())
    throw Error(ErrorCode::DimensionMismatch, "need one flag dimension per node");
  Int flag_total = 0;
  for (auto dim : sub.flag_dims) {
    if (dim < 0 || dim > sub.rank)
      throw Error(ErrorCode::DimensionBound, "flag dimension " + std::to_string(dim) + " exceeds subbundle rank " +
                                                 std::to_string(sub.rank));
    flag_total += dim;
  }
  SubbundleVerdict v;
  v.sub_slope = make_rational(sub.degree + flag_total, sub.rank);
  v.class_slope = parabolic_slope(g);
  v.bound = make_rational(sub.degree + g.nodes() * sub.rank, sub.rank);
  v.below = v.sub_slope <= v.class_slope;
  v.slope_hypothesis = make_rational(sub.degree, sub.rank) <= make_rational(g.degree, g.rank);
  v.chain_holds = v.sub_slope <= v.bound && v.bound <= v.class_slope;
  return v;
}

/// Rank/chi/degree bookkeeping for the descended sheaf phi(E) on Y.
struct PhiNumerics {
  Int rank = 0;
  Int chi_normalization = 0;  // chi(E) on the normalization
  Int chi = 0;                // chi(phi(E)) on Y
  Int arithmetic_genus = 0;   // rho_a(Y) = g~ + gamma
  Int degree = 0;
};

/// Requires the flag to have dim F1 = r at each node (both projections can
/// only then be isomorphisms).
inline PhiNumerics phi_rank_degree(const GpbClass& g, Int normalization_genus) {
  validate_gpb(g);
  if (normalization_genus < 0) throw Error(ErrorCode::InvalidGpb, "negative genus");
  for (const auto& f : g.flags)
    if (f.m2 != g.rank) throw Error(ErrorCode::DimensionBound, "phi(E) needs dim F1 = r at every node");
  PhiNumerics out;
  out.rank = g.rank;
  out.chi_normalization = g.degree + g.rank * (1 - normalization_genus);
  out.chi = out.chi_normalization - parabolic_weight(g);
  out.arithmetic_genus = normalization_genus + g.nodes();
  out.degree = out.chi + g.rank * (out.arithmetic_genus - 1);
  return out;
}

/// F1 inside E(p) + E(q), as an r x 2r matrix whose rows span it.
template <class Field>
struct GluingFlag {
  Field field;
  std::size_t rank = 0;
  Matrix<Field> basis;

  Matrix<Field> left() const { return block(0); }   // pr1: the E(p) part
  Matrix<Field> right() const { return block(rank); }  // pr2: the E(q) part

 private:
  Matrix<Field> block(std::size_t offset) const {
    Matrix<Field> m(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      m[i].assign(basis[i].begin() + static_cast<std::ptrdiff_t>(offset),
                  basis[i].begin() + static_cast<std::ptrdiff_t>(offset + rank));
    return m;
  }
};

template <class Field>
void validate_flag(const GluingFlag<Field>& flag) {
  if (flag.rank < 1) throw Error(ErrorCode::DimensionMismatch, "flag rank must be positive");
  if (flag.basis.size() != flag.rank) throw Error(ErrorCode::DimensionMismatch, "flag needs exactly r rows");
  for (const auto& row : flag.basis)
    if (row.size() != 2 * flag.rank) throw Error(ErrorCode::DimensionMismatch, "flag rows need 2r entries");
}

/// The diagonal flag {e_j + f_j}.
template <class Field>
GluingFlag<Field> canonical_flag(const Field& f, std::size_t r) {
  GluingFlag<Field> flag{f, r, Matrix<Field>(r, std::vector<typename Field::Element>(2 * r, f.zero()))};
  for (std::size_t j = 0; j < r; ++j) flag.basis[j][j] = flag.basis[j][r + j] = f.one();
  return flag;
}

/// Flag gluing O(d-(r-1)a) + O(a)^{r-1} on P^1 at one node: row j is
/// e_j + sum_{l != j} f_l, i.e. [I | J - I].
template <class Field>
GluingFlag<Field> build_rational_flag(const Field& f, std::size_t r, Int d, Int a) {
  if (r < 1) throw Error(ErrorCode::DimensionMismatch, "rank must be positive");
  if (static_cast<Int>(r) * a > d)
    throw Error(ErrorCode::DegreeBound, "need r*a <= d, got " + std::to_string(static_cast<Int>(r) * a) + " > " +
                                            std::to_string(d));
  GluingFlag<Field> flag{f, r, Matrix<Field>(r, std::vector<typename Field::Element>(2 * r, f.zero()))};
  for (std::size_t j = 0; j < r; ++j) {
    flag.basis[j][j] = f.one();
    for (std::size_t l = 0; l < r; ++l)
      if (l != j) flag.basis[j][r + l] = f.one();
  }
  if (rank(f, flag.right()) != r)
    throw Error(ErrorCode::SingularProjection, "J - I is singular over " + f.name() + " for r = " + std::to_string(r) +
                                                   " (characteristic divides r - 1)");
  return flag;
}

struct ProjectionVerdict {
  bool full_rank = false;  // dim F1 = r
  bool pr1_iso = false;
  bool pr2_iso = false;
  bool locally_free() const { return full_rank && pr1_iso && pr2_iso; }
};

template <class Field>
ProjectionVerdict check_projections(const GluingFlag<Field>& flag) {
  validate_flag(flag);
  ProjectionVerdict v;
  v.full_rank = rank(flag.field, flag.basis) == flag.rank;
  v.pr1_iso = rank(flag.field, flag.left()) == flag.rank;
  v.pr2_iso = rank(flag.field, flag.right()) == flag.rank;
  return v;
}

struct KernelSectionVerdict {
  bool meets_p_side = false;  // F1 and E(p) + 0 intersect nontrivially
  bool meets_q_side = false;  // F1 and 0 + E(q) intersect nontrivially
  bool pass() const { return !meets_p_side && !meets_q_side; }
};

/// F1 meets a coordinate summand trivially iff stacking the summand's basis
/// under F1's rows gives rank 2r.
template <class Field>
KernelSectionVerdict check_no_kernel_section(const GluingFlag<Field>& flag) {
  validate_flag(flag);
  const auto& f = flag.field;
  const std::size_t r = flag.rank;
  auto stacked_rank = [&](std::size_t offset) {
    Matrix<Field> m = flag.basis;
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<typename Field::Element> row(2 * r, f.zero());
      row[offset + j] = f.one();
      m.push_back(std::move(row));
    }
    return rank(f, std::move(m));
  };
  const std::size_t span = rank(f, flag.basis);
  KernelSectionVerdict v;
  v.meets_p_side = stacked_rank(0) < span + r;
  v.meets_q_side = stacked_rank(r) < span + r;
  return v;
}

/// b with b^r = a. Over F_p the smallest such residue; over Q the real root.
inline PrimeField::Element rth_root(const PrimeField& f, Int r, PrimeField::Element a) {
  a = f.from_int(a);
  if (a == 0) throw Error(ErrorCode::NotUnit, "gluing scalars must be nonzero");
  for (Int b = 1; b < f.characteristic(); ++b)
    if (f.pow(b, r) == a)
      return b;
  throw Error(ErrorCode::NoRoot, std::to_string(a) + " has no " + std::to_string(r) + "-th root in " + f.name());
}

inline Rational rth_root(const RationalField&, Int r, const Rational& a) {
  if (a == 0) throw Error(ErrorCode::NotUnit, "gluing scalars must be nonzero");
  bool negative = a < 0;
  if (negative && r % 2 == 0)
    throw Error(ErrorCode::NoRoot, to_string(a) + " has no " + std::to_string(r) + "-th root in Q");
  mpz_class num = abs(a.get_num()), n, d;
  bool exact = mpz_root(n.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(r)) != 0;
  exact = mpz_root(d.get_mpz_t(), a.get_den_mpz_t(), static_cast<unsigned long>(r)) != 0 && exact;
  if (!exact) throw Error(ErrorCode::NoRoot, to_string(a) + " has no " + std::to_string(r) + "-th root in Q");
  Rational root(negative ? mpz_class(-n) : n, d);
  root.canonicalize();
  return root;
}

/// Preimages under [r]: (a_1..a_n) -> (a_1^r..a_n^r) on the torus of gluing scalars.
template <class Field>
std::vector<typename Field::Element> picard_rth_root(const Field& f, Int r,
                                                     const std::vector<typename Field::Element>& scalars) {
  if (r < 1) throw Error(ErrorCode::DimensionMismatch, "r must be positive");
  std::vector<typename Field::Element> roots;
  roots.reserve(scalars.size());
  for (const auto& a : scalars) roots.push_back(rth_root(f, r, a));
  return roots;
}

}  // namespace nodal_stab
