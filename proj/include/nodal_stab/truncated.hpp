#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nodal_stab/field.hpp"

namespace nodal_stab {

/// Element of k[pi]/(pi^{n+1}) over a prime field k; coeffs[e] multiplies pi^e.
class TruncatedScalar {
 public:
  TruncatedScalar(PrimeField field, std::size_t order) : field_(field), coeffs_(order + 1, 0) {}
  TruncatedScalar(PrimeField field, std::size_t order, std::vector<Int> coeffs) : TruncatedScalar(field, order) {
    if (coeffs.size() > order + 1)
      throw Error(ErrorCode::DimensionMismatch, "too many coefficients for truncation order " + std::to_string(order));
    for (std::size_t e = 0; e < coeffs.size(); ++e) coeffs_[e] = field_.from_int(coeffs[e]);
  }

  static TruncatedScalar constant(PrimeField field, std::size_t order, Int c) {
    return TruncatedScalar(field, order, {c});
  }
  /// c * pi^e
  static TruncatedScalar monomial(PrimeField field, std::size_t order, Int c, std::size_t e) {
    TruncatedScalar s(field, order);
    if (e <= order) s.coeffs_[e] = field.from_int(c);
    return s;
  }

  const PrimeField& field() const { return field_; }
  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Int coeff(std::size_t e) const { return e < coeffs_.size() ? coeffs_[e] : 0; }

  bool is_unit() const { return coeffs_[0] != 0; }
  bool is_zero() const {
    for (auto c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  /// Image in k[pi]/(pi^{m+1}), m <= order.
  TruncatedScalar reduce(std::size_t m) const {
    if (m > order()) throw Error(ErrorCode::DimensionMismatch, "cannot reduce to a finer truncation");
    return TruncatedScalar(field_, m, std::vector<Int>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(m + 1)));
  }

  /// Coefficient-wise lift to a coarser truncation (higher terms zero).
  TruncatedScalar lift(std::size_t m) const {
    if (m < order()) throw Error(ErrorCode::DimensionMismatch, "lift needs a larger truncation order");
    return TruncatedScalar(field_, m, coeffs_);
  }

  TruncatedScalar inverse() const {
    if (!is_unit()) throw Error(ErrorCode::NotUnit, "constant term is zero");
    // u = u0 (1 + m) with m nilpotent: u^{-1} = u0^{-1} sum (-m)^k.
    auto u0_inv = field_.inv(coeffs_[0]);
    TruncatedScalar m = *this * constant(field_, order(), u0_inv);
    m.coeffs_[0] = 0;
    TruncatedScalar result = constant(field_, order(), 1), power = result;
    for (std::size_t k = 1; k <= order(); ++k) {
      power = power * -m;
      result = result + power;
    }
    return result * constant(field_, order(), u0_inv);
  }

  friend TruncatedScalar operator+(const TruncatedScalar& a, const TruncatedScalar& b) {
    a.require_compatible(b);
    TruncatedScalar out = a;
    for (std::size_t e = 0; e < out.coeffs_.size(); ++e) out.coeffs_[e] = a.field_.add(a.coeffs_[e], b.coeffs_[e]);
    return out;
  }
  friend TruncatedScalar operator-(const TruncatedScalar& a) {
    TruncatedScalar out = a;
    for (auto& c : out.coeffs_) c = a.field_.neg(c);
    return out;
  }
  friend TruncatedScalar operator-(const TruncatedScalar& a, const TruncatedScalar& b) { return a + (-b); }
  friend TruncatedScalar operator*(const TruncatedScalar& a, const TruncatedScalar& b) {
    a.require_compatible(b);
    const std::size_t n = a.order();
    TruncatedScalar out(a.field_, n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= n; ++j)
        out.coeffs_[i + j] = a.field_.add(out.coeffs_[i + j], a.field_.mul(a.coeffs_[i], b.coeffs_[j]));
    }
    return out;
  }
  friend bool operator==(const TruncatedScalar& a, const TruncatedScalar& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    std::string s;
    for (std::size_t e = 0; e < coeffs_.size(); ++e) {
      if (coeffs_[e] == 0) continue;
      if (!s.empty()) s += " + ";
      s += std::to_string(coeffs_[e]);
      if (e == 1) s += "π";
      if (e > 1) s += "π^" + std::to_string(e);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void require_compatible(const TruncatedScalar& other) const {
    if (!(field_ == other.field_) || coeffs_.size() != other.coeffs_.size())
      throw Error(ErrorCode::FieldMismatch, "scalars live in different truncated rings");
  }

  PrimeField field_;
  std::vector<Int> coeffs_;
};

/// Square matrix over k[pi]/(pi^{n+1}), row-major.
class TruncatedMatrix {
 public:
  TruncatedMatrix(PrimeField field, std::size_t order, std::size_t size)
      : field_(field), order_(order), size_(size), entries_(size * size, TruncatedScalar(field, order)) {}

  static TruncatedMatrix identity(PrimeField field, std::size_t order, std::size_t size) {
    TruncatedMatrix m(field, order, size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = TruncatedScalar::constant(field, order, 1);
    return m;
  }

  /// I + pi^e A for a matrix A over k.
  static TruncatedMatrix perturbed_identity(PrimeField field, std::size_t order, const std::vector<std::vector<Int>>& a,
                                            std::size_t e) {
    TruncatedMatrix m = identity(field, order, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
      for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = m(i, j) + TruncatedScalar::monomial(field, order, a[i][j], e);
    }
    return m;
  }

  const PrimeField& field() const { return field_; }
  std::size_t order() const { return order_; }
  std::size_t size() const { return size_; }

  TruncatedScalar& operator()(std::size_t i, std::size_t j) { return entries_.at(i * size_ + j); }
  const TruncatedScalar& operator()(std::size_t i, std::size_t j) const { return entries_.at(i * size_ + j); }

  /// Matrix over k formed by the pi^e coefficients.
  std::vector<std::vector<Int>> coefficient(std::size_t e) const {
    std::vector<std::vector<Int>> out(size_, std::vector<Int>(size_));
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j) out[i][j] = (*this)(i, j).coeff(e);
    return out;
  }

  TruncatedScalar trace() const {
    TruncatedScalar t(field_, order_);
    for (std::size_t i = 0; i < size_; ++i) t = t + (*this)(i, i);
    return t;
  }

  /// Division-free determinant (Berkowitz), valid over any commutative ring.
  TruncatedScalar det() const;

  bool is_invertible() const {
    Matrix<PrimeField> m = coefficient(0);
    return rank(field_, m) == size_;
  }

  TruncatedMatrix reduce(std::size_t m) const {
    TruncatedMatrix out(field_, m, size_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].reduce(m);
    return out;
  }

  TruncatedMatrix lift(std::size_t m) const {
    TruncatedMatrix out(field_, m, size_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].lift(m);
    return out;
  }

  friend TruncatedMatrix operator*(const TruncatedMatrix& a, const TruncatedMatrix& b) {
    a.require_compatible(b);
    TruncatedMatrix out(a.field_, a.order_, a.size_);
    for (std::size_t i = 0; i < a.size_; ++i)
      for (std::size_t k = 0; k < a.size_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < a.size_; ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
      }
    return out;
  }
  friend TruncatedMatrix operator+(const TruncatedMatrix& a, const TruncatedMatrix& b) {
    a.require_compatible(b);
    TruncatedMatrix out = a;
    for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] = a.entries_[k] + b.entries_[k];
    return out;
  }
  friend bool operator==(const TruncatedMatrix& a, const TruncatedMatrix& b) {
    return a.size_ == b.size_ && a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  void require_compatible(const TruncatedMatrix& other) const {
    if (!(field_ == other.field_) || order_ != other.order_ || size_ != other.size_)
      throw Error(ErrorCode::DimensionMismatch, "matrices live over different rings or have different sizes");
  }

  PrimeField field_;
  std::size_t order_;
  std::size_t size_;
  std::vector<TruncatedScalar> entries_;
};

inline TruncatedScalar TruncatedMatrix::det() const {
  const std::size_t n = size_;
  auto zero = TruncatedScalar(field_, order_);
  auto one = TruncatedScalar::constant(field_, order_, 1);
  if (n == 0) return one;

  // Characteristic polynomial of the trailing k x k block, peeling one
  // row/column at a time: poly_k = T_k * poly_{k-1}, T_k lower-triangular Toeplitz.
  std::vector<TruncatedScalar> poly{one, -(*this)(n - 1, n - 1)};
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t top = n - k;  // leading index of the current block
    const std::size_t m = k - 1;    // size of the trailing block below it
    const TruncatedScalar a = (*this)(top, top);

    // column c = A[top+1.., top], row R = A[top, top+1..], block S = A[top+1.., top+1..]
    std::vector<TruncatedScalar> column(m, zero);
    for (std::size_t i = 0; i < m; ++i) column[i] = (*this)(top + 1 + i, top);

    std::vector<TruncatedScalar> toeplitz(k + 1, zero);
    toeplitz[0] = one;
    toeplitz[1] = -a;
    for (std::size_t p = 2; p <= k; ++p) {
      // R * S^{p-2} * C
      TruncatedScalar v = zero;
      for (std::size_t j = 0; j < m; ++j) v = v + (*this)(top, top + 1 + j) * column[j];
      toeplitz[p] = -v;
      std::vector<TruncatedScalar> next(m, zero);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) next[i] = next[i] + (*this)(top + 1 + i, top + 1 + j) * column[j];
      column = std::move(next);
    }

    std::vector<TruncatedScalar> next_poly(k + 1, zero);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j <= i && j < poly.size(); ++j) next_poly[i] = next_poly[i] + toeplitz[i - j] * poly[j];
    poly = std::move(next_poly);
  }
  // poly holds det(xI - A) coefficients from x^n down; det A = (-1)^n poly[n].
  return n % 2 == 0 ? poly[n] : -poly[n];
}

// ---------------------------------------------------------------------------
// Kernel-layer identities. Throughout, a matrix over R = k[pi]/(pi^{n+1}) has
// truncation order n; its reduction lives over k[pi]/(pi^n) and the kernel
// layer is I + pi^n M(r, k).

struct DetTraceReport {
  TruncatedScalar det;    // det(I + pi^n A)
  TruncatedScalar trace;  // 1 + pi^n tr(A)
  bool holds() const { return det == trace; }
};

/// det(I + pi^n A) against 1 + pi^n tr(A) in k[pi]/(pi^{n+1}), n >= 1.
inline DetTraceReport det_trace_identity(const PrimeField& f, const std::vector<std::vector<Int>>& a, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "kernel layer needs n >= 1");
  auto m = TruncatedMatrix::perturbed_identity(f, n, a, n);
  Int tr = 0;
  for (std::size_t i = 0; i < a.size(); ++i) tr += a[i][i];
  return {m.det(), TruncatedScalar::constant(f, n, 1) + TruncatedScalar::monomial(f, n, tr, n)};
}

struct KernelReport {
  bool det_is_one = false;           // (i)
  bool reduces_to_identity = false;  // (ii) image in SL(r, k[pi]/(pi^n)) is I
  bool trace_form = false;           // (iii) M = I + pi^n B with tr B = 0 in k
  bool in_kernel() const { return det_is_one && reduces_to_identity; }
  bool consistent() const { return in_kernel() == trace_form; }
};

inline KernelReport sl_kernel_check(const TruncatedMatrix& m) {
  const std::size_t n = m.order();
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "kernel layer needs truncation order >= 1");
  const auto& f = m.field();
  KernelReport rep;
  rep.det_is_one = m.det() == TruncatedScalar::constant(f, n, 1);
  rep.reduces_to_identity = m.reduce(n - 1) == TruncatedMatrix::identity(f, n - 1, m.size());

  // (iii) read off directly from the coefficients.
  bool low_terms_identity = true;
  for (std::size_t e = 0; e < n && low_terms_identity; ++e) {
    auto c = m.coefficient(e);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (c[i][j] != (e == 0 && i == j ? 1 : 0)) low_terms_identity = false;
  }
  Int tr = 0;
  auto top = m.coefficient(n);
  for (std::size_t i = 0; i < m.size(); ++i) tr = f.add(tr, top[i][i]);
  rep.trace_form = low_terms_identity && tr == 0;
  return rep;
}

/// phi: lambda -> lambda E_11, a section of the trace.
inline TruncatedMatrix trace_section(const TruncatedScalar& lambda, std::size_t r) {
  if (r < 1) throw Error(ErrorCode::DimensionMismatch, "size must be positive");
  TruncatedMatrix m(lambda.field(), lambda.order(), r);
  m(0, 0) = lambda;
  return m;
}

/// psi: u -> diag(u, 1, ..., 1), a section of the determinant.
inline TruncatedMatrix det_section(const TruncatedScalar& u, std::size_t r) {
  if (!u.is_unit()) throw Error(ErrorCode::NotUnit, "det_section needs a unit, got " + u.str());
  if (r < 1) throw Error(ErrorCode::DimensionMismatch, "size must be positive");
  TruncatedMatrix m = TruncatedMatrix::identity(u.field(), u.order(), r);
  m(0, 0) = u;
  return m;
}

/// Lifts M in SL(r, k[pi]/(pi^n)) to SL(r, k[pi]/(pi^{n+1})): copy the
/// coefficients, then rescale the first column by the inverse determinant.
inline TruncatedMatrix lift_to_sl(const TruncatedMatrix& m) {
  auto lifted = m.lift(m.order() + 1);
  auto u = lifted.det();
  if (!u.is_unit()) throw Error(ErrorCode::NotUnit, "matrix is not invertible");
  return lifted * det_section(u.inverse(), m.size());
}

struct TorsorCorrection {
  std::vector<TruncatedMatrix> corrected;
  std::vector<TruncatedMatrix> corrections;  // Gamma_j = I + pi^n phi(lambda_j)
  std::vector<bool> det_relation;            // det(Gamma_j F_j) == gamma_j det(F_j)
  bool holds() const {
    for (bool b : det_relation)
      if (!b) return false;
    return true;
  }
};

/// Adjusts each F_j by the kernel-layer class lifting gamma_j = 1 + pi^n lambda_j
/// through the trace section.
inline TorsorCorrection torsor_correct(const std::vector<TruncatedMatrix>& cocycle,
                                       const std::vector<TruncatedScalar>& gammas) {
  if (cocycle.size() != gammas.size())
    throw Error(ErrorCode::DimensionMismatch, "cocycle and determinant corrections differ in length");
  TorsorCorrection out;
  for (std::size_t j = 0; j < cocycle.size(); ++j) {
    const auto& F = cocycle[j];
    const auto& g = gammas[j];
    const std::size_t n = F.order();
    if (!(g.field() == F.field()) || g.order() != n)
      throw Error(ErrorCode::FieldMismatch, "correction " + std::to_string(j) + " lives over a different ring");
    if (!F.is_invertible()) throw Error(ErrorCode::NotUnit, "cocycle entry " + std::to_string(j) + " is not invertible");
    if (n < 1) throw Error(ErrorCode::DimensionMismatch, "kernel layer needs truncation order >= 1");
    for (std::size_t e = 0; e < n; ++e)
      if (g.coeff(e) != (e == 0 ? 1 : 0))
        throw Error(ErrorCode::NotInKernelLayer, "gamma_" + std::to_string(j) + " = " + g.str() + " is not in 1 + pi^n R");

    auto lambda = TruncatedScalar::constant(F.field(), n, g.coeff(n));
    auto pi_n = TruncatedScalar::monomial(F.field(), n, 1, n);
    auto gamma_matrix = TruncatedMatrix::identity(F.field(), n, F.size());
    auto phi = trace_section(pi_n * lambda, F.size());
    gamma_matrix = gamma_matrix + phi;

    auto corrected = gamma_matrix * F;
    out.det_relation.push_back(corrected.det() == g * F.det());
    out.corrected.push_back(std::move(corrected));
    out.corrections.push_back(std::move(gamma_matrix));
  }
  return out;
}

}  // namespace nodal_stab
