#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nodal_stab/error.hpp"
#include "nodal_stab/rational.hpp"

namespace nodal_stab {

/// F_p for a prime p, elements stored as residues in [0, p).
class PrimeField {
 public:
  using Element = Int;

  explicit PrimeField(Int p) : p_(p) {
    if (p < 2 || p > (Int{1} << 31)) throw Error(ErrorCode::InvalidField, "modulus " + std::to_string(p) + " out of range");
    for (Int q = 2; q * q <= p; ++q)
      if (p % q == 0) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
  }

  Int characteristic() const { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(Int v) const { return ((v % p_) + p_) % p_; }
  bool is_zero(Element a) const { return a == 0; }
  Element add(Element a, Element b) const { return (a + b) % p_; }
  Element sub(Element a, Element b) const { return (a - b + p_) % p_; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }
  Element pow(Element a, Int e) const {
    Element result = 1;
    for (a %= p_; e > 0; e >>= 1, a = mul(a, a))
      if (e & 1) result = mul(result, a);
    return result;
  }
  Element inv(Element a) const {
    if (a == 0) throw Error(ErrorCode::NotUnit, "zero has no inverse in " + name());
    return pow(a, p_ - 2);
  }

  std::string format(Element a) const { return std::to_string(a); }
  Element parse(const std::string& s) const { return from_int(parse_int(s)); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  Int p_;
};

/// The rationals, exact.
class RationalField {
 public:
  using Element = Rational;

  Int characteristic() const { return 0; }
  std::string name() const { return "Q"; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(Int v) const { return Rational(v); }
  bool is_zero(const Element& a) const { return a == 0; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (a == 0) throw Error(ErrorCode::NotUnit, "zero has no inverse in Q");
    return Rational(1) / a;
  }

  std::string format(const Element& a) const { return to_string(a); }
  Element parse(const std::string& s) const { return parse_rational(s); }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

using AnyField = std::variant<PrimeField, RationalField>;

/// "Q" or "F<p>".
inline AnyField parse_field(const std::string& s) {
  if (s == "Q") return RationalField{};
  if (s.size() >= 2 && s[0] == 'F') return PrimeField(parse_int(s.substr(1)));
  throw Error(ErrorCode::InvalidField, "unknown field descriptor '" + s + "'");
}

template <class Field>
using Matrix = std::vector<std::vector<typename Field::Element>>;

/// Rank by Gaussian elimination.
template <class Field>
std::size_t rank(const Field& f, Matrix<Field> m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && f.is_zero(m[pivot][col])) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    auto inv = f.inv(m[r][col]);
    for (std::size_t row = r + 1; row < rows; ++row) {
      if (f.is_zero(m[row][col])) continue;
      auto factor = f.mul(m[row][col], inv);
      for (std::size_t k = col; k < cols; ++k) m[row][k] = f.sub(m[row][k], f.mul(factor, m[r][k]));
    }
    ++r;
  }
  return r;
}

template <class Field>
typename Field::Element determinant(const Field& f, Matrix<Field> m) {
  const std::size_t n = m.size();
  auto det = f.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && f.is_zero(m[pivot][col])) ++pivot;
    if (pivot == n) return f.zero();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = f.neg(det);
    }
    det = f.mul(det, m[col][col]);
    auto inv = f.inv(m[col][col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      auto factor = f.mul(m[row][col], inv);
      for (std::size_t k = col; k < n; ++k) m[row][k] = f.sub(m[row][k], f.mul(factor, m[col][k]));
    }
  }
  return det;
}

}  // namespace nodal_stab
