#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nodal_stab/semistability.hpp"

namespace nodal_stab {

/// Record of one recursion step at order index i.
struct BalanceStep {
  std::size_t index = 0;
  Id component = 0;
  Rational lower;      // L_i (unchanged by the twist)
  Rational upper;      // L_i + r
  Int value_before = 0;  // S_i before twisting
  Int value_after = 0;   // S_i - r a_i
  Int a_min = 0;       // integer solutions for a_i form [a_min, a_max]
  Int a_max = 0;
  Int chosen = 0;      // a_min by the tie-break
  BundleClass result;

  std::size_t solution_count() const { return static_cast<std::size_t>(a_max - a_min + 1); }
};

struct BalanceResult {
  Ordering ordering;
  TwistDivisor twist;
  BundleClass balanced;
  std::vector<BalanceStep> steps;
};

/// Twisting by a Y_i moves S_i by exactly -r a, so the admissible a form the
/// integers in [(S - L - r)/r, (S - L)/r]; the smallest one is taken.
/// Requires every index above i to pass already.
inline BalanceStep balance_step(const TreeLikeCurve& c, const Ordering& ord, const BundleClass& bc,
                                const Polarization& pol, std::size_t i) {
  if (i < 1 || i >= c.size())
    throw Error(ErrorCode::IndexOutOfRange, "balance steps run over order indices 1.." + std::to_string(c.size() - 1));
  validate_class(c, bc);
  validate_polarization(c, pol);
  const Int chi = euler_char_total(c, bc);
  for (std::size_t t = i + 1; t <= c.size(); ++t)
    if (!lambda_check_index(c, ord, bc, pol, t, chi).pass)
      throw Error(ErrorCode::PreconditionViolated, "order index " + std::to_string(t) + " fails before step " +
                                                       std::to_string(i));

  auto before = lambda_check_index(c, ord, bc, pol, i, chi);
  BalanceStep step;
  step.index = i;
  step.component = before.component;
  step.lower = before.lower;
  step.upper = before.upper;
  step.value_before = before.value;

  const Rational excess = Rational(before.value) - before.lower;  // S - L
  const Rational r(bc.rank);
  step.a_min = ceil((excess - r) / r);
  step.a_max = floor(excess / r);
  step.chosen = step.a_min;
  step.result = twist_single(c, bc, step.component, step.chosen);
  step.value_after = chi_subcurve_sum(c, step.result, ord.G[i - 1]);
  return step;
}

/// Recursive twist search: a_N = 0, then i = N-1 down to 1.
inline BalanceResult balance(const TreeLikeCurve& c, const BundleClass& bc, const Polarization& pol) {
  validate_class(c, bc);
  validate_polarization(c, pol);
  BalanceResult out{prune_ordering(c), TwistDivisor::zero(c), bc, {}};
  for (std::size_t i = c.size(); i-- > 1;) {
    auto step = balance_step(c, out.ordering, out.balanced, pol, i);
    out.twist.coeffs.at(step.component) += step.chosen;
    out.balanced = step.result;
    out.steps.push_back(std::move(step));
  }
  return out;
}

struct UnbalanceEntry {
  std::size_t index = 0;
  Id component = 0;
  Rational distance;  // 0 inside the window, else distance to the nearest endpoint
};

/// Diagnostics: how far each S_i sits outside its window.
inline std::vector<UnbalanceEntry> unbalance_report(const TreeLikeCurve& c, const BundleClass& bc,
                                                    const Polarization& pol) {
  auto ord = prune_ordering(c);
  auto report = lambda_check(c, ord, bc, pol);
  std::vector<UnbalanceEntry> out;
  for (const auto& v : report.indices) {
    Rational s(v.value);
    Rational d = 0;
    if (s < v.lower) d = v.lower - s;
    if (s > v.upper) d = s - v.upper;
    out.push_back({v.index, v.component, d});
  }
  return out;
}

}  // namespace nodal_stab
