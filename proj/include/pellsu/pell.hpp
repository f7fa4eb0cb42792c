#pragma once

#include <optional>

#include "pellsu/numkernel.hpp"

namespace pellsu::pell {

// Fundamental solution of X² − dY² = 1 and the unit γ = X1 + Y1·√d.
struct PellContext {
  BigInt d;
  BigInt x1;
  BigInt y1;
  QuadraticSurd gamma;
  QuadraticSurd eta;  // γ⁻¹ = X1 − Y1·√d

  // Context for the unit X1 + √(X1² − 1), i.e. d = X1² − 1 with Y1 = 1.
  static PellContext from_x1(const BigInt& x1);
};

// Minimal positive solution via the periodic continued fraction of √d.
PellContext fundamental_solution(const BigInt& d);

// X_l by the exact two-term recurrence X_l = 2·X1·X_{l−1} − X_{l−2}.
BigInt x_at(const PellContext& ctx, unsigned long l);
// X_l as the rational part of γ^l, i.e. (γ^l + η^l)/2 by exact surd powers.
BigInt x_at_binet(const PellContext& ctx, unsigned long l);
// Y_l from the same recurrence with seeds Y0 = 0, Y1.
BigInt y_at(const PellContext& ctx, unsigned long l);

// P_l(X1) = ½((X1 + √(X1²−1))^l + (X1 − √(X1²−1))^l), the Chebyshev T_l(X1).
BigInt p_poly(const BigInt& x1, unsigned long l);

// Unique X1 ≥ 2 with P_l(X1) = n, if any. The candidate comes from the
// certified root cosh(acosh(n)/l) and is verified exactly.
std::optional<BigInt> p_poly_invert(const BigInt& n, unsigned long l,
                                    const PrecisionPolicy& policy = {});

// Certified check of (1/(1+√2))·γ^l ≤ X_l ≤ (2−√2)·γ^l and γ^l/2.5 < X_l < γ^l
// for every 1 ≤ l ≤ l_max.
bool audit_growth(const PellContext& ctx, unsigned long l_max, const PrecisionPolicy& policy = {});

}  // namespace pellsu::pell
