#include "pellsu/pell.hpp"

#include <algorithm>

namespace pellsu::pell {

PellContext PellContext::from_x1(const BigInt& x1) {
  if (x1 < 2) throw InvalidInput("X1 must be at least 2");
  BigInt d = x1 * x1 - 1;
  QuadraticSurd gamma(Rational(x1), Rational(1), d);
  return {d, x1, BigInt(1), gamma, gamma.conjugate()};
}

PellContext fundamental_solution(const BigInt& d) {
  if (d <= 1) throw InvalidInput("d must be greater than 1");
  if (is_perfect_square(d)) throw InvalidInput("d is a perfect square");

  BigInt a0;
  mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
  // Complete quotients (m + √d)/den of √d; convergents p/q.
  BigInt m = 0, den = 1, a = a0;
  BigInt p_prev = 1, p_prev2 = 0;
  BigInt q_prev = 0, q_prev2 = 1;
  while (true) {
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    if (p * p - d * q * q == 1) {
      QuadraticSurd gamma(Rational(p), Rational(q), d);
      return {d, p, q, gamma, gamma.conjugate()};
    }
    p_prev2 = std::move(p_prev);
    p_prev = std::move(p);
    q_prev2 = std::move(q_prev);
    q_prev = std::move(q);
    m = den * a - m;
    den = (d - m * m) / den;
    a = (a0 + m) / den;
  }
}

BigInt x_at(const PellContext& ctx, unsigned long l) {
  if (l == 0) return 1;
  BigInt prev = 1, cur = ctx.x1;
  BigInt two_x1 = 2 * ctx.x1;
  for (unsigned long k = 2; k <= l; ++k) {
    BigInt next = two_x1 * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt y_at(const PellContext& ctx, unsigned long l) {
  if (l == 0) return 0;
  BigInt prev = 0, cur = ctx.y1;
  BigInt two_x1 = 2 * ctx.x1;
  for (unsigned long k = 2; k <= l; ++k) {
    BigInt next = two_x1 * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt x_at_binet(const PellContext& ctx, unsigned long l) {
  QuadraticSurd sum = surd_pow(ctx.gamma, l) + surd_pow(ctx.eta, l);
  if (sum.b() != 0) throw ConsistencyError("γ^l + η^l has a non-zero surd part");
  Rational half = sum.a() / 2;
  half.canonicalize();
  if (half.get_den() != 1) throw ConsistencyError("(γ^l + η^l)/2 is not an integer");
  return half.get_num();
}

BigInt p_poly(const BigInt& x1, unsigned long l) {
  if (x1 < 2) throw InvalidInput("P_l requires X1 >= 2");
  if (l == 0) return 1;
  BigInt prev = 1, cur = x1;
  BigInt two_x1 = 2 * x1;
  for (unsigned long k = 2; k <= l; ++k) {
    BigInt next = two_x1 * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::optional<BigInt> p_poly_invert(const BigInt& n, unsigned long l, const PrecisionPolicy& policy) {
  if (n < 1) throw InvalidInput("P_l inversion requires N >= 1");
  if (l < 2) throw InvalidInput("P_l inversion requires l >= 2");
  // P_l is strictly increasing on [1, ∞) and P_l(1) = 1, so N < P_l(2) has no root X1 ≥ 2.
  if (n < 7) return std::nullopt;

  const long size_bits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  long bits = std::max(policy.bits, size_bits / static_cast<long>(l) + 96);
  while (true) {
    CertifiedReal root = cosh(acosh(CertifiedReal::exact(n, bits)) / CertifiedReal::exact(static_cast<long>(l), bits));
    BigInt lo = root.floor_of_lower();
    BigInt hi = root.floor_of_upper();
    if (lo == hi) {
      // The only integer that can lie inside is lo itself, and only if lo is the lower endpoint.
      if (mpfr_cmp_z(root.lower().get(), lo.get_mpz_t()) != 0) return std::nullopt;
    }
    if (hi - lo <= 2) {
      for (BigInt c = lo - 1; c <= hi + 1; ++c) {
        if (c >= 2 && p_poly(c, l) == n) return c;
      }
      return std::nullopt;
    }
    if (bits >= policy.cap_bits) throw PrecisionExhausted("P_l root enclosure too wide", bits);
    bits = std::min(bits * 2, policy.cap_bits);
  }
}

bool audit_growth(const PellContext& ctx, unsigned long l_max, const PrecisionPolicy& policy) {
  BigInt x_prev = 1, x_cur = ctx.x1;
  BigInt y_prev = 0, y_cur = ctx.y1;
  const BigInt two_x1 = 2 * ctx.x1;
  for (unsigned long l = 1; l <= l_max; ++l) {
    if (l > 1) {
      BigInt xn = two_x1 * x_cur - x_prev;
      BigInt yn = two_x1 * y_cur - y_prev;
      x_prev = std::move(x_cur);
      x_cur = std::move(xn);
      y_prev = std::move(y_cur);
      y_cur = std::move(yn);
    }
    bool decided = false;
    for (long bits = policy.bits; !decided; bits *= 2) {
      CertifiedReal power = to_certified(QuadraticSurd(Rational(x_cur), Rational(y_cur), ctx.d), bits);
      CertifiedReal x = CertifiedReal::exact(x_cur, bits);
      CertifiedReal root2 = sqrt(CertifiedReal::exact(2L, bits));
      CertifiedReal lower_lemma = power / (root2 + 1L);
      CertifiedReal upper_lemma = (CertifiedReal::exact(2L, bits) - root2) * power;
      CertifiedReal lower_growth = power / CertifiedReal::from_decimal("2.5", bits);

      Ordering o1 = certified_compare(lower_lemma, x);
      Ordering o2 = certified_compare(x, upper_lemma);
      Ordering o3 = certified_compare(lower_growth, x);
      Ordering o4 = certified_compare(x, power);
      bool any_indeterminate = o1 == Ordering::Indeterminate || o2 == Ordering::Indeterminate ||
                               o3 == Ordering::Indeterminate || o4 == Ordering::Indeterminate;
      if (!any_indeterminate) {
        if (o1 != Ordering::Less || o2 != Ordering::Less || o3 != Ordering::Less || o4 != Ordering::Less) {
          return false;
        }
        decided = true;
      } else if (bits * 2 > policy.cap_bits) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace pellsu::pell
