#include "pellsu/baker.hpp"

#include <cmath>

namespace pellsu::baker {

CertifiedReal height_rational(const Rational& z, long bits) {
  BigInt num = abs(z.get_num());
  const BigInt& den = z.get_den();
  return certified_log(num > den ? num : den, bits);
}

CertifiedReal height_pell_unit(const pell::PellContext& ctx, long bits) {
  return certified_log(ctx.gamma, bits) / CertifiedReal::exact(2L, bits);
}

MatveevInstance MatveevInstance::make(int t, int dL, std::vector<CertifiedReal> A, CertifiedReal B) {
  if (t < 1) throw InvalidInput("Matveev instance needs t >= 1");
  if (dL < 1) throw InvalidInput("Matveev instance needs dL >= 1");
  if (static_cast<int>(A.size()) != t) throw InvalidInput("Matveev instance needs exactly t values A_j");
  // Only values certainly below the floors are rejected: the bound is
  // evaluated at upper endpoints, which is Matveev at an admissible A_j, B.
  for (const CertifiedReal& a : A)
    if (a.certainly_less(CertifiedReal::exact(Rational(4, 25), a.precision_bits())))
      throw InvalidInput("each A_j must be at least 0.16");
  if (B.certainly_less(CertifiedReal::exact(1L, B.precision_bits())))
    throw InvalidInput("Matveev instance needs B >= 1");
  return {t, dL, std::move(A), std::move(B)};
}

CertifiedReal matveev_prefactor(int t, int dL, long bits) {
  auto c = [bits](long v) { return CertifiedReal::exact(v, bits); };
  CertifiedReal out = CertifiedReal::exact(Rational(7, 5), bits);
  out = out * pow(c(30), c(t + 3));
  out = out * pow(c(t), CertifiedReal::exact(Rational(9, 2), bits));
  out = out * c(static_cast<long>(dL) * dL);
  out = out * (c(1) + certified_log(BigInt(dL), bits));
  return out;
}

CertifiedReal matveev_lower_bound(const MatveevInstance& inst) {
  long bits = inst.B.precision_bits();
  CertifiedReal out = matveev_prefactor(inst.t, inst.dL, bits);
  out = out * (CertifiedReal::exact(1L, bits) + log(inst.B));
  for (const CertifiedReal& a : inst.A) out = out * a;
  return out;
}

CertifiedReal absorption_factor(const CertifiedReal& k, const CertifiedReal& n_min) {
  long bits = n_min.precision_bits();
  CertifiedReal one = CertifiedReal::exact(1L, bits);
  if (!n_min.certainly_greater(one)) throw PreconditionError("absorption needs n_min > 1");
  // (1 + log k + log n)/log n = 1 + (1 + log k)/log n is monotone in n.
  CertifiedReal c = one + log(k);
  if (c.certainly_nonnegative()) return one + c / log(n_min);
  if (c.certainly_negative()) return one;
  return hull(one, one + max(c, CertifiedReal::exact(0L, bits)) / log(n_min));
}

CertifiedReal shrink_bound(const CertifiedReal& delta, const CertifiedReal& alpha, const CertifiedReal& beta) {
  long bits = alpha.precision_bits();
  if (!delta.certainly_positive()) throw PreconditionError("shrink_bound needs delta > 0");
  CertifiedReal e_delta = euler_e(bits) * delta;
  if (alpha.certainly_less(e_delta)) throw PreconditionError("shrink_bound needs alpha >= e * delta");
  // The bound grows with α, and δB ≤ α log B + β survives raising α, so an
  // α that only touches eδ is lifted to max(α, eδ).
  CertifiedReal a = max(alpha, e_delta);
  CertifiedReal two = CertifiedReal::exact(2L, bits);
  return two / delta * (a * log(a / delta) + beta);
}

}  // namespace pellsu::baker
