#pragma once

#include <vector>

#include "pellsu/numkernel.hpp"
#include "pellsu/pell.hpp"

namespace pellsu::baker {

// h(p/q) = log max(|p|, q).
CertifiedReal height_rational(const Rational& z, long bits);
// h(γ) = ½ log γ.
CertifiedReal height_pell_unit(const pell::PellContext& ctx, long bits);

// Data for Matveev's lower bound on a non-zero linear form in t logarithms
// over a real field of degree dL.
struct MatveevInstance {
  int t = 1;
  int dL = 1;
  std::vector<CertifiedReal> A;
  CertifiedReal B;

  // Checks t = |A| and rejects any A_j certainly below 0.16 or B certainly
  // below 1.
  static MatveevInstance make(int t, int dL, std::vector<CertifiedReal> A, CertifiedReal B);
};

// 1.4·30^{t+3}·t^{4.5}·dL²·(1 + log dL): the part of the bound that depends
// only on t and dL.
CertifiedReal matveev_prefactor(int t, int dL, long bits);

// L with log|Λ| > −L, i.e. prefactor·(1 + log B)·∏A_j.
CertifiedReal matveev_lower_bound(const MatveevInstance& inst);

// sup over n ≥ n_min of (1 + log(k·n)) / log n, the factor that turns
// (1 + log(k·n)) into κ·log n. Requires n_min > 1.
CertifiedReal absorption_factor(const CertifiedReal& k, const CertifiedReal& n_min);

// Every B ≥ 1 with δB ≤ α log B + β satisfies B < (2/δ)(α log(α/δ) + β).
// Requires α ≥ e·δ.
CertifiedReal shrink_bound(const CertifiedReal& delta, const CertifiedReal& alpha, const CertifiedReal& beta);

}  // namespace pellsu::baker
