#pragma once

#include <complex>
#include <cstdint>

#include "ratioslab/density.hpp"
#include "ratioslab/testfn.hpp"

namespace ratioslab::ratios {

using cplx = std::complex<double>;

// "standard" drops the bracketed (q-1)[G+ e(-1/q) + G- e(1/q)] piece of the
// averaged-ratio prediction; "weak" keeps it.
enum class Variant { standard, weak };

struct RatiosParams {
  std::uint32_t q = 0;
  cplx alpha;  // Re alpha < 1/2
  cplx gamma;  // Re gamma > 0
  Variant variant = Variant::standard;
};

// The five displayed pieces of the prediction for
//   R(alpha, gamma) = sum_chi L(1/2+alpha, chi)/L(1/2+gamma, chi):
//   value = h_sum + bracket + zeta_ratio + s2_zeta + s3_zeta, with
//   h_sum      = (q-1) sum_{h = 1 mod q} mu(h) h^{-(1/2+gamma)}
//   bracket    = (q-1)[G+(alpha) e(-1/q) + G-(alpha) e(1/q)]/(2 q^{1/2+alpha})
//                (weak variant only; 0 for standard)
//   zeta_ratio = -zeta(1/2+alpha)/zeta(1/2+gamma)
//   s2_zeta    = -G+(alpha) zeta(1/2-alpha)/(2 q^{1/2+alpha} zeta(1/2+gamma))
//   s3_zeta    = -G-(alpha) zeta(1/2-alpha)/(2 q^{1/2+alpha} zeta(1/2+gamma))
struct RPrediction {
  cplx value;
  cplx h_sum_term;
  cplx bracket_term;
  cplx zeta_ratio_term;
  cplx s2_zeta_term;
  cplx s3_zeta_term;
};

// sum_{h = 1 mod q} mu(h) h^{-s} by character inversion:
// (1/(q-1)) [ 1/(zeta(s)(1-q^{-s})) + sum_{chi != chi_0} 1/L(s, chi) ].
// Throws numeric_error if any denominator is within 1e-10 of zero.
cplx mobius_ap_sum(cplx s, std::uint32_t q);

RPrediction ratios_prediction_R(const RatiosParams& p);

// Closed-form d/d alpha of the prediction at alpha = gamma = r (the h-sum
// piece differentiates to zero).  Requires p.alpha == p.gamma.
RPrediction ratios_prediction_dR(const RatiosParams& p);

// Direct family sum of L-quotients (q <= 2003 intended).  The parallel
// version chunks the character range with a deterministic pairwise
// reduction; the serial reference accumulates in index order.
cplx brute_force_R(std::uint32_t q, cplx alpha, cplx gamma);
cplx brute_force_R_serial(std::uint32_t q, cplx alpha, cplx gamma);

// Ratios-predicted 1-level density: phihat(0) + normalized Gamma term, no
// prime term.
density::DensityReport ratios_density_prediction(const testfn::TestFunction& tf,
                                                 std::uint32_t q);

}  // namespace ratioslab::ratios
