#pragma once

#include <complex>

namespace ratioslab::special {

using cplx = std::complex<double>;

// e(z) = exp(2 pi i z).
cplx e_of(double z);
cplx e_of(cplx z);

// Principal-branch log Gamma (Lanczos sum, upward recurrence for small real
// part).  Abs error <= 1e-12 for Re z >= 1/8; degrades gracefully left of
// that.  Throws numeric_error at (or within 1e-12 of) a pole z = 0, -1, ...
cplx log_gamma(cplx z);

// Gamma via exp(log_gamma).
cplx gamma_fn(cplx z);

// Digamma psi(z) = Gamma'(z)/Gamma(z); abs error <= 1e-10 away from poles.
cplx digamma(cplx z);

// Riemann zeta (derivative_order 0) or zeta' (derivative_order 1) by
// Euler-Maclaurin with term-wise differentiation; abs error <= 1e-10 in the
// strip -1 <= Re s <= 3, |Im s| <= 100.  Throws numeric_error near s = 1.
cplx riemann_zeta(cplx s, int derivative_order = 0);

// Hurwitz zeta(s, a) for a in (0, 1], same strip/accuracy as riemann_zeta.
cplx hurwitz_zeta(cplx s, double a);

// Gamma-factor combinations used by the ratios prediction:
//   plus  = Gamma(3/4-a/2)/(i Gamma(3/4+a/2)) + Gamma(1/4-a/2)/Gamma(1/4+a/2)
//   minus = the same with a minus sign between the two ratios.
struct GPair {
  cplx plus;
  cplx minus;
};

GPair g_pm(cplx alpha);

// d/d alpha of the pair above: each Gamma ratio r(x, alpha) picks up the
// factor -(psi(x - alpha/2) + psi(x + alpha/2))/2, x in {3/4, 1/4}.
GPair g_pm_derivative(cplx alpha);

}  // namespace ratioslab::special
