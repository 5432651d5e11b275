#include "ratioslab/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ratioslab/errors.hpp"

namespace ratioslab::special {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kLogTwoPiHalf = 0.91893853320467274178032973640561764;  // log(2*pi)/2

// Lanczos approximation, g = 607/128, 15 coefficients. Gives ~1e-14 relative
// accuracy on Re z >= 1/2; values left of that come in by upward recurrence.
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

cplx log_gamma_half_plane(cplx z) {
  cplx sum = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k)
    sum += kLanczos[k] / (z + static_cast<double>(k - 1));
  const cplx base = z + (kLanczosG - 0.5);
  return kLogTwoPiHalf + (z - 0.5) * std::log(base) - base + std::log(sum);
}

// Bernoulli numbers B_2..B_28 divided by (2k)!, computed once in extended
// precision. Index k holds B_{2k}/(2k)!.
const std::array<double, 15> kBernoulliFact = [] {
  constexpr long double b[15] = {0.0L,
                                 1.0L / 6,
                                 -1.0L / 30,
                                 1.0L / 42,
                                 -1.0L / 30,
                                 5.0L / 66,
                                 -691.0L / 2730,
                                 7.0L / 6,
                                 -3617.0L / 510,
                                 43867.0L / 798,
                                 -174611.0L / 330,
                                 854513.0L / 138,
                                 -236364091.0L / 2730,
                                 8553103.0L / 6,
                                 -23749461029.0L / 870};
  std::array<double, 15> out{};
  long double fact = 1.0L;
  for (int k = 1; k < 15; ++k) {
    fact *= static_cast<long double>(2 * k - 1) * static_cast<long double>(2 * k);
    out[static_cast<std::size_t>(k)] = static_cast<double>(b[k] / fact);
  }
  return out;
}();

// Euler-Maclaurin evaluation of zeta(s, a) = sum_{n>=0} (n+a)^{-s}, together
// with its s-derivative when requested. N scales with |Im s| so the Bernoulli
// correction stays convergent through the supported strip.
struct EmResult {
  cplx value;
  cplx deriv;
};

EmResult em_zeta(cplx s, double a, bool want_deriv) {
  const double t = std::abs(s.imag());
  const std::size_t n_terms =
      static_cast<std::size_t>(std::max(12.0, std::ceil(1.2 * t)));
  constexpr int kBernTerms = 12;

  cplx value = 0.0;
  cplx deriv = 0.0;
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double v = static_cast<double>(n) + a;
    const double lv = std::log(v);
    const cplx pw = std::exp(-s * lv);
    value += pw;
    if (want_deriv) deriv -= lv * pw;
  }

  const double u = static_cast<double>(n_terms) + a;
  const double lu = std::log(u);
  const double winv = 1.0 / (u * u);
  const cplx pw1 = std::exp((1.0 - s) * lu);  // u^{1-s}

  // Integral and midpoint corrections.
  const cplx t0 = pw1 / (s - 1.0);
  const cplx t1 = pw1 / u * 0.5;
  value += t0 + t1;
  if (want_deriv) {
    deriv += pw1 * (-lu / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0)));
    deriv += -lu * t1;
  }

  // Bernoulli tail: sum_k B_{2k}/(2k)! * (s)_{2k-1} * u^{1-s-2k}.
  cplx poch = s;        // rising factorial with 2k-1 factors
  cplx poch_d = 1.0;    // its s-derivative
  cplx upow = pw1 * winv;  // u^{1-s-2k}
  for (int k = 1; k <= kBernTerms; ++k) {
    const double c = kBernoulliFact[static_cast<std::size_t>(k)];
    value += c * poch * upow;
    if (want_deriv) deriv += c * (poch_d - poch * lu) * upow;
    // Extend the rising factorial by the next two linear factors.
    for (int j = 2 * k - 1; j <= 2 * k; ++j) {
      const cplx f = s + static_cast<double>(j);
      poch_d = poch_d * f + poch;
      poch = poch * f;
    }
    upow *= winv;
  }
  return {value, deriv};
}

void check_zeta_domain(cplx s) {
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-10)
    throw numeric_error("zeta: pole at s = 1");
  if (s.real() < -1.0 - 1e-12 || s.real() > 100.0 || std::abs(s.imag()) > 120.0)
    throw argument_error("zeta: s outside supported region");
}

}  // namespace

cplx e_of(double x) {
  const double frac = x - std::floor(x);
  return std::polar(1.0, kTwoPi * frac);
}

cplx e_of(cplx z) {
  const double frac = z.real() - std::floor(z.real());
  const double mag = std::exp(-kTwoPi * z.imag());
  return mag * std::polar(1.0, kTwoPi * frac);
}

cplx log_gamma(cplx z) {
  cplx shift = 0.0;
  // March into the half-plane where the Lanczos fit is valid.
  while (z.real() < 0.5) {
    if (std::abs(z) < 1e-12 || (std::abs(z.imag()) < 1e-12 &&
                                std::abs(z.real() - std::round(z.real())) < 1e-12 &&
                                z.real() < 0.5))
      throw numeric_error("log_gamma: pole at non-positive integer");
    shift -= std::log(z);
    z += 1.0;
  }
  return log_gamma_half_plane(z) + shift;
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx digamma(cplx z) {
  cplx shift = 0.0;
  while (z.real() < 16.0) {
    if (std::abs(z) < 1e-12 || (std::abs(z.imag()) < 1e-12 &&
                                std::abs(z.real() - std::round(z.real())) < 1e-12 &&
                                z.real() < 0.5))
      throw numeric_error("digamma: pole at non-positive integer");
    shift -= 1.0 / z;
    z += 1.0;
  }
  // Asymptotic series: log z - 1/(2z) - sum B_{2k}/(2k z^{2k}).
  constexpr std::array<double, 7> coeff = {
      1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760, 1.0 / 12};
  const cplx inv2 = 1.0 / (z * z);
  cplx series = 0.0;
  cplx p = inv2;
  for (double c : coeff) {
    series += c * p;
    p *= inv2;
  }
  return std::log(z) - 0.5 / z - series + shift;
}

cplx hurwitz_zeta(cplx s, double a) {
  if (!(a > 0.0) || a > 1.0)
    throw argument_error("hurwitz_zeta: shift must lie in (0, 1]");
  check_zeta_domain(s);
  return em_zeta(s, a, false).value;
}

cplx riemann_zeta(cplx s, int derivative_order) {
  if (derivative_order < 0 || derivative_order > 1)
    throw argument_error("riemann_zeta: derivative order must be 0 or 1");
  check_zeta_domain(s);
  const EmResult r = em_zeta(s, 1.0, derivative_order == 1);
  return derivative_order == 0 ? r.value : r.deriv;
}

GPair g_pm(cplx alpha) {
  const cplx h = 0.5 * alpha;
  const cplx r1 = cplx(0.0, -1.0) * std::exp(log_gamma(0.75 - h) - log_gamma(0.75 + h));
  const cplx r2 = std::exp(log_gamma(0.25 - h) - log_gamma(0.25 + h));
  return {r1 + r2, r1 - r2};
}

GPair g_pm_derivative(cplx alpha) {
  const cplx h = 0.5 * alpha;
  const cplx r1 = cplx(0.0, -1.0) * std::exp(log_gamma(0.75 - h) - log_gamma(0.75 + h));
  const cplx r2 = std::exp(log_gamma(0.25 - h) - log_gamma(0.25 + h));
  const cplx d1 = r1 * (-0.5) * (digamma(0.75 - h) + digamma(0.75 + h));
  const cplx d2 = r2 * (-0.5) * (digamma(0.25 - h) + digamma(0.25 + h));
  return {d1 + d2, d1 - d2};
}

}  // namespace ratioslab::special
