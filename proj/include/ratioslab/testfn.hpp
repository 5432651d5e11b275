#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ratioslab::testfn {

// An even Schwartz test function phi together with its Fourier transform
// under the convention phihat(xi) = int phi(x) e(-x xi) dx.  phihat is
// compactly supported in (-sigma, sigma); |phi(x)| <= env_coeff/|x|^env_power
// for x != 0.
struct TestFunction {
  std::string name;    // CLI identifier: "fejer", "spline2", "spline4"
  double sigma = 0;    // support radius of phihat
  std::function<double(double)> phi;
  std::function<double(double)> phi_hat;
  double phi_zero = 0;      // phi(0)
  double phi_hat_zero = 0;  // phihat(0)
  std::vector<double> hat_breaks;  // kink locations of phihat in (0, sigma)
  double env_coeff = 0;
  int env_power = 0;

  // Radius A(eps) with |phi(x)| <= eps for |x| >= A(eps).
  double decay_radius(double eps) const;
};

// phi(x) = sigma (sin(pi sigma x)/(pi sigma x))^2, phihat the unit triangle
// on [-sigma, sigma].
TestFunction make_fejer(double sigma);

// phihat = normalized (order)-fold self-convolution of an indicator, support
// scaled to (-sigma, sigma); order 2 reproduces the Fejer triangle, order 4
// is the cubic-B-spline pair with phi(x) = (3 sigma/4) sinc^4(pi sigma x/2).
TestFunction make_spline_pair(double sigma, int order);

// Look up a built-in pair by CLI name ("fejer", "spline2", "spline4").
TestFunction make_by_name(const std::string& name, double sigma);

// phi(gamma * log(q/pi) / (2 pi)) - the scaled weight a zero at height gamma
// contributes to the 1-level density sum.
double scaled_sum_weight(const TestFunction& tf, double gamma, std::uint32_t q);

// Adaptive quadrature of f over [a, b] to absolute tolerance abs_tol,
// splitting first at the declared kink abscissae.  Throws numeric_error if
// the error estimate cannot be brought under abs_tol within the depth limit.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, const std::vector<double>& kinks = {});

}  // namespace ratioslab::testfn
