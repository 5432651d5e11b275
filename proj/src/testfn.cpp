#include "ratioslab/testfn.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ratioslab/errors.hpp"

namespace ratioslab::testfn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double sinc(double y) {
  if (std::abs(y) < 1e-8) return 1.0 - y * y / 6.0;
  return std::sin(y) / y;
}

// Centered cubic B-spline (4-fold self-convolution of a unit indicator),
// supported on [-2, 2], normalized to integral 1.
double cubic_bspline(double x) {
  x = std::abs(x);
  if (x >= 2.0) return 0.0;
  if (x >= 1.0) {
    const double w = 2.0 - x;
    return w * w * w / 6.0;
  }
  return 2.0 / 3.0 - x * x + x * x * x / 2.0;
}

}  // namespace

double TestFunction::decay_radius(double eps) const {
  if (!(eps > 0)) throw argument_error("decay_radius: eps must be positive");
  const double from_env = std::pow(env_coeff / eps, 1.0 / env_power);
  const double from_sinc = 1.0 / (kPi * sigma * std::sqrt(eps));
  return std::max(from_env, from_sinc);
}

TestFunction make_fejer(double sigma) {
  if (!(sigma > 0)) throw argument_error("make_fejer: sigma must be positive");
  TestFunction tf;
  tf.name = "fejer";
  tf.sigma = sigma;
  tf.phi = [sigma](double x) {
    const double s = sinc(kPi * sigma * x);
    return sigma * s * s;
  };
  tf.phi_hat = [sigma](double u) { return std::max(0.0, 1.0 - std::abs(u) / sigma); };
  tf.phi_zero = sigma;
  tf.phi_hat_zero = 1.0;
  tf.hat_breaks = {};
  tf.env_coeff = 1.0 / (kPi * kPi * sigma);
  tf.env_power = 2;
  return tf;
}

TestFunction make_spline_pair(double sigma, int order) {
  if (!(sigma > 0)) throw argument_error("make_spline_pair: sigma must be positive");
  if (order == 2) {
    TestFunction tf = make_fejer(sigma);
    tf.name = "spline2";
    return tf;
  }
  if (order != 4)
    throw argument_error("make_spline_pair: supported orders are 2 and 4");
  TestFunction tf;
  tf.name = "spline4";
  tf.sigma = sigma;
  // phihat(u) = (3/2) M4(2u/sigma) where M4 is the cubic B-spline; then
  // phihat(0) = 1 and phi(x) = (3 sigma / 4) sinc^4(pi sigma x / 2).
  tf.phi = [sigma](double x) {
    const double s = sinc(kPi * sigma * x / 2.0);
    const double s2 = s * s;
    return 0.75 * sigma * s2 * s2;
  };
  tf.phi_hat = [sigma](double u) { return 1.5 * cubic_bspline(2.0 * u / sigma); };
  tf.phi_zero = 0.75 * sigma;
  tf.phi_hat_zero = 1.0;
  tf.hat_breaks = {sigma / 2.0};
  tf.env_coeff = 12.0 / (kPi * kPi * kPi * kPi * sigma * sigma * sigma);
  tf.env_power = 4;
  return tf;
}

TestFunction make_by_name(const std::string& name, double sigma) {
  if (name == "fejer") return make_fejer(sigma);
  if (name == "spline2") return make_spline_pair(sigma, 2);
  if (name == "spline4") return make_spline_pair(sigma, 4);
  throw argument_error("unknown test function '" + name +
                       "' (expected fejer, spline2, or spline4)");
}

double scaled_sum_weight(const TestFunction& tf, double gamma, std::uint32_t q) {
  if (q < 3) throw argument_error("scaled_sum_weight: q must be at least 3");
  const double scale = std::log(static_cast<double>(q) / kPi) / (2.0 * kPi);
  return tf.phi(gamma * scale);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, const std::vector<double>& kinks) {
  if (!(abs_tol > 0)) throw argument_error("integrate: tolerance must be positive");
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw argument_error("integrate: interval must satisfy a <= b");
  }
  std::vector<double> cuts{a, b};
  for (double k : kinks)
    if (k > a && k < b) cuts.push_back(k);
  std::sort(cuts.begin(), cuts.end());

  using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    double piece_err = 0.0;
    total += gk::integrate(f, cuts[i], cuts[i + 1], 15, 1e-13, &piece_err);
    err_total += piece_err;
  }
  if (!(err_total <= abs_tol) || !std::isfinite(total))
    throw numeric_error("integrate: error estimate above requested tolerance");
  return total;
}

}  // namespace ratioslab::testfn
