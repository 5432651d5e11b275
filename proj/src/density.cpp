#include "ratioslab/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratioslab/errors.hpp"
#include "ratioslab/parallel.hpp"
#include "ratioslab/special.hpp"

namespace ratioslab::density {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Additive payload for the prime-sum reduction.
struct Acc {
  double s1 = 0, s2 = 0, b1 = 0, b2 = 0, b3 = 0;
  Acc operator+(const Acc& o) const {
    return {s1 + o.s1, s2 + o.s2, b1 + o.b1, b2 + o.b2, b3 + o.b3};
  }
  Acc& operator+=(const Acc& o) {
    *this = *this + o;
    return *this;
  }
};

// All contributions of one prime p: the -1 orthogonality branch for every
// k with p^k inside the phihat support, and the (q-1)-weighted branch plus
// B bookkeeping when p^k = 1 (mod q).
Acc prime_contribution(std::uint64_t p, std::uint32_t q, double xmax, double lq,
                       const testfn::TestFunction& tf) {
  Acc acc;
  if (p == q) return acc;
  const double logp = std::log(static_cast<double>(p));
  std::uint64_t pk = 1;
  std::uint64_t pk_mod = 1;
  for (int k = 1; k <= 200; ++k) {
    if (static_cast<double>(pk) > xmax / static_cast<double>(p)) break;
    pk *= p;
    pk_mod = pk_mod * (p % q) % q;
    if (static_cast<double>(pk) > xmax) break;
    const double u = k * logp / lq;
    const double ph = tf.phi_hat(u);
    if (ph == 0.0 && u >= tf.sigma) break;
    const double pw = std::exp(-0.5 * k * logp);  // p^{-k/2}
    const double w = logp * pw * ph;
    acc.s1 -= w;
    if (pk_mod == 1) {
      acc.s2 += (q - 1.0) * w;
      if (k == 1)
        acc.b1 += pw;
      else if (k == 2)
        acc.b2 += pw;
      else
        acc.b3 += pw;
    }
  }
  return acc;
}

SDecomposition prime_sum_impl(const testfn::TestFunction& tf, std::uint32_t q,
                              const arith::SieveTable& sv, bool parallel) {
  if (q < 3 || !arith::is_prime_u64(q))
    throw argument_error("prime_sum_term: q must be an odd prime");
  SDecomposition d;
  d.q = q;
  d.sigma = tf.sigma;
  const double lq = std::log(q / kPi);
  const double xmax = std::pow(q / kPi, tf.sigma);
  if (xmax < 2.0) return d;  // no primes inside the support
  if (static_cast<double>(sv.limit) < xmax)
    throw argument_error("prime_sum_term: sieve does not cover (q/pi)^sigma");

  std::size_t np = 0;
  while (np < sv.primes.size() && static_cast<double>(sv.primes[np]) <= xmax) ++np;

  Acc total;
  if (parallel) {
    total = parallel::chunked_sum<Acc>(
        np, [&](std::size_t i) { return prime_contribution(sv.primes[i], q, xmax, lq, tf); });
  } else {
    for (std::size_t i = 0; i < np; ++i)
      total += prime_contribution(sv.primes[i], q, xmax, lq, tf);
  }
  const double norm = 1.0 / ((q - 2.0) * lq);
  d.S1 = total.s1 * norm;
  d.S2 = total.s2 * norm;
  d.S = d.S1 + d.S2;
  d.B1 = total.b1;
  d.B2 = total.b2;
  d.B3 = total.b3;
  return d;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::empirical:
      return "empirical";
    case Method::explicit_formula:
      return "explicit";
    case Method::ratios:
      return "ratios";
  }
  throw argument_error("method_name: unknown method");
}

double digamma_phi_integral(const testfn::TestFunction& tf, double c, double beta) {
  if (!(c > 0)) throw argument_error("digamma_phi_integral: c must be positive");
  if (!(beta > 0)) throw argument_error("digamma_phi_integral: beta must be positive");

  // int phi(tau) Re psi(c + i beta tau) dtau collapses, after writing Re psi
  // as a Poisson-type kernel and swapping integrals, to a single finite
  // integral over the transform side:
  //   int_0^inf [ phihat(0) e^{-2 pi u/beta}/u
  //               - (2 pi/beta) phihat(u) e^{-2 pi c u/beta}/(1 - e^{-2 pi u/beta}) ] du.
  // The two 1/u singularities cancel; the rearrangement below keeps that
  // cancellation stable at small u.
  const double two_pi_over_beta = 2.0 * kPi / beta;
  const double h0 = tf.phi_hat_zero;
  auto integrand = [&](double u) {
    const double x = two_pi_over_beta * u;
    const double em = -std::expm1(-x);  // 1 - e^{-x}
    const double ecx = std::exp(-c * x);
    const double left = h0 * (std::exp(-x) * em - x * ecx) / (x * em);
    const double right = (tf.phi_hat(u) - h0) * ecx / em;
    return two_pi_over_beta * (left - right);
  };

  std::vector<double> kinks = tf.hat_breaks;
  kinks.push_back(tf.sigma);
  const double upper = std::max(tf.sigma, 6.5 * beta);
  return testfn::integrate(integrand, 0.0, upper, 1e-9, kinks);
}

double gamma_integral_term(const testfn::TestFunction& tf, std::uint32_t q) {
  if (q < 3 || !arith::is_prime_u64(q))
    throw argument_error("gamma_integral_term: q must be an odd prime");
  const double lq = std::log(q / kPi);
  const double beta = kPi / std::abs(lq);
  const double i_even = digamma_phi_integral(tf, 0.25, beta);
  const double i_odd = digamma_phi_integral(tf, 0.75, beta);
  return ((q - 3.0) / 2.0 * i_even + (q - 1.0) / 2.0 * i_odd) / ((q - 2.0) * lq);
}

SDecomposition prime_sum_term(const testfn::TestFunction& tf, std::uint32_t q,
                              const arith::SieveTable& sv) {
  return prime_sum_impl(tf, q, sv, true);
}

SDecomposition prime_sum_term_serial(const testfn::TestFunction& tf, std::uint32_t q,
                                     const arith::SieveTable& sv) {
  return prime_sum_impl(tf, q, sv, false);
}

DensityReport empirical_density(const testfn::TestFunction& tf, std::uint32_t q,
                                const std::vector<lfunc::ZeroSet>& zeros) {
  if (q < 3 || !arith::is_prime_u64(q))
    throw argument_error("empirical_density: q must be an odd prime");
  if (zeros.size() != q - 2)
    throw argument_error("empirical_density: zero sets must cover all q-2 characters");
  const double t_max = zeros.empty() ? 0.0 : zeros[0].t_max;
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    if (zeros[k].q != q || zeros[k].j != k + 1 || zeros[k].t_max != t_max)
      throw argument_error("empirical_density: zero set coverage mismatch at index " +
                           std::to_string(k));
  }

  double sum = 0.0;
  for (const auto& zs : zeros)
    for (double g : zs.ordinates) sum += testfn::scaled_sum_weight(tf, g, q);

  DensityReport rep;
  rep.q = q;
  rep.sigma = tf.sigma;
  rep.phi = tf.name;
  rep.method = Method::empirical;
  rep.total = sum / (q - 2.0);

  // Tail bound: envelope C/x^P against the zero-count density
  // (1/pi) log(qt/2pi), integrated above t_max, plus slack for count
  // fluctuation near the cutoff (8 envelope values at the edge).
  const double lq = std::abs(std::log(q / kPi));
  const double scale = lq / (2.0 * kPi);
  const double p = tf.env_power;
  const double c = tf.env_coeff;
  const double tp = std::pow(t_max, p - 1.0);
  const double x0 = t_max * scale;
  rep.truncation_bound =
      c / kPi * std::pow(1.0 / scale, p) *
          (std::log(q * t_max / (2.0 * kPi)) / ((p - 1.0) * tp) +
           1.0 / ((p - 1.0) * (p - 1.0) * tp)) +
      8.0 * c / std::pow(x0, p);
  return rep;
}

DensityReport explicit_formula_density(const testfn::TestFunction& tf, std::uint32_t q,
                                       const arith::SieveTable& sv) {
  DensityReport rep;
  rep.q = q;
  rep.sigma = tf.sigma;
  rep.phi = tf.name;
  rep.method = Method::explicit_formula;
  rep.main_term = tf.phi_hat_zero;
  rep.gamma_term = gamma_integral_term(tf, q);
  rep.prime_term = 2.0 * prime_sum_term(tf, q, sv).S;
  rep.total = rep.main_term + rep.gamma_term - rep.prime_term;
  return rep;
}

double katz_sarnak_main_term(const testfn::TestFunction& tf, Symmetry type) {
  std::vector<double> kinks{0.0, tf.sigma, -tf.sigma};
  for (double b : tf.hat_breaks) {
    kinks.push_back(b);
    kinks.push_back(-b);
  }
  const double hat_int = testfn::integrate(tf.phi_hat, -1.0, 1.0, 1e-12, kinks);
  const double h0 = tf.phi_hat_zero;
  switch (type) {
    case Symmetry::unitary:
      return h0;
    case Symmetry::symplectic:
      return h0 - 0.5 * hat_int;
    case Symmetry::so_even:
      return h0 + 0.5 * hat_int;
    case Symmetry::so_odd:
      return h0 - 0.5 * hat_int + tf.phi_zero;
    case Symmetry::orthogonal:
      return h0 + 0.5 * tf.phi_zero;
  }
  throw argument_error("katz_sarnak_main_term: unknown symmetry type");
}

}  // namespace ratioslab::density
