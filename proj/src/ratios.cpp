#include "ratioslab/ratios.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ratioslab/arith.hpp"
#include "ratioslab/errors.hpp"
#include "ratioslab/parallel.hpp"
#include "ratioslab/special.hpp"

namespace ratioslab::ratios {

namespace {

// Character values against a shared root-of-unity table:
// chi_j(a) = roots[(j * dlog[a]) mod (q-1)].  Keeps family-wide loops at
// O(q) memory instead of one table per character.
struct FamilyEval {
  arith::DlogTable table;
  std::vector<cplx> roots;

  explicit FamilyEval(std::uint32_t q) : table(arith::dlog_table(q)) {
    roots.resize(q - 1);
    for (std::uint32_t m = 0; m + 1 < q; ++m)
      roots[m] = special::e_of(static_cast<double>(m) / (q - 1));
  }

  // q^{-s} sum_a chi_j(a) H[a] over a = 1..q-1.
  cplx l_from_row(std::uint32_t j, cplx s, const std::vector<cplx>& row) const {
    const std::uint32_t q = table.q;
    cplx sum = 0.0;
    for (std::uint32_t a = 1; a < q; ++a) {
      const std::uint64_t k = table.dlog[a];
      sum += roots[static_cast<std::size_t>(k * j % (q - 1))] * row[a - 1];
    }
    return std::exp(-s * std::log(static_cast<double>(q))) * sum;
  }
};

std::vector<cplx> hurwitz_row(cplx s, std::uint32_t q) {
  std::vector<cplx> row(q - 1);
  for (std::uint32_t a = 1; a < q; ++a)
    row[a - 1] = special::hurwitz_zeta(s, static_cast<double>(a) / q);
  return row;
}

void check_prime(std::uint32_t q, const char* who) {
  if (q < 3 || !arith::is_prime_u64(q))
    throw argument_error(std::string(who) + ": q must be an odd prime");
}

cplx brute_impl(std::uint32_t q, cplx alpha, cplx gamma, bool parallel) {
  check_prime(q, "brute_force_R");
  if (q > 2003)
    throw resource_error("brute_force_R: q exceeds the brute-force budget 2003");
  const cplx s_num = 0.5 + alpha;
  const cplx s_den = 0.5 + gamma;
  const FamilyEval fam(q);
  const std::vector<cplx> row_num = hurwitz_row(s_num, q);
  const std::vector<cplx> row_den = hurwitz_row(s_den, q);

  auto quotient = [&](std::size_t i) {
    const std::uint32_t j = static_cast<std::uint32_t>(i) + 1;
    const cplx den = fam.l_from_row(j, s_den, row_den);
    if (std::abs(den) < 1e-10)
      throw numeric_error("brute_force_R: L(1/2+gamma) near zero at q=" +
                          std::to_string(q) + " j=" + std::to_string(j));
    return fam.l_from_row(j, s_num, row_num) / den;
  };
  if (parallel) return parallel::chunked_sum<cplx>(q - 2, quotient);
  cplx sum = 0.0;
  for (std::size_t i = 0; i + 2 < q; ++i) sum += quotient(i);
  return sum;
}

}  // namespace

cplx mobius_ap_sum(cplx s, std::uint32_t q) {
  check_prime(q, "mobius_ap_sum");
  if (!(s.real() > 0.5))
    throw argument_error("mobius_ap_sum: Re s must exceed 1/2");
  const FamilyEval fam(q);
  const std::vector<cplx> row = hurwitz_row(s, q);

  const cplx qs = std::exp(-s * std::log(static_cast<double>(q)));
  const cplx principal = 1.0 / (special::riemann_zeta(s) * (1.0 - qs));
  const cplx nonprincipal = parallel::chunked_sum<cplx>(q - 2, [&](std::size_t i) {
    const std::uint32_t j = static_cast<std::uint32_t>(i) + 1;
    const cplx lv = fam.l_from_row(j, s, row);
    if (std::abs(lv) < 1e-10)
      throw numeric_error("mobius_ap_sum: L(s) near zero at q=" + std::to_string(q) +
                          " j=" + std::to_string(j));
    return 1.0 / lv;
  });
  return (principal + nonprincipal) / (q - 1.0);
}

RPrediction ratios_prediction_R(const RatiosParams& p) {
  check_prime(p.q, "ratios_prediction_R");
  if (!(p.alpha.real() < 0.5))
    throw argument_error("ratios_prediction_R: Re alpha must be below 1/2");
  if (!(p.gamma.real() > 0.0))
    throw argument_error("ratios_prediction_R: Re gamma must be positive");

  const double qd = p.q;
  RPrediction r;
  r.h_sum_term = (qd - 1.0) * mobius_ap_sum(0.5 + p.gamma, p.q);

  const special::GPair g = special::g_pm(p.alpha);
  const cplx a_pow = std::exp(-(0.5 + p.alpha) * std::log(qd));  // q^{-1/2-alpha}
  const cplx zeta_den = special::riemann_zeta(0.5 + p.gamma);
  const cplx zeta_num = special::riemann_zeta(0.5 + p.alpha);
  const cplx zeta_ref = special::riemann_zeta(0.5 - p.alpha);

  r.zeta_ratio_term = -zeta_num / zeta_den;
  r.s2_zeta_term = -g.plus * zeta_ref * a_pow / (2.0 * zeta_den);
  r.s3_zeta_term = -g.minus * zeta_ref * a_pow / (2.0 * zeta_den);

  const cplx base = ((r.h_sum_term + r.zeta_ratio_term) + r.s2_zeta_term) + r.s3_zeta_term;
  if (p.variant == Variant::weak) {
    r.bracket_term = (qd - 1.0) *
                     (g.plus * special::e_of(-1.0 / qd) + g.minus * special::e_of(1.0 / qd)) *
                     a_pow / 2.0;
    r.value = base + r.bracket_term;
  } else {
    r.bracket_term = 0.0;
    r.value = base;
  }
  return r;
}

RPrediction ratios_prediction_dR(const RatiosParams& p) {
  check_prime(p.q, "ratios_prediction_dR");
  if (p.alpha != p.gamma)
    throw argument_error("ratios_prediction_dR: requires alpha == gamma");
  const cplx r0 = p.alpha;
  if (!(r0.real() > 0.0) || r0.real() > 0.25 + 1e-12)
    throw argument_error("ratios_prediction_dR: Re r must lie in (0, 1/4]");

  const double qd = p.q;
  const double lnq = std::log(qd);
  const special::GPair g = special::g_pm(r0);
  const special::GPair gd = special::g_pm_derivative(r0);
  const cplx a_pow = std::exp(-(0.5 + r0) * lnq);  // q^{-1/2-r}

  const cplx z = special::riemann_zeta(0.5 + r0);
  const cplx zp = special::riemann_zeta(0.5 + r0, 1);
  const cplx zm = special::riemann_zeta(0.5 - r0);
  const cplx zmp = special::riemann_zeta(0.5 - r0, 1);

  RPrediction d;
  d.h_sum_term = 0.0;  // depends on gamma only
  d.zeta_ratio_term = -zp / z;
  d.s2_zeta_term = -(gd.plus * zm - g.plus * zmp - g.plus * zm * lnq) * a_pow / (2.0 * z);
  d.s3_zeta_term = -(gd.minus * zm - g.minus * zmp - g.minus * zm * lnq) * a_pow / (2.0 * z);

  const cplx base = (d.zeta_ratio_term + d.s2_zeta_term) + d.s3_zeta_term;
  if (p.variant == Variant::weak) {
    d.bracket_term = (qd - 1.0) * a_pow / 2.0 *
                     ((gd.plus - g.plus * lnq) * special::e_of(-1.0 / qd) +
                      (gd.minus - g.minus * lnq) * special::e_of(1.0 / qd));
    d.value = base + d.bracket_term;
  } else {
    d.bracket_term = 0.0;
    d.value = base;
  }
  return d;
}

cplx brute_force_R(std::uint32_t q, cplx alpha, cplx gamma) {
  return brute_impl(q, alpha, gamma, true);
}

cplx brute_force_R_serial(std::uint32_t q, cplx alpha, cplx gamma) {
  return brute_impl(q, alpha, gamma, false);
}

density::DensityReport ratios_density_prediction(const testfn::TestFunction& tf,
                                                 std::uint32_t q) {
  density::DensityReport rep;
  rep.q = q;
  rep.sigma = tf.sigma;
  rep.phi = tf.name;
  rep.method = density::Method::ratios;
  rep.main_term = tf.phi_hat_zero;
  rep.gamma_term = density::gamma_integral_term(tf, q);
  rep.prime_term = 0.0;
  rep.total = rep.main_term + rep.gamma_term;
  return rep;
}

}  // namespace ratioslab::ratios
