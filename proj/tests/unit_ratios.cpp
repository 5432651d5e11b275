#include <cmath>
#include <complex>
#include <memory>

#include "doctest.h"
#include "ratioslab/errors.hpp"
#include "ratioslab/characters.hpp"
#include "ratioslab/lfunc.hpp"
#include "ratioslab/parallel.hpp"
#include "ratioslab/ratios.hpp"
#include "ratioslab/special.hpp"

using namespace ratioslab;
using ratios::cplx;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

cplx brute_quotient_sum(std::uint32_t q, cplx alpha, cplx gamma) {
  auto fam = characters::all_characters(q);
  cplx sum = 0;
  for (std::uint32_t j = 1; j + 1 < q; ++j)
    sum += lfunc::l_value(cplx(0.5, 0.0) + alpha, fam[j]) /
           lfunc::l_value(cplx(0.5, 0.0) + gamma, fam[j]);
  return sum;
}

}  // namespace

TEST_CASE("moebius progression sum matches a direct truncated series") {
  // sum over h = 1 mod 5 of mu(h)/h^2, reference from direct summation
  cplx got = ratios::mobius_ap_sum(cplx(2.0, 0.0), 5);
  CHECK(std::abs(got - cplx(1.022094570056956133315664, 0.0)) <= 1e-7);
}

TEST_CASE("moebius progression sum tends to 1 like a root-q power") {
  for (std::uint32_t q : {101u, 1009u}) {
    cplx v = ratios::mobius_ap_sum(cplx(0.9, 0.0), q);
    CAPTURE(q);
    CHECK(std::abs(v - cplx(1.0, 0.0)) <= 10.0 * std::pow(double(q), -0.9));
  }
}

TEST_CASE("moebius progression sum validates its half-plane and modulus") {
  CHECK_THROWS_AS(ratios::mobius_ap_sum(cplx(0.5, 0.0), 5), argument_error);
  CHECK_THROWS_AS(ratios::mobius_ap_sum(cplx(2.0, 0.0), 12), argument_error);
  // near s = 1 the principal-branch factor degenerates
  CHECK_THROWS_AS(ratios::mobius_ap_sum(cplx(1.0, 0.0), 5), numeric_error);
}

TEST_CASE("prediction pieces sum to the reported value") {
  for (auto variant : {ratios::Variant::standard, ratios::Variant::weak}) {
    ratios::RatiosParams p{101, cplx(0.1, 0.02), cplx(0.3, -0.01), variant};
    auto r = ratios::ratios_prediction_R(p);
    cplx pieces = r.h_sum_term + r.bracket_term + r.zeta_ratio_term +
                  r.s2_zeta_term + r.s3_zeta_term;
    CHECK(std::abs(pieces - r.value) <= 1e-12 * (1.0 + std::abs(r.value)));
    if (variant == ratios::Variant::standard) CHECK(r.bracket_term == cplx(0, 0));
  }
}

TEST_CASE("weak and standard variants differ exactly by the bracket") {
  ratios::RatiosParams ps{499, cplx(0.15, 0.0), cplx(0.2, 0.0),
                          ratios::Variant::standard};
  ratios::RatiosParams pw = ps;
  pw.variant = ratios::Variant::weak;
  auto rs = ratios::ratios_prediction_R(ps);
  auto rw = ratios::ratios_prediction_R(pw);
  CHECK(rw.value == rs.value + rw.bracket_term);
  CHECK(rs.h_sum_term == rw.h_sum_term);
  CHECK(rs.zeta_ratio_term == rw.zeta_ratio_term);

  // bracket modulus obeys its explicit bound
  auto g = special::g_pm(pw.alpha);
  double bound = (499.0 - 1.0) * (std::abs(g.plus) + std::abs(g.minus)) /
                 (2.0 * std::pow(499.0, 0.5 + pw.alpha.real()));
  CHECK(std::abs(rw.bracket_term) <= bound * (1 + 1e-12));
}

TEST_CASE("prediction approaches q-2 on the diagonal") {
  ratios::RatiosParams p{101, cplx(0.25, 0.0), cplx(0.25, 0.0),
                         ratios::Variant::standard};
  auto r = ratios::ratios_prediction_R(p);
  CHECK(std::abs(r.value - cplx(99.0, 0.0)) <= 3.0 * std::sqrt(101.0));
}

TEST_CASE("prediction validates the shift half-planes") {
  CHECK_THROWS_AS(ratios::ratios_prediction_R(
                      {101, cplx(0.6, 0.0), cplx(0.3, 0.0), ratios::Variant::standard}),
                  argument_error);
  CHECK_THROWS_AS(ratios::ratios_prediction_R(
                      {101, cplx(0.1, 0.0), cplx(-0.1, 0.0), ratios::Variant::standard}),
                  argument_error);
  CHECK_THROWS_AS(ratios::ratios_prediction_R(
                      {12, cplx(0.1, 0.0), cplx(0.3, 0.0), ratios::Variant::standard}),
                  argument_error);
}

TEST_CASE("brute force family sum matches per-character quotients") {
  for (std::uint32_t q : {7u, 31u}) {
    cplx alpha(0.1, 0.05), gamma(0.3, -0.02);
    cplx direct = brute_quotient_sum(q, alpha, gamma);
    cplx fast = ratios::brute_force_R(q, alpha, gamma);
    CAPTURE(q);
    CHECK(std::abs(fast - direct) <= 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("brute force diagonal is exactly the family size") {
  for (std::uint32_t q : {11u, 101u}) {
    cplx r = ratios::brute_force_R(q, cplx(0.25, 0.0), cplx(0.25, 0.0));
    CAPTURE(q);
    CHECK(std::abs(r - cplx(q - 2.0, 0.0)) <= 1e-9);
  }
}

TEST_CASE("brute force parallel reduction equals the serial reference") {
  cplx alpha(0.12, 0.0), gamma(0.27, 0.0);
  cplx par = ratios::brute_force_R(503, alpha, gamma);
  cplx ser = ratios::brute_force_R_serial(503, alpha, gamma);
  CHECK(std::abs(par - ser) <= 1e-13 * (1.0 + std::abs(ser)));
  parallel::set_jobs(1);
  cplx one = ratios::brute_force_R(503, alpha, gamma);
  parallel::set_jobs(3);
  cplx three = ratios::brute_force_R(503, alpha, gamma);
  CHECK(one == three);
}

TEST_CASE("brute force refuses moduli beyond its cost budget") {
  CHECK_THROWS_AS(ratios::brute_force_R(2011, cplx(0.1, 0.0), cplx(0.3, 0.0)),
                  resource_error);
}

TEST_CASE("closed-form derivative matches finite differences of the prediction") {
  const std::uint32_t q = 101;
  const double r0 = 0.2, h = 1e-4;
  ratios::RatiosParams pd{q, cplx(r0, 0.0), cplx(r0, 0.0), ratios::Variant::standard};
  auto d = ratios::ratios_prediction_dR(pd);

  auto at = [&](double a, double g) {
    return ratios::ratios_prediction_R(
               {q, cplx(a, 0.0), cplx(g, 0.0), ratios::Variant::standard})
        .value;
  };
  cplx fd = (at(r0 + h, r0) - at(r0 - h, r0)) / (2.0 * h);
  CHECK(std::abs(d.value - fd) <= 1e-5 * (1.0 + std::abs(fd)));
}

TEST_CASE("derivative tends to the zeta logarithmic derivative for large q") {
  const double r0 = 0.1;
  cplx arg(0.5 + r0, 0.0);
  cplx target = -special::riemann_zeta(arg, 1) / special::riemann_zeta(arg);
  for (std::uint32_t q : {1009u, 10007u}) {
    ratios::RatiosParams p{q, cplx(r0, 0.0), cplx(r0, 0.0), ratios::Variant::standard};
    auto d = ratios::ratios_prediction_dR(p);
    CAPTURE(q);
    CHECK(std::abs(d.value - target) <= 10.0 * std::pow(double(q), -0.5 + r0));
  }
}

TEST_CASE("derivative variants differ exactly by the differentiated bracket") {
  ratios::RatiosParams ps{499, cplx(0.2, 0.0), cplx(0.2, 0.0),
                          ratios::Variant::standard};
  ratios::RatiosParams pw = ps;
  pw.variant = ratios::Variant::weak;
  auto ds = ratios::ratios_prediction_dR(ps);
  auto dw = ratios::ratios_prediction_dR(pw);
  CHECK(dw.value == ds.value + dw.bracket_term);
  CHECK(ds.bracket_term == cplx(0, 0));
}

TEST_CASE("derivative requires equal shifts in the allowed band") {
  CHECK_THROWS_AS(ratios::ratios_prediction_dR({101, cplx(0.1, 0.0), cplx(0.2, 0.0),
                                                ratios::Variant::standard}),
                  argument_error);
  CHECK_THROWS_AS(ratios::ratios_prediction_dR({101, cplx(0.3, 0.0), cplx(0.3, 0.0),
                                                ratios::Variant::standard}),
                  argument_error);
  CHECK_THROWS_AS(ratios::ratios_prediction_dR({101, cplx(0.0, 0.0), cplx(0.0, 0.0),
                                                ratios::Variant::standard}),
                  argument_error);
}

TEST_CASE("ratios density prediction is the gamma term plus the transform mass") {
  auto tf = testfn::make_fejer(1.0);
  auto rep = ratios::ratios_density_prediction(tf, 101);
  CHECK(rep.method == density::Method::ratios);
  CHECK(rep.prime_term == 0.0);
  CHECK(rep.main_term == tf.phi_hat_zero);
  CHECK(rep.gamma_term == doctest::Approx(density::gamma_integral_term(tf, 101))
                              .epsilon(1e-15));
  CHECK(rep.total == doctest::Approx(rep.main_term + rep.gamma_term).epsilon(1e-15));
}
