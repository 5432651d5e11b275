#include <cmath>
#include <complex>

#include "doctest.h"
#include "ratioslab/errors.hpp"
#include "ratioslab/special.hpp"

using namespace ratioslab;
using special::cplx;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }
bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

TEST_CASE("e_of hits the eighth root of unity and stays on the circle") {
  cplx v = special::e_of(0.125);
  CHECK(close(v, cplx(std::sqrt(0.5), std::sqrt(0.5)), 1e-15));
  CHECK(close(special::e_of(0.5), cplx(-1.0, 0.0), 1e-15));
  CHECK(close(special::e_of(3.0), cplx(1.0, 0.0), 1e-13));
  for (double x : {0.1, 0.37, 0.9, 12.25}) {
    CAPTURE(x);
    CHECK(close(std::abs(special::e_of(x)), 1.0, 1e-14));
  }
  // complex argument: e(iy) = exp(-2 pi y)
  CHECK(close(special::e_of(cplx(0.0, 0.25)), cplx(std::exp(-kPi / 2), 0.0), 1e-14));
}

TEST_CASE("log_gamma matches a high-precision reference value") {
  // lgamma(0.75 + 2i), 25-digit reference computed externally
  cplx ref(-2.051410910241185731463529, -0.2157805834625894029657638);
  CHECK(close(special::log_gamma(cplx(0.75, 2.0)), ref, 1e-13));
  CHECK(close(special::gamma_fn(cplx(5.0, 0.0)), cplx(24.0, 0.0), 1e-12));
  CHECK(close(special::log_gamma(cplx(0.5, 0.0)),
              cplx(0.5 * std::log(kPi), 0.0), 1e-14));
}

TEST_CASE("gamma recurrence holds left of the Lanczos shift region") {
  for (cplx z : {cplx(-0.5, 0.3), cplx(-2.25, -0.7), cplx(0.1, 0.05)}) {
    cplx lhs = special::gamma_fn(z + 1.0);
    cplx rhs = z * special::gamma_fn(z);
    CAPTURE(z.real());
    CAPTURE(z.imag());
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("log_gamma and digamma reject non-positive integer poles") {
  CHECK_THROWS_AS(special::log_gamma(cplx(0.0, 0.0)), numeric_error);
  CHECK_THROWS_AS(special::log_gamma(cplx(-3.0, 0.0)), numeric_error);
  CHECK_THROWS_AS(special::digamma(cplx(-1.0, 0.0)), numeric_error);
}

TEST_CASE("digamma matches reference values at real and complex points") {
  // psi(1) = -euler_gamma
  CHECK(close(special::digamma(cplx(1.0, 0.0)),
              cplx(-0.5772156649015328606065121, 0.0), 1e-12));
  cplx ref(-1.809728955129391813530956, 2.314515576304728645825687);
  CHECK(close(special::digamma(cplx(0.25, 0.3)), ref, 1e-12));
}

TEST_CASE("digamma agrees with centered differences of log_gamma") {
  const double h = 1e-5;
  for (cplx z : {cplx(0.8, 0.0), cplx(2.5, 1.5), cplx(0.25, -4.0), cplx(17.0, 0.3)}) {
    cplx fd = (special::log_gamma(z + h) - special::log_gamma(z - h)) / (2 * h);
    CAPTURE(z.real());
    CAPTURE(z.imag());
    CHECK(close(special::digamma(z), fd, 1e-6));
  }
}

TEST_CASE("riemann zeta reproduces classical values") {
  CHECK(close(special::riemann_zeta(cplx(2.0, 0.0)), cplx(kPi * kPi / 6, 0.0), 1e-10));
  CHECK(close(special::riemann_zeta(cplx(0.0, 0.0)), cplx(-0.5, 0.0), 1e-10));
  CHECK(close(special::riemann_zeta(cplx(0.75, 0.0)),
              cplx(-3.44128538694522289439514, 0.0), 1e-12));
  cplx ref_c(0.5327366709742328839233841, -0.07889651342583338265620509);
  CHECK(close(special::riemann_zeta(cplx(0.5, 3.0)), ref_c, 1e-12));
}

TEST_CASE("riemann zeta derivative matches a reference value") {
  CHECK(close(special::riemann_zeta(cplx(0.75, 0.0), 1),
              cplx(-15.92483192869048636323051, 0.0), 1e-11));
  // derivative consistency vs centered differences at a complex point
  cplx s(1.5, 2.0);
  const double h = 1e-5;
  cplx fd = (special::riemann_zeta(s + h) - special::riemann_zeta(s - h)) / (2 * h);
  CHECK(close(special::riemann_zeta(s, 1), fd, 1e-6));
  CHECK_THROWS_AS(special::riemann_zeta(cplx(2.0, 0.0), 2), argument_error);
}

TEST_CASE("zeta domain checks reject the pole and out-of-strip points") {
  CHECK_THROWS_AS(special::riemann_zeta(cplx(1.0, 0.0)), numeric_error);
  CHECK_THROWS_AS(special::riemann_zeta(cplx(-1.5, 0.0)), argument_error);
  CHECK_THROWS_AS(special::riemann_zeta(cplx(2.0, 130.0)), argument_error);
  CHECK_THROWS_AS(special::hurwitz_zeta(cplx(1.0, 0.0), 0.5), numeric_error);
}

TEST_CASE("hurwitz zeta matches reference values across the strip") {
  cplx r1(-1.348098564060210638638991, -1.518386641576633513074103);
  CHECK(close(special::hurwitz_zeta(cplx(0.5, 3.0), 2.0 / 7.0), r1, 1e-12));
  cplx r2(32.15190732407707006595026, -70.89395205488584403182623);
  CHECK(close(special::hurwitz_zeta(cplx(-1.0, 95.0), 0.37), r2, 1e-9));
  cplx r3(-951634028.4960950041117451, -307233907.0427946566436793);
  CHECK(std::abs(special::hurwitz_zeta(cplx(3.0, 0.5), 0.001) - r3) <=
        1e-12 * std::abs(r3));
  // zeta(2, 1/2) = pi^2/2
  CHECK(close(special::hurwitz_zeta(cplx(2.0, 0.0), 0.5), cplx(kPi * kPi / 2, 0.0),
              1e-12));
  CHECK(close(special::hurwitz_zeta(cplx(2.0, 0.0), 1.0),
              special::riemann_zeta(cplx(2.0, 0.0)), 1e-13));
}

TEST_CASE("hurwitz zeta multiplication identity holds for small moduli") {
  for (int m : {3, 5, 7}) {
    for (cplx s : {cplx(0.5, 0.0), cplx(0.5, 3.0), cplx(-0.5, 10.0)}) {
      cplx sum = 0;
      for (int a = 1; a <= m; ++a)
        sum += special::hurwitz_zeta(s, double(a) / m);
      cplx lhs = std::exp(-s * std::log(double(m))) * sum;
      CAPTURE(m);
      CAPTURE(s.real());
      CAPTURE(s.imag());
      CHECK(close(lhs, special::riemann_zeta(s), 1e-9));
    }
  }
}

TEST_CASE("hurwitz zeta validates its shift argument") {
  CHECK_THROWS_AS(special::hurwitz_zeta(cplx(2.0, 0.0), 0.0), argument_error);
  CHECK_THROWS_AS(special::hurwitz_zeta(cplx(2.0, 0.0), 1.5), argument_error);
  CHECK_THROWS_AS(special::hurwitz_zeta(cplx(2.0, 0.0), -0.2), argument_error);
}

TEST_CASE("gamma-factor pair matches reference values") {
  special::GPair at0 = special::g_pm(cplx(0.0, 0.0));
  CHECK(close(at0.plus, cplx(1.0, -1.0), 1e-14));
  CHECK(close(at0.minus, cplx(-1.0, -1.0), 1e-14));

  special::GPair g1 = special::g_pm(cplx(0.1, 0.0));
  CHECK(close(g1.plus, cplx(1.534593964201845974396249, -1.114947778212977459642432),
              1e-13));
  CHECK(close(g1.minus, cplx(-1.534593964201845974396249, -1.114947778212977459642432),
              1e-13));

  special::GPair g2 = special::g_pm(cplx(0.2, 0.1));
  CHECK(close(g2.plus, cplx(2.206042862030590657103007, -0.1401697701872614595716442),
              1e-13));
}

TEST_CASE("gamma-factor pair symmetry for real arguments") {
  // for real alpha the even ratio is real and the odd ratio purely imaginary,
  // so minus = -conj(plus)
  for (double a : {0.05, 0.2, -0.3}) {
    special::GPair g = special::g_pm(cplx(a, 0.0));
    CAPTURE(a);
    CHECK(close(g.minus, -std::conj(g.plus), 1e-13));
  }
}

TEST_CASE("gamma-factor derivative matches reference and finite differences") {
  special::GPair d = special::g_pm_derivative(cplx(0.1, 0.0));
  CHECK(close(d.plus, cplx(6.745740616296108519393, -1.218098353984256163201), 1e-11));
  CHECK(close(d.minus, cplx(-6.745740616296108519393, -1.218098353984256163201), 1e-11));

  cplx a(0.1, 0.05);
  const double h = 1e-5;
  special::GPair up = special::g_pm(a + h), dn = special::g_pm(a - h);
  special::GPair dd = special::g_pm_derivative(a);
  CHECK(close(dd.plus, (up.plus - dn.plus) / (2 * h), 1e-6));
  CHECK(close(dd.minus, (up.minus - dn.minus) / (2 * h), 1e-6));
}
