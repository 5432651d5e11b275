#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "ratioslab/errors.hpp"
#include "ratioslab/characters.hpp"
#include "ratioslab/density.hpp"
#include "ratioslab/parallel.hpp"
#include "ratioslab/special.hpp"
#include "ratioslab/testfn.hpp"

using namespace ratioslab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Independent oracle for int phi(tau) Re psi(c + i beta tau) dtau built from
// the digamma pole expansion psi(z) = -gamma + sum_n [1/(n+1) - 1/(n+z)].
// Each Lorentzian term integrates against the Fejer pair in closed form:
//   int phi(tau) Re 1/(A + i beta tau) dtau = (2 pi / beta) J(2 pi A / beta),
//   J(lambda) = int_0^sigma (1 - u/sigma) e^{-lambda u} du
//             = 1/lambda - (1 - e^{-lambda sigma})/(sigma lambda^2).
double fejer_digamma_series(double c, double beta, double sigma) {
  auto J = [&](double lam) {
    return 1.0 / lam - (-std::expm1(-lam * sigma)) / (sigma * lam * lam);
  };
  // split each term as [1/(n+1) - 1/(n+c)] + [1/(n+c) - (2pi/beta) J];
  // the first telescopes to psi(c) + gamma_E, the second is summed with a
  // trigamma-asymptotic tail.
  double psi_c = special::digamma(std::complex<double>(c, 0.0)).real();
  const int N = 40000;
  double partial = 0;
  for (int n = 0; n <= N; ++n) {
    double lam = 2 * kPi * (n + c) / beta;
    partial += 1.0 / (n + c) - (2 * kPi / beta) * J(lam);
  }
  // sum_{n>N} [1/(n+c) - (2pi/beta) J] -> (beta/(2 pi sigma)) sum 1/(n+c)^2
  double x = N + 1 + c;
  double trigamma_tail = 1.0 / x + 1.0 / (2 * x * x) + 1.0 / (6 * x * x * x);
  return psi_c + partial + (beta / (2 * kPi * sigma)) * trigamma_tail;
}

}  // namespace

TEST_CASE("digamma integral matches external references and the pole series") {
  struct Case {
    std::uint32_t q;
    double sigma, c, ref;
  };
  // 25-digit references computed externally for the Poisson-kernel integral
  const Case cases[] = {
      {101, 1.0, 0.25, -2.1563080278839551823},
      {101, 1.0, 0.75, -0.72104239284755857211},
      {11, 1.5, 0.25, -1.3173216914651455853},
  };
  for (const auto& k : cases) {
    auto tf = testfn::make_fejer(k.sigma);
    double beta = kPi / std::abs(std::log(k.q / kPi));
    double got = density::digamma_phi_integral(tf, k.c, beta);
    CAPTURE(k.q);
    CAPTURE(k.c);
    CHECK(std::abs(got - k.ref) <= 2e-9);
    CHECK(std::abs(got - fejer_digamma_series(k.c, beta, k.sigma)) <= 1e-8);
  }
}

TEST_CASE("gamma term combines the two parities with the family weights") {
  auto tf = testfn::make_fejer(1.0);
  const std::uint32_t q = 101;
  double L = std::log(q / kPi);
  double beta = kPi / std::abs(L);
  double even = density::digamma_phi_integral(tf, 0.25, beta);
  double odd = density::digamma_phi_integral(tf, 0.75, beta);
  double expected =
      ((q - 3) / 2 * even + (q - 1) / 2 * odd) / ((q - 2) * L);
  CHECK(density::gamma_integral_term(tf, q) ==
        doctest::Approx(expected).epsilon(1e-14));
  // q = 3 sits below pi: log(q/pi) < 0 must not break the normalization
  CHECK(std::isfinite(density::gamma_integral_term(tf, 3)));
}

TEST_CASE("prime sum at sigma=1 has no congruence hits") {
  auto tf = testfn::make_fejer(1.0);
  auto sv = arith::sieve(64);
  auto sd = density::prime_sum_term(tf, 101, sv);
  CHECK(sd.q == 101);
  CHECK(sd.sigma == 1.0);
  CHECK(sd.S2 == 0.0);
  CHECK(sd.B1 == 0.0);
  CHECK(sd.B2 == 0.0);
  CHECK(sd.B3 == 0.0);
  CHECK(sd.S == sd.S1);
  CHECK(sd.S1 < 0.0);
}

TEST_CASE("prime sum matches a direct character triple sum") {
  // small supports keep the brute sum tiny; sigma=2 and sigma=3 runs force
  // congruence hits through the S2/B branches (2^5 = 1 mod 31, 23 = 1 mod 11)
  struct Case {
    std::uint32_t q;
    double sigma;
  };
  for (const auto& k : {Case{11, 1.5}, Case{31, 2.0}, Case{11, 3.0}}) {
    auto tf = testfn::make_fejer(k.sigma);
    double L = std::log(k.q / kPi);
    double cutoff = std::pow(k.q / kPi, k.sigma);
    auto sv = arith::sieve(std::uint64_t(cutoff) + 2);
    auto fam = characters::all_characters(k.q);

    double brute = 0;
    for (std::uint32_t p : sv.primes) {
      if (p > cutoff || p == k.q) continue;
      for (double pk = p; pk <= cutoff; pk *= p) {
        int kk = int(std::llround(std::log(pk) / std::log(double(p))));
        std::complex<double> chi_sum = 0;
        for (std::uint32_t j = 1; j + 1 < k.q; ++j) {
          std::complex<double> v = 1;
          for (int i = 0; i < kk; ++i) v *= fam[j](p);
          chi_sum += v;
        }
        brute += chi_sum.real() * std::log(double(p)) / std::sqrt(pk) *
                 tf.phi_hat(std::log(pk) / L);
      }
    }
    brute /= (k.q - 2) * L;

    auto sd = density::prime_sum_term(tf, k.q, sv);
    CAPTURE(k.q);
    CAPTURE(k.sigma);
    CHECK(std::abs(sd.S - brute) <= 1e-9);
    if (k.sigma > 1.5) CHECK(sd.B1 + sd.B2 + sd.B3 > 0.0);
  }
}

TEST_CASE("chunked prime sum equals the serial reference") {
  auto tf = testfn::make_fejer(1.5);
  auto sv = arith::sieve(1 << 16);
  auto a = density::prime_sum_term(tf, 1009, sv);
  auto b = density::prime_sum_term_serial(tf, 1009, sv);
  CHECK(std::abs(a.S - b.S) <= 1e-13 * (1 + std::abs(b.S)));
  CHECK(std::abs(a.S1 - b.S1) <= 1e-13 * (1 + std::abs(b.S1)));
  CHECK(std::abs(a.S2 - b.S2) <= 1e-13 * (1 + std::abs(b.S2)));
  CHECK(a.B1 == doctest::Approx(b.B1).epsilon(1e-13));
}

TEST_CASE("chunked prime sum is invariant under the job count") {
  auto tf = testfn::make_fejer(1.5);
  auto sv = arith::sieve(1 << 15);
  parallel::set_jobs(1);
  auto one = density::prime_sum_term(tf, 509, sv);
  parallel::set_jobs(3);
  auto three = density::prime_sum_term(tf, 509, sv);
  parallel::set_jobs(0);
  CHECK(one.S == three.S);
  CHECK(one.S1 == three.S1);
  CHECK(one.S2 == three.S2);
  CHECK(one.B3 == three.B3);
}

TEST_CASE("prime sum validates sieve coverage and the modulus") {
  auto tf = testfn::make_fejer(1.5);
  auto tiny = arith::sieve(4);
  CHECK_THROWS_AS(density::prime_sum_term(tf, 101, tiny), argument_error);
  auto sv = arith::sieve(64);
  CHECK_THROWS_AS(density::prime_sum_term(tf, 12, sv), argument_error);
}

TEST_CASE("explicit formula assembles its three pieces") {
  auto tf = testfn::make_fejer(1.0);
  auto sv = arith::sieve(64);
  auto rep = density::explicit_formula_density(tf, 11, sv);
  CHECK(rep.method == density::Method::explicit_formula);
  CHECK(rep.main_term == tf.phi_hat_zero);
  auto sd = density::prime_sum_term(tf, 11, sv);
  CHECK(rep.prime_term == doctest::Approx(2 * sd.S).epsilon(1e-15));
  CHECK(rep.total ==
        doctest::Approx(rep.main_term + rep.gamma_term - rep.prime_term)
            .epsilon(1e-15));
  CHECK(density::method_name(rep.method) == "explicit");
}

TEST_CASE("empirical density agrees with the explicit formula at q=11") {
  auto tf = testfn::make_fejer(1.0);
  auto zeros30 = lfunc::find_zeros_family(11, 30.0);
  auto emp30 = density::empirical_density(tf, 11, zeros30);
  CHECK(emp30.method == density::Method::empirical);
  CHECK(emp30.truncation_bound > 0.0);

  auto sv = arith::sieve(64);
  auto exp11 = density::explicit_formula_density(tf, 11, sv);
  CHECK(std::abs(emp30.total - exp11.total) <= emp30.truncation_bound + 1e-4);

  // doubling the height moves the zero sum by at most the reported tail bound
  auto zeros60 = lfunc::find_zeros_family(11, 60.0);
  auto emp60 = density::empirical_density(tf, 11, zeros60);
  CHECK(std::abs(emp60.total - emp30.total) <= emp30.truncation_bound + 1e-6);
  CHECK(emp60.truncation_bound < emp30.truncation_bound);
}

TEST_CASE("empirical density rejects incomplete or mismatched zero sets") {
  auto tf = testfn::make_fejer(1.0);
  auto zeros = lfunc::find_zeros_family(11, 10.0);
  auto partial = zeros;
  partial.pop_back();
  CHECK_THROWS_AS(density::empirical_density(tf, 11, partial), argument_error);
  auto wrong_q = zeros;
  CHECK_THROWS_AS(density::empirical_density(tf, 7, wrong_q), argument_error);
  auto mixed = zeros;
  mixed.back().t_max = 20.0;
  CHECK_THROWS_AS(density::empirical_density(tf, 11, mixed), argument_error);
}

TEST_CASE("katz-sarnak main terms reproduce the five classical densities") {
  auto tf = testfn::make_fejer(1.0);
  double hat_int = 2 * testfn::integrate(
                           [&](double u) { return tf.phi_hat(u); }, 0.0, 1.0,
                           1e-12);
  CHECK(density::katz_sarnak_main_term(tf, density::Symmetry::unitary) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(density::katz_sarnak_main_term(tf, density::Symmetry::symplectic) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(density::katz_sarnak_main_term(tf, density::Symmetry::so_even) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(density::katz_sarnak_main_term(tf, density::Symmetry::so_odd) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(density::katz_sarnak_main_term(tf, density::Symmetry::orthogonal) ==
        doctest::Approx(1.5).epsilon(1e-12));
  // SO(even) - Sp is exactly the transform integral
  double gap = density::katz_sarnak_main_term(tf, density::Symmetry::so_even) -
               density::katz_sarnak_main_term(tf, density::Symmetry::symplectic);
  CHECK(gap == doctest::Approx(hat_int).epsilon(1e-12));
}
