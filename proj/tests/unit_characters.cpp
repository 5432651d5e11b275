#include <cmath>
#include <complex>
#include <memory>
#include <random>

#include "doctest.h"
#include "ratioslab/errors.hpp"
#include "ratioslab/characters.hpp"

using namespace ratioslab;
using characters::cplx;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

characters::DirichletCharacter make_chi(std::uint32_t q, std::uint32_t j) {
  auto table = std::make_shared<const arith::DlogTable>(arith::dlog_table(q));
  return characters::DirichletCharacter(table, j);
}

}  // namespace

TEST_CASE("character values mod 5 match the generator convention") {
  auto chi = make_chi(5, 1);
  CHECK(chi.g() == 2);
  CHECK(close(chi(1), cplx(1, 0), 1e-15));
  CHECK(close(chi(2), cplx(0, 1), 1e-15));
  CHECK(close(chi(3), cplx(0, -1), 1e-15));
  CHECK(close(chi(4), cplx(-1, 0), 1e-15));
  CHECK(chi(0) == cplx(0, 0));
  CHECK(chi(5) == cplx(0, 0));
  CHECK(close(chi(7), chi(2), 1e-15));  // periodicity
  CHECK(chi.parity() == 1);
  CHECK(!chi.principal());
}

TEST_CASE("principal character is 1 on units and parity tracks chi(-1)") {
  auto chi0 = make_chi(7, 0);
  CHECK(chi0.principal());
  for (std::uint64_t a = 1; a < 7; ++a) CHECK(close(chi0(a), cplx(1, 0), 1e-15));

  auto fam = characters::all_characters(7);
  REQUIRE(fam.size() == 6);
  for (const auto& chi : fam) {
    cplx at_minus1 = chi(6);  // chi(-1 mod 7)
    CAPTURE(chi.j());
    if (chi.parity() == 0)
      CHECK(close(at_minus1, cplx(1, 0), 1e-14));
    else
      CHECK(close(at_minus1, cplx(-1, 0), 1e-14));
  }
}

TEST_CASE("conjugate character is the reflected index") {
  auto fam = characters::all_characters(11);
  for (std::uint32_t j : {1u, 4u, 9u}) {
    const auto& chi = fam[j];
    const auto& chibar = fam[11 - 1 - j];
    for (std::uint64_t a = 1; a < 11; ++a) {
      CAPTURE(j);
      CAPTURE(a);
      CHECK(close(chibar(a), std::conj(chi(a)), 1e-14));
    }
  }
}

TEST_CASE("characters are completely multiplicative") {
  auto fam = characters::all_characters(31);
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::uint64_t> pick(1, 30);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint64_t a = pick(rng), b = pick(rng);
    const auto& chi = fam[1 + trial % 29];
    CAPTURE(a);
    CAPTURE(b);
    CHECK(close(chi(a * b % 31), chi(a) * chi(b), 1e-13));
  }
}

TEST_CASE("gauss sum of the quadratic character mod 5 is sqrt(5)") {
  auto chi = make_chi(5, 2);  // Legendre symbol: even, real
  cplx tau = characters::gauss_sum(chi);
  CHECK(close(tau, cplx(std::sqrt(5.0), 0.0), 1e-12));
  CHECK_THROWS_AS(characters::gauss_sum(make_chi(5, 0)), argument_error);
}

TEST_CASE("gauss sums have modulus sqrt(q) across small families") {
  for (std::uint32_t q : {7u, 31u}) {
    auto fam = characters::all_characters(q);
    for (std::uint32_t j = 1; j + 1 < q; ++j) {
      cplx tau = characters::gauss_sum(fam[j]);
      CAPTURE(q);
      CAPTURE(j);
      CHECK(std::abs(std::norm(tau) - double(q)) <= 1e-8);
    }
  }
}

TEST_CASE("gauss sum conjugation identity tau(conj chi) = chi(-1) conj(tau)") {
  auto fam = characters::all_characters(31);
  for (std::uint32_t j = 1; j + 1 < 31; ++j) {
    cplx tau = characters::gauss_sum(fam[j]);
    cplx tau_bar = characters::gauss_sum(fam[31 - 1 - j]);
    cplx chi_minus1 = fam[j](30);
    CAPTURE(j);
    CHECK(close(tau_bar, chi_minus1 * std::conj(tau), 1e-12));
  }
}

TEST_CASE("functional equation data carries unit signs and correct parity") {
  auto fam = characters::all_characters(31);
  for (std::uint32_t j = 1; j + 1 < 31; ++j) {
    auto fed = characters::functional_equation_data(fam[j]);
    CAPTURE(j);
    CHECK(std::abs(std::abs(fed.sign) - 1.0) <= 1e-12);
    CHECK(fed.parity == int(j % 2));
    CHECK(close(fed.gauss_sum, characters::gauss_sum(fam[j]), 1e-13));
  }
}

TEST_CASE("family-averaged sign sum is root-q small") {
  for (std::uint32_t q : {101u, 499u}) {
    auto feds = characters::family_functional_equation_data(q);
    REQUIRE(feds.size() == q - 2);
    cplx sum = 0;
    int odd = 0;
    for (const auto& f : feds) {
      sum += f.sign;
      odd += f.parity;
    }
    CAPTURE(q);
    CHECK(std::abs(sum) / double(q - 2) <= 3.0 / std::sqrt(double(q)));
    // parity split: (q-3)/2 even, (q-1)/2 odd among non-principal
    CHECK(odd == int((q - 1) / 2));
    CHECK(int(feds.size()) - odd == int((q - 3) / 2));
  }
}

TEST_CASE("parallel and serial family sign computations agree exactly") {
  auto par = characters::family_functional_equation_data(199);
  auto ser = characters::family_functional_equation_data_serial(199);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].gauss_sum == ser[i].gauss_sum);
    CHECK(par[i].sign == ser[i].sign);
    CHECK(par[i].parity == ser[i].parity);
  }
}

TEST_CASE("non-principal character sum has the orthogonality closed form") {
  CHECK(close(characters::family_char_sum(5, 1), cplx(3, 0), 1e-15));
  CHECK(close(characters::family_char_sum(5, 2), cplx(-1, 0), 1e-15));
  CHECK(characters::family_char_sum(5, 10) == cplx(0, 0));
  CHECK(close(characters::family_char_sum(5, 11), cplx(3, 0), 1e-15));  // 11 = 1 mod 5

  for (std::uint32_t q : {7u, 31u}) {
    for (std::uint64_t r : {1ull, 2ull, 5ull, 30ull, 31ull, 32ull, 63ull}) {
      CAPTURE(q);
      CAPTURE(r);
      CHECK(close(characters::family_char_sum(q, r),
                  characters::family_char_sum_brute(q, r), 1e-9));
    }
  }
}
