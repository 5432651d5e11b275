#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "ratioslab/arith.hpp"

namespace ratioslab::characters {

using cplx = std::complex<double>;

// Dirichlet character mod an odd prime q, indexed against the fixed
// generator g of the dlog table: chi_j(g^k) = e(jk/(q-1)).  j = 0 is the
// principal character; the non-principal family is j in [1, q-2].
// Serialized identity is the pair (q, j) together with the generator g.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const arith::DlogTable> table, std::uint32_t j);

  cplx operator()(std::uint64_t n) const;  // chi(n); 0 when q | n
  std::uint32_t q() const { return table_->q; }
  std::uint32_t j() const { return j_; }
  std::uint32_t g() const { return table_->g; }
  bool principal() const { return j_ == 0; }
  int parity() const { return static_cast<int>(j_ % 2); }  // a(chi): 0 even, 1 odd
  const arith::DlogTable& table() const { return *table_; }

 private:
  std::shared_ptr<const arith::DlogTable> table_;
  std::uint32_t j_;
  std::vector<cplx> roots_;  // e(k/(q-1)) for k in [0, q-2]
};

// All q-1 characters mod q sharing one dlog table (index j = 0 .. q-2).
std::vector<DirichletCharacter> all_characters(std::uint32_t q);

struct FunctionalEquationData {
  cplx gauss_sum;  // tau(chi) = sum_k chi(k) e(k/q)
  int parity = 0;  // a(chi)
  cplx sign;       // epsilon(chi) = tau(chi) / (i^{a(chi)} sqrt(q)); |sign| = 1
};

// tau(chi) by direct summation; throws argument_error for the principal
// character (the family under study excludes it).
cplx gauss_sum(const DirichletCharacter& chi);

FunctionalEquationData functional_equation_data(const DirichletCharacter& chi);

// Per-character functional-equation data for the whole non-principal family,
// indexed by j-1.  The parallel version distributes characters over threads;
// each character's sum stays serial, so the two agree exactly.
std::vector<FunctionalEquationData> family_functional_equation_data(std::uint32_t q);
std::vector<FunctionalEquationData> family_functional_equation_data_serial(std::uint32_t q);

// sum over non-principal chi of chi(r): closed form -1 + (q-1)[r = 1 mod q]
// for gcd(r, q) = 1, and 0 when q | r.
cplx family_char_sum(std::uint32_t q, std::uint64_t r);

// Same sum by explicit iteration over the family (test reference).
cplx family_char_sum_brute(std::uint32_t q, std::uint64_t r);

}  // namespace ratioslab::characters
