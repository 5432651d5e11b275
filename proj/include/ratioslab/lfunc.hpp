#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ratioslab/characters.hpp"

namespace ratioslab::lfunc {

using cplx = std::complex<double>;

// Critical-line zero ordinates of one L(s, chi) in [-t_max, t_max].
struct ZeroSet {
  std::uint32_t q = 0;
  std::uint32_t j = 0;
  std::uint32_t g = 0;  // generator the index j refers to
  double t_max = 0;
  std::vector<double> ordinates;  // strictly increasing
  double count_residual = 0;      // |#found - zero_count_estimate(q, t_max)|
  bool refined = false;           // grid was halved once after a residual > 2
  bool count_warning = false;     // residual still > 2 after refinement
};

// L(s, chi) = q^{-s} sum_{a=1}^{q-1} chi(a) zeta(s, a/q).  Supported strip
// -1 <= Re s <= 3, |Im s| <= 100; violations throw argument_error.
cplx l_value(cplx s, const characters::DirichletCharacter& chi);

// Completed Lambda(s, chi) = (pi/q)^{-(s+a)/2} Gamma((s+a)/2) L(s, chi).
cplx completed_lambda(cplx s, const characters::DirichletCharacter& chi);

// Hardy Z(t) = Re[omega^{-1/2} Lambda(1/2 + it, chi)], omega the functional
// equation sign (principal square root).  The rotation makes Lambda real on
// the critical line; an imaginary residual above 1e-8 throws numeric_error.
double hardy_z(double t, const characters::DirichletCharacter& chi,
               const characters::FunctionalEquationData& fed);

// Expected number of zeros with |Im rho| <= T: (T/pi) log(qT/(2 pi e)).
double zero_count_estimate(std::uint32_t q, double t_max);

// Sign-change scan of Z on [-t_max, t_max] (grid step at most
// 0.25 pi / log(q(|t|+3))), each bracket refined to |error| <= 1e-9.
// t_max <= 100.  If the count residual exceeds 2 the scan is repeated once
// with the grid halved; a persisting residual sets count_warning.
ZeroSet find_zeros(const characters::DirichletCharacter& chi, double t_max);

// Zero sets for the whole non-principal family, indexed by j-1.  The
// parallel version distributes characters over threads; per-character work
// is identical to the serial reference.
std::vector<ZeroSet> find_zeros_family(std::uint32_t q, double t_max);
std::vector<ZeroSet> find_zeros_family_serial(std::uint32_t q, double t_max);

}  // namespace ratioslab::lfunc
