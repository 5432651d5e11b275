#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ratioslab/arith.hpp"
#include "ratioslab/lfunc.hpp"
#include "ratioslab/testfn.hpp"

namespace ratioslab::density {

// Decomposition of the normalized prime triple sum
//   S = (1/((q-2) log(q/pi))) sum_p sum_k [sum_chi chi(p)^k] log p p^{-k/2}
//         phihat(log p^k / log(q/pi)),
// split by the orthogonality branches: S1 is the -1 branch (signed), S2 the
// (q-1)-weighted branch over p^k = 1 (mod q) hits (signed).  B1/B2/B3 are the
// nonnegative bounding sums sum p^{-k/2} over those hits, split by k = 1
// (p = 1 mod q), k = 2 (p = +-1 mod q), and k >= 3.
struct SDecomposition {
  double S = 0, S1 = 0, S2 = 0;
  double B1 = 0, B2 = 0, B3 = 0;
  double sigma = 0;
  std::uint32_t q = 0;
};

enum class Method { empirical, explicit_formula, ratios };

std::string method_name(Method m);

// One computed density value.  For the explicit formula,
// total = main_term + gamma_term - prime_term with prime_term = 2S; the
// ratios prediction has prime_term = 0; the empirical method reports the
// zero sum in total and its tail bound in truncation_bound.
struct DensityReport {
  std::uint32_t q = 0;
  double sigma = 0;
  std::string phi;
  Method method = Method::explicit_formula;
  double main_term = 0;
  double gamma_term = 0;
  double prime_term = 0;
  double total = 0;
  double truncation_bound = 0;
};

// I_c = int phi(tau) Re psi(c + i pi tau / log(q/pi)) dtau evaluated through
// the Poisson-kernel identity (single smooth integral), abs tol 1e-9.
// Exposed as a building block for tests; c > 0.
double digamma_phi_integral(const testfn::TestFunction& tf, double c, double beta);

// Normalized Gamma-factor term
//   ((q-3)/2 I_{1/4} + (q-1)/2 I_{3/4}) / ((q-2) log(q/pi)),
// the parities counted once per character ((q-3)/2 even, (q-1)/2 odd).
double gamma_integral_term(const testfn::TestFunction& tf, std::uint32_t q);

// Prime triple sum by the orthogonality closed form (never iterating over
// characters).  The sieve must cover (q/pi)^sigma.  Deterministic chunked
// reduction; prime_sum_term_serial is the naive reference.
SDecomposition prime_sum_term(const testfn::TestFunction& tf, std::uint32_t q,
                              const arith::SieveTable& sv);
SDecomposition prime_sum_term_serial(const testfn::TestFunction& tf, std::uint32_t q,
                                     const arith::SieveTable& sv);

// Averaged zero sum (1/(q-2)) sum_chi sum_gamma phi(gamma log(q/pi)/(2 pi)).
// zeros must hold all q-2 non-principal characters at a common t_max
// (coverage violations throw argument_error).  truncation_bound is the
// envelope tail integral against the zero-count density plus count slack.
DensityReport empirical_density(const testfn::TestFunction& tf, std::uint32_t q,
                                const std::vector<lfunc::ZeroSet>& zeros);

// Explicit-formula density phihat(0) + gamma_term - 2S.
DensityReport explicit_formula_density(const testfn::TestFunction& tf, std::uint32_t q,
                                       const arith::SieveTable& sv);

// Katz-Sarnak symmetry-type main terms int phihat What for the five classical
// ensembles (delta_0 plus the indicator/constant parts listed in the model).
enum class Symmetry { unitary, symplectic, orthogonal, so_even, so_odd };

double katz_sarnak_main_term(const testfn::TestFunction& tf, Symmetry type);

}  // namespace ratioslab::density
