// Timing harness: OpenMP kernels vs their serial reference implementations.
// Prints wall time for each and the agreement between the two results.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <string>

#include "ratioslab/arith.hpp"
#include "ratioslab/characters.hpp"
#include "ratioslab/density.hpp"
#include "ratioslab/lfunc.hpp"
#include "ratioslab/parallel.hpp"
#include "ratioslab/ratios.hpp"
#include "ratioslab/testfn.hpp"

namespace rl = ratioslab;

namespace {

template <typename F>
auto timed(const std::string& label, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto result = f();
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::cout << "  " << label << ": " << ms << " ms\n";
  return result;
}

}  // namespace

int main() {
  std::cout << "threads available: " << rl::parallel::max_jobs() << "\n";

  {
    std::cout << "family functional-equation data, q=1009\n";
    const auto par = timed("parallel", [] {
      return rl::characters::family_functional_equation_data(1009);
    });
    const auto ser = timed("serial  ", [] {
      return rl::characters::family_functional_equation_data_serial(1009);
    });
    double worst = 0;
    for (std::size_t i = 0; i < par.size(); ++i)
      worst = std::max(worst, std::abs(par[i].sign - ser[i].sign));
    std::cout << "  max |sign difference| = " << worst << "\n";
  }

  {
    std::cout << "prime triple sum, q=10007, spline4 sigma=1.5\n";
    const auto tf = rl::testfn::make_by_name("spline4", 1.5);
    const double xmax = std::pow(10007 / 3.141592653589793, 1.5);
    const auto sv = rl::arith::sieve(static_cast<std::uint64_t>(xmax) + 2);
    const auto par =
        timed("parallel", [&] { return rl::density::prime_sum_term(tf, 10007, sv); });
    const auto ser = timed("serial  ",
                           [&] { return rl::density::prime_sum_term_serial(tf, 10007, sv); });
    std::cout << "  |S_parallel - S_serial| = " << std::abs(par.S - ser.S) << "\n";
  }

  {
    std::cout << "brute-force ratio sum, q=503, alpha=gamma=0.25\n";
    const auto par =
        timed("parallel", [] { return rl::ratios::brute_force_R(503, 0.25, 0.25); });
    const auto ser =
        timed("serial  ", [] { return rl::ratios::brute_force_R_serial(503, 0.25, 0.25); });
    std::cout << "  |difference| = " << std::abs(par - ser) << "\n";
  }

  {
    std::cout << "zero scan, q=11, t_max=15\n";
    const auto par = timed("parallel", [] { return rl::lfunc::find_zeros_family(11, 15.0); });
    const auto ser =
        timed("serial  ", [] { return rl::lfunc::find_zeros_family_serial(11, 15.0); });
    double worst = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < par.size(); ++i) {
      n += par[i].ordinates.size();
      if (par[i].ordinates.size() != ser[i].ordinates.size()) {
        worst = 1e99;
        break;
      }
      for (std::size_t k = 0; k < par[i].ordinates.size(); ++k)
        worst = std::max(worst, std::abs(par[i].ordinates[k] - ser[i].ordinates[k]));
    }
    std::cout << "  zeros=" << n << "  max ordinate difference = " << worst << "\n";
  }

  return 0;
}
