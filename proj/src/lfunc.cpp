#include "ratioslab/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ratioslab/errors.hpp"
#include "ratioslab/parallel.hpp"
#include "ratioslab/special.hpp"

namespace ratioslab::lfunc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPiE = 17.079468445347134130927529818843;  // 2 pi e

void check_strip(cplx s) {
  if (s.real() < -1.0 || s.real() > 3.0 || std::abs(s.imag()) > 100.0)
    throw argument_error("l_value: s outside supported strip");
}

std::vector<cplx> hurwitz_row(cplx s, std::uint32_t q) {
  std::vector<cplx> row(q - 1);
  // At s = 1 each zeta(s, a/q) has the pole 1/(s-1), but weighting by any
  // non-principal character cancels the poles (sum chi(a) = 0), leaving the
  // Laurent finite part -psi(a/q).  Every consumer of the row pairs it with
  // a non-principal character, so the substitution keeps L(s, chi) finite.
  if (std::abs(s - 1.0) <= 1e-10) {
    for (std::uint32_t a = 1; a < q; ++a)
      row[a - 1] = -special::digamma(static_cast<double>(a) / q);
    return row;
  }
  for (std::uint32_t a = 1; a < q; ++a)
    row[a - 1] = special::hurwitz_zeta(s, static_cast<double>(a) / q);
  return row;
}

cplx l_from_row(cplx s, const characters::DirichletCharacter& chi,
                const std::vector<cplx>& row) {
  const std::uint32_t q = chi.q();
  cplx sum = 0.0;
  for (std::uint32_t a = 1; a < q; ++a) sum += chi(a) * row[a - 1];
  return std::exp(-s * std::log(static_cast<double>(q))) * sum;
}

cplx gamma_prefactor(cplx s, int parity, std::uint32_t q) {
  const cplx w = (s + static_cast<double>(parity)) / 2.0;
  const double log_pi_over_q = std::log(kPi / q);
  return std::exp(-w * log_pi_over_q + special::log_gamma(w));
}

cplx lambda_from_row(cplx s, const characters::DirichletCharacter& chi,
                     const std::vector<cplx>& row, cplx* pref_out = nullptr) {
  const cplx pref = gamma_prefactor(s, chi.parity(), chi.q());
  if (pref_out) *pref_out = pref;
  return pref * l_from_row(s, chi, row);
}

double hardy_from_row(double t, const characters::DirichletCharacter& chi,
                      const characters::FunctionalEquationData& fed,
                      const std::vector<cplx>& row) {
  const cplx s(0.5, t);
  cplx pref;
  const cplx lam = lambda_from_row(s, chi, row, &pref);
  const cplx v = lam / std::sqrt(fed.sign);
  if (std::abs(v.imag()) > 1e-8 * (std::abs(v) + std::abs(pref)))
    throw numeric_error("hardy_z: rotated Lambda not real at q=" +
                        std::to_string(chi.q()) + " j=" + std::to_string(chi.j()) +
                        " t=" + std::to_string(t));
  return v.real();
}

double hardy_eval(double t, const characters::DirichletCharacter& chi,
                  const characters::FunctionalEquationData& fed) {
  const std::vector<cplx> row = hurwitz_row(cplx(0.5, t), chi.q());
  return hardy_from_row(t, chi, fed, row);
}

// Brent root refinement on a sign-change bracket; |result - root| <= 1e-9.
template <class F>
double brent_zero(F&& f, double a, double b, double fa, double fb) {
  constexpr double kTol = 1e-10;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= kTol || fb == 0.0) return b;
    if (std::abs(e) < kTol || std::abs(fa) <= std::abs(fb)) {
      d = m;
      e = m;
    } else {
      double p, qd;
      const double sratio = fb / fa;
      if (a == c) {
        p = 2.0 * m * sratio;
        qd = 1.0 - sratio;
      } else {
        const double qa = fa / fc, rb = fb / fc;
        p = sratio * (2.0 * m * qa * (qa - rb) - (b - a) * (rb - 1.0));
        qd = (qa - 1.0) * (rb - 1.0) * (sratio - 1.0);
      }
      if (p > 0.0)
        qd = -qd;
      else
        p = -p;
      if (2.0 * p < std::min(3.0 * m * qd - std::abs(kTol * qd), std::abs(e * qd))) {
        e = d;
        d = p / qd;
      } else {
        d = m;
        e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > kTol) ? d : (m > 0 ? kTol : -kTol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
  }
  return b;
}

struct SubsetEntry {
  const characters::DirichletCharacter* chi;
  characters::FunctionalEquationData fed;
};

std::vector<double> build_grid(std::uint32_t q, double t_max, double factor) {
  std::vector<double> ts;
  double t = -t_max;
  while (t < t_max) {
    ts.push_back(t);
    t += factor * kPi / std::log(q * (std::abs(t) + 3.0));
  }
  ts.push_back(t_max);
  return ts;
}

std::vector<ZeroSet> scan_subset(std::uint32_t q, const std::vector<SubsetEntry>& subset,
                                 double t_max, double factor, bool parallel) {
  const std::vector<double> ts = build_grid(q, t_max, factor);
  const std::size_t npts = ts.size();
  const std::size_t nsub = subset.size();

  // Hardy Z values on the grid; one Hurwitz row per point shared by all
  // requested characters.
  std::vector<std::vector<double>> z(npts, std::vector<double>(nsub));
  auto fill_point = [&](std::size_t i) {
    const std::vector<cplx> row = hurwitz_row(cplx(0.5, ts[i]), q);
    for (std::size_t k = 0; k < nsub; ++k)
      z[i][k] = hardy_from_row(ts[i], *subset[k].chi, subset[k].fed, row);
  };
  if (parallel) {
    parallel::parallel_for(npts, fill_point);
  } else {
    for (std::size_t i = 0; i < npts; ++i) fill_point(i);
  }

  // Collect exact grid hits and sign-change brackets per character.
  struct Bracket {
    std::size_t k;      // subset index
    double a, b;        // bracket (a == b means exact grid hit)
    double fa, fb;
    double root = 0.0;  // filled by refinement
  };
  std::vector<Bracket> brackets;
  std::vector<std::vector<std::size_t>> order(nsub);  // bracket ids per char
  for (std::size_t k = 0; k < nsub; ++k) {
    double prev = z[0][k];
    double prev_t = ts[0];
    bool last_exact = false;
    if (prev == 0.0) {
      brackets.push_back({k, ts[0], ts[0], 0.0, 0.0, ts[0]});
      order[k].push_back(brackets.size() - 1);
      last_exact = true;
    }
    for (std::size_t i = 1; i < npts; ++i) {
      const double cur = z[i][k];
      if (cur == 0.0) {
        brackets.push_back({k, ts[i], ts[i], 0.0, 0.0, ts[i]});
        order[k].push_back(brackets.size() - 1);
        last_exact = true;
        continue;
      }
      if (last_exact) {
        // The recorded grid hit accounts for the crossing.
        prev = cur;
        prev_t = ts[i];
        last_exact = false;
        continue;
      }
      if ((cur > 0) != (prev > 0)) {
        brackets.push_back({k, prev_t, ts[i], prev, cur, 0.0});
        order[k].push_back(brackets.size() - 1);
      }
      prev = cur;
      prev_t = ts[i];
    }
  }

  auto refine = [&](std::size_t bi) {
    Bracket& br = brackets[bi];
    if (br.a == br.b) return;  // exact hit
    const SubsetEntry& en = subset[br.k];
    br.root = brent_zero([&](double t) { return hardy_eval(t, *en.chi, en.fed); },
                         br.a, br.b, br.fa, br.fb);
  };
  if (parallel) {
    parallel::parallel_for(brackets.size(), refine);
  } else {
    for (std::size_t bi = 0; bi < brackets.size(); ++bi) refine(bi);
  }

  const double estimate = zero_count_estimate(q, t_max);
  std::vector<ZeroSet> out(nsub);
  for (std::size_t k = 0; k < nsub; ++k) {
    ZeroSet& zs = out[k];
    zs.q = q;
    zs.j = subset[k].chi->j();
    zs.g = subset[k].chi->g();
    zs.t_max = t_max;
    for (std::size_t bi : order[k]) {
      const double root = brackets[bi].root;
      if (zs.ordinates.empty() || root > zs.ordinates.back())
        zs.ordinates.push_back(root);
    }
    zs.count_residual =
        std::abs(static_cast<double>(zs.ordinates.size()) - estimate);
  }
  return out;
}

ZeroSet with_halving(const characters::DirichletCharacter& chi,
                     const characters::FunctionalEquationData& fed, double t_max,
                     ZeroSet first) {
  if (first.count_residual <= 2.0) return first;
  std::vector<SubsetEntry> one{{&chi, fed}};
  ZeroSet second = std::move(scan_subset(chi.q(), one, t_max, 0.125, false)[0]);
  second.refined = true;
  second.count_warning = second.count_residual > 2.0;
  return second;
}

std::vector<ZeroSet> family_impl(std::uint32_t q, double t_max, bool parallel) {
  const auto chars = characters::all_characters(q);
  const auto feds = parallel ? characters::family_functional_equation_data(q)
                             : characters::family_functional_equation_data_serial(q);
  std::vector<SubsetEntry> subset(q - 2);
  for (std::uint32_t j = 1; j + 1 < q; ++j) subset[j - 1] = {&chars[j], feds[j - 1]};
  std::vector<ZeroSet> out = scan_subset(q, subset, t_max, 0.25, parallel);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = with_halving(*subset[k].chi, subset[k].fed, t_max, std::move(out[k]));
  return out;
}

}  // namespace

cplx l_value(cplx s, const characters::DirichletCharacter& chi) {
  if (chi.principal())
    throw argument_error("l_value: principal character excluded");
  check_strip(s);
  return l_from_row(s, chi, hurwitz_row(s, chi.q()));
}

cplx completed_lambda(cplx s, const characters::DirichletCharacter& chi) {
  if (chi.principal())
    throw argument_error("completed_lambda: principal character excluded");
  check_strip(s);
  return lambda_from_row(s, chi, hurwitz_row(s, chi.q()));
}

double hardy_z(double t, const characters::DirichletCharacter& chi,
               const characters::FunctionalEquationData& fed) {
  if (chi.principal())
    throw argument_error("hardy_z: principal character excluded");
  check_strip(cplx(0.5, t));
  return hardy_eval(t, chi, fed);
}

double zero_count_estimate(std::uint32_t q, double t_max) {
  if (!(t_max > 2.0))
    throw argument_error("zero_count_estimate: t_max must exceed 2");
  return t_max / kPi * std::log(q * t_max / kTwoPiE);
}

ZeroSet find_zeros(const characters::DirichletCharacter& chi, double t_max) {
  if (chi.principal())
    throw argument_error("find_zeros: principal character excluded");
  if (!(t_max > 2.0) || t_max > 100.0)
    throw argument_error("find_zeros: t_max must lie in (2, 100]");
  const auto fed = characters::functional_equation_data(chi);
  std::vector<SubsetEntry> one{{&chi, fed}};
  ZeroSet first = std::move(scan_subset(chi.q(), one, t_max, 0.25, false)[0]);
  return with_halving(chi, fed, t_max, std::move(first));
}

std::vector<ZeroSet> find_zeros_family(std::uint32_t q, double t_max) {
  if (!(t_max > 2.0) || t_max > 100.0)
    throw argument_error("find_zeros_family: t_max must lie in (2, 100]");
  return family_impl(q, t_max, true);
}

std::vector<ZeroSet> find_zeros_family_serial(std::uint32_t q, double t_max) {
  if (!(t_max > 2.0) || t_max > 100.0)
    throw argument_error("find_zeros_family: t_max must lie in (2, 100]");
  return family_impl(q, t_max, false);
}

}  // namespace ratioslab::lfunc
