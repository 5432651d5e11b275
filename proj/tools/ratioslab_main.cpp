// ratioslab command-line interface: zero scans, density comparisons, ratio
// predictions, decay-exponent sweeps and fits, and a quick selftest.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "ratioslab/arith.hpp"
#include "ratioslab/characters.hpp"
#include "ratioslab/density.hpp"
#include "ratioslab/errors.hpp"
#include "ratioslab/harness.hpp"
#include "ratioslab/lfunc.hpp"
#include "ratioslab/parallel.hpp"
#include "ratioslab/ratios.hpp"
#include "ratioslab/special.hpp"
#include "ratioslab/testfn.hpp"

namespace rl = ratioslab;
using cplx = std::complex<double>;
using nlohmann::json;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, p);
}

std::string fmt_c(cplx z) {
  std::string s = fmt(z.real());
  s += z.imag() < 0 ? " - " : " + ";
  s += fmt(std::abs(z.imag()));
  s += "i";
  return s;
}

double parse_real_token(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw rl::argument_error("cannot parse number \"" + std::string(tok) + "\"");
  return v;
}

// Accepts "0.25", "0.1+0.2i", "-1e-3-2i", "0.3i", "i", "-i".
cplx parse_complex(const std::string& raw) {
  std::string s;
  for (const char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw rl::argument_error("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') return {parse_real_token(s), 0.0};
  s.pop_back();
  // Split at the last +/- that is not an exponent sign and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.empty() || s == "+") return {0.0, 1.0};
    if (s == "-") return {0.0, -1.0};
    return {0.0, parse_real_token(s)};
  }
  const std::string re = s.substr(0, split);
  std::string im = s.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return {parse_real_token(re), parse_real_token(im)};
}

std::string report_csv_header() {
  return "q,sigma,phi,method,main,gamma,prime,total,trunc_bound";
}

std::string report_to_csv(const rl::density::DensityReport& r) {
  std::string s;
  s += std::to_string(r.q);
  s += ',';
  s += fmt(r.sigma);
  s += ',';
  s += r.phi;
  s += ',';
  s += rl::density::method_name(r.method);
  s += ',';
  s += fmt(r.main_term);
  s += ',';
  s += fmt(r.gamma_term);
  s += ',';
  s += fmt(r.prime_term);
  s += ',';
  s += fmt(r.total);
  s += ',';
  s += fmt(r.truncation_bound);
  return s;
}

std::string report_to_jsonl(const rl::density::DensityReport& r) {
  return json{{"q", r.q},
              {"sigma", r.sigma},
              {"phi", r.phi},
              {"method", rl::density::method_name(r.method)},
              {"main", r.main_term},
              {"gamma", r.gamma_term},
              {"prime", r.prime_term},
              {"total", r.total},
              {"trunc_bound", r.truncation_bound}}
      .dump();
}

void print_fit(std::ostream& os, const std::string& label, double sigma,
               const rl::harness::FitResult& f) {
  os << "sigma=" << fmt(sigma) << " " << label << ": slope=" << fmt(f.slope)
     << " intercept=" << fmt(f.intercept) << " stderr=" << fmt(f.stderr_slope)
     << " n=" << f.n_used << " dropped=" << f.n_dropped << "\n";
}

// ---------------------------------------------------------------- zeros ----

struct ZerosOpts {
  std::uint32_t q = 0;
  double t_max = 30.0;
  std::string cache_dir;
  std::string out;
  std::string format = "csv";
  int jobs = 0;
};

int cmd_zeros(const ZerosOpts& o) {
  if (o.jobs > 0) rl::parallel::set_jobs(o.jobs);
  rl::harness::CacheStats stats;
  const std::vector<rl::lfunc::ZeroSet> sets =
      rl::harness::cache_zeros(o.q, o.t_max, o.cache_dir, &stats);
  std::size_t total = 0;
  int warned = 0;
  for (const rl::lfunc::ZeroSet& zs : sets) {
    total += zs.ordinates.size();
    if (zs.count_warning) {
      ++warned;
      std::cerr << "warning: q=" << zs.q << " j=" << zs.j
                << ": zero count residual " << fmt(zs.count_residual)
                << " persists after grid refinement\n";
    }
  }
  std::cout << "q=" << o.q << " characters=" << sets.size() << " t_max=" << fmt(o.t_max)
            << " zeros=" << total << " loaded=" << stats.loaded
            << " computed=" << stats.computed
            << " corrupt_skipped=" << stats.skipped_corrupt
            << " count_warnings=" << warned << "\n";
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::trunc);
    if (!out) throw rl::resource_error("cannot open " + o.out);
    if (o.format == "csv") {
      out << "q,j,ordinate,count_residual\n";
      for (const rl::lfunc::ZeroSet& zs : sets)
        for (const double t : zs.ordinates)
          out << zs.q << ',' << zs.j << ',' << fmt(t) << ',' << fmt(zs.count_residual)
              << "\n";
    } else {
      for (const rl::lfunc::ZeroSet& zs : sets)
        for (const double t : zs.ordinates)
          out << json{{"q", zs.q},
                      {"j", zs.j},
                      {"ordinate", t},
                      {"count_residual", zs.count_residual}}
                     .dump()
              << "\n";
    }
  }
  return 0;
}

// -------------------------------------------------------------- density ----

struct DensityOpts {
  std::uint32_t q = 0;
  double sigma = 1.0;
  std::string phi = "fejer";
  std::vector<std::string> methods{"explicit", "ratios"};
  double t_max = 0;
  std::string cache_dir;
  std::string out;
  std::string format = "csv";
  int jobs = 0;
};

int cmd_density(const DensityOpts& o) {
  if (o.jobs > 0) rl::parallel::set_jobs(o.jobs);
  const rl::testfn::TestFunction tf = rl::testfn::make_by_name(o.phi, o.sigma);
  if (o.q < 3 || !rl::arith::is_prime_u64(o.q))
    throw rl::argument_error("density: q must be an odd prime, got " + std::to_string(o.q));

  rl::harness::ComparisonRow row;
  row.q = o.q;
  row.sigma = tf.sigma;
  row.phi = tf.name;
  row.sdec.q = o.q;
  row.sdec.sigma = tf.sigma;
  std::vector<rl::density::DensityReport> reports;

  for (const std::string& m : o.methods) {
    try {
      if (m == "empirical") {
        const double t_eff = o.t_max > 0 ? o.t_max : rl::harness::default_t_max(tf, o.q);
        const auto zeros = rl::harness::cache_zeros(o.q, t_eff, o.cache_dir);
        const auto rep = rl::density::empirical_density(tf, o.q, zeros);
        row.empirical = rep.total;
        row.trunc_bound = rep.truncation_bound;
        reports.push_back(rep);
      } else if (m == "explicit") {
        const double xmax = std::pow(o.q / kPi, tf.sigma);
        const auto limit = static_cast<std::uint64_t>(std::ceil(xmax)) + 2;
        const rl::arith::SieveTable sv = rl::arith::sieve(std::max<std::uint64_t>(3, limit));
        const auto rep = rl::density::explicit_formula_density(tf, o.q, sv);
        row.explicit_v = rep.total;
        row.sdec = rl::density::prime_sum_term(tf, o.q, sv);
        reports.push_back(rep);
      } else if (m == "ratios") {
        const auto rep = rl::ratios::ratios_density_prediction(tf, o.q);
        row.ratios_v = rep.total;
        reports.push_back(rep);
      } else {
        throw rl::argument_error("density: unknown method \"" + m + "\"");
      }
    } catch (const rl::numeric_error& e) {
      throw rl::numeric_error("q=" + std::to_string(o.q) + " method=" + m + ": " + e.what());
    } catch (const rl::resource_error& e) {
      throw rl::resource_error("q=" + std::to_string(o.q) + " method=" + m + ": " +
                               e.what());
    }
  }
  row.d_emp_exp = row.empirical - row.explicit_v;
  row.d_exp_ratios = row.explicit_v - row.ratios_v;

  if (o.format == "csv") {
    std::cout << report_csv_header() << "\n";
    for (const auto& rep : reports) std::cout << report_to_csv(rep) << "\n";
    std::cout << "\n" << rl::harness::row_csv_header() << "\n"
              << rl::harness::row_to_csv(row) << "\n";
  } else {
    for (const auto& rep : reports) std::cout << report_to_jsonl(rep) << "\n";
    std::cout << rl::harness::row_to_jsonl(row) << "\n";
  }

  if (!o.out.empty()) {
    const bool fresh =
        !std::filesystem::exists(o.out) || std::filesystem::file_size(o.out) == 0;
    std::ofstream out(o.out, std::ios::app);
    if (!out) throw rl::resource_error("cannot open " + o.out);
    if (o.format == "csv") {
      if (fresh) out << rl::harness::row_csv_header() << "\n";
      out << rl::harness::row_to_csv(row) << "\n";
    } else {
      out << rl::harness::row_to_jsonl(row) << "\n";
    }
  }
  return 0;
}

// --------------------------------------------------------------- ratios ----

struct RatiosOpts {
  std::uint32_t q = 0;
  std::string alpha = "0.25";
  std::string gamma = "0.25";
  std::string variant = "standard";
  bool compare = false;
  bool derivative = false;
  int jobs = 0;
};

int cmd_ratios(const RatiosOpts& o) {
  if (o.jobs > 0) rl::parallel::set_jobs(o.jobs);
  rl::ratios::RatiosParams p;
  p.q = o.q;
  p.alpha = parse_complex(o.alpha);
  p.gamma = parse_complex(o.gamma);
  if (o.variant == "standard")
    p.variant = rl::ratios::Variant::standard;
  else if (o.variant == "weak")
    p.variant = rl::ratios::Variant::weak;
  else
    throw rl::argument_error("ratios: variant must be standard or weak");

  if (o.derivative && o.compare)
    throw rl::argument_error("ratios: --compare applies to the value, not --dr");

  const rl::ratios::RPrediction r = o.derivative ? rl::ratios::ratios_prediction_dR(p)
                                                 : rl::ratios::ratios_prediction_R(p);
  std::cout << (o.derivative ? "dR/dalpha prediction" : "R prediction") << " (" << o.variant
            << ") at q=" << o.q << " alpha=" << fmt_c(p.alpha) << " gamma=" << fmt_c(p.gamma)
            << "\n"
            << "  h_sum      = " << fmt_c(r.h_sum_term) << "\n"
            << "  bracket    = " << fmt_c(r.bracket_term) << "\n"
            << "  zeta_ratio = " << fmt_c(r.zeta_ratio_term) << "\n"
            << "  s2_zeta    = " << fmt_c(r.s2_zeta_term) << "\n"
            << "  s3_zeta    = " << fmt_c(r.s3_zeta_term) << "\n"
            << "  value      = " << fmt_c(r.value) << "\n";
  if (o.compare) {
    const cplx brute = rl::ratios::brute_force_R(o.q, p.alpha, p.gamma);
    const cplx diff = r.value - brute;
    std::cout << "  brute      = " << fmt_c(brute) << "\n"
              << "  diff       = " << fmt_c(diff) << "\n"
              << "  |diff|     = " << fmt(std::abs(diff)) << "\n"
              << "  |diff|/q   = " << fmt(std::abs(diff) / o.q) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- sweep ----

struct SweepOpts {
  rl::harness::SweepConfig cfg;
  std::string variant = "standard";
};

int cmd_sweep(SweepOpts& o) {
  if (o.variant == "standard")
    o.cfg.variant = rl::ratios::Variant::standard;
  else if (o.variant == "weak")
    o.cfg.variant = rl::ratios::Variant::weak;
  else
    throw rl::argument_error("sweep: variant must be standard or weak");
  const rl::harness::SweepResult res = rl::harness::run_sweep(o.cfg);
  std::cout << "rows=" << res.rows.size() << " out=" << o.cfg.out_path << "\n";
  for (const auto& [sigma, f] : res.fit_S) print_fit(std::cout, "|S|", sigma, f);
  for (const auto& [sigma, f] : res.fit_gap)
    print_fit(std::cout, "|explicit-ratios|", sigma, f);
  return 0;
}

// ------------------------------------------------------------------ fit ----

struct FitOpts {
  std::string in;
  std::string format;  // "" = by extension
  std::string quantity = "both";  // S | gap | both
};

int cmd_fit(const FitOpts& o) {
  std::string format = o.format;
  if (format.empty())
    format = o.in.size() >= 6 && o.in.substr(o.in.size() - 6) == ".jsonl" ? "jsonl" : "csv";
  if (format != "csv" && format != "jsonl")
    throw rl::argument_error("fit: format must be csv or jsonl");
  if (o.quantity != "S" && o.quantity != "gap" && o.quantity != "both")
    throw rl::argument_error("fit: quantity must be S, gap or both");

  std::ifstream in(o.in);
  if (!in) throw rl::argument_error("fit: cannot open " + o.in);
  std::map<double, std::vector<rl::harness::ComparisonRow>> by_sigma;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (format == "csv" && line == rl::harness::row_csv_header()) continue;
    const auto row = format == "csv" ? rl::harness::row_from_csv(line)
                                     : rl::harness::row_from_jsonl(line);
    if (!row) {
      std::cerr << "warning: " << o.in << ":" << lineno << ": skipping malformed row\n";
      continue;
    }
    by_sigma[row->sigma].push_back(*row);
  }
  if (by_sigma.empty()) throw rl::argument_error("fit: no rows in " + o.in);

  bool any = false;
  for (const auto& [sigma, rows] : by_sigma) {
    std::vector<double> qs, s_mag, gap_mag;
    for (const auto& row : rows) {
      qs.push_back(row.q);
      s_mag.push_back(std::abs(row.sdec.S));
      gap_mag.push_back(std::abs(row.d_exp_ratios));
    }
    if (o.quantity != "gap") {
      try {
        print_fit(std::cout, "|S|", sigma, rl::harness::fit_decay_exponent(qs, s_mag));
        any = true;
      } catch (const rl::argument_error& e) {
        std::cerr << "note: sigma=" << fmt(sigma) << ": no |S| fit (" << e.what() << ")\n";
      }
    }
    if (o.quantity != "S") {
      try {
        print_fit(std::cout, "|explicit-ratios|", sigma,
                  rl::harness::fit_decay_exponent(qs, gap_mag));
        any = true;
      } catch (const rl::argument_error& e) {
        std::cerr << "note: sigma=" << fmt(sigma) << ": no gap fit (" << e.what() << ")\n";
      }
    }
  }
  if (!any) throw rl::argument_error("fit: no quantity had two usable points");
  return 0;
}

// ------------------------------------------------------------- selftest ----

struct SelfTest {
  bool ok = true;

  void check(bool pass, const std::string& name, const std::string& detail) {
    if (pass) {
      std::cout << "[ok] " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    } else {
      std::cout << "[FAIL] " << name << (detail.empty() ? "" : ": " + detail) << "\n";
      ok = false;
    }
  }
};

int cmd_selftest() {
  SelfTest t;

  {  // completed-Lambda functional equation across the q=7 family
    const auto chars = rl::characters::all_characters(7);
    const cplx s(0.3, 1.7);
    double worst = 0;
    for (std::uint32_t j = 1; j <= 5; ++j) {
      const auto& chi = chars[j];
      const auto& chibar = chars[(7 - 1 - j) % 6];
      const auto fed = rl::characters::functional_equation_data(chi);
      const cplx lhs = rl::lfunc::completed_lambda(s, chi);
      const cplx rhs = fed.sign * rl::lfunc::completed_lambda(1.0 - s, chibar);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    t.check(worst <= 1e-8, "functional equation q=7", "residual " + fmt(worst));
  }

  {  // closed-form character sum vs explicit family iteration, q=31
    double worst = 0;
    for (const std::uint64_t r : {1ull, 5ull, 30ull, 32ull})
      worst = std::max(worst, std::abs(rl::characters::family_char_sum(31, r) -
                                       rl::characters::family_char_sum_brute(31, r)));
    t.check(worst <= 1e-9, "character sum closed form q=31", "residual " + fmt(worst));
  }

  {  // symmetry-type main terms for the Fejer kernel at sigma=1
    const auto tf = rl::testfn::make_fejer(1.0);
    using rl::density::Symmetry;
    const double u = rl::density::katz_sarnak_main_term(tf, Symmetry::unitary);
    const double sp = rl::density::katz_sarnak_main_term(tf, Symmetry::symplectic);
    const double so_even = rl::density::katz_sarnak_main_term(tf, Symmetry::so_even);
    const double worst = std::max({std::abs(u - 1.0), std::abs(sp - 0.5),
                                   std::abs(so_even - 1.5), std::abs((so_even - sp) - 1.0)});
    t.check(worst <= 1e-10, "symmetry main terms fejer sigma=1", "residual " + fmt(worst));
  }

  {  // analytic ratio derivative vs central finite difference, q=31
    rl::ratios::RatiosParams p;
    p.q = 31;
    p.alpha = p.gamma = 0.25;
    const cplx d = rl::ratios::ratios_prediction_dR(p).value;
    const double h = 1e-4;
    rl::ratios::RatiosParams hi = p, lo = p;
    hi.alpha = p.alpha + h;
    lo.alpha = p.alpha - h;
    const cplx fd = (rl::ratios::ratios_prediction_R(hi).value -
                     rl::ratios::ratios_prediction_R(lo).value) /
                    (2.0 * h);
    const double rel = std::abs(d - fd) / std::abs(d);
    t.check(rel <= 1e-5, "ratio derivative vs finite difference q=31", "rel " + fmt(rel));
  }

  {  // deterministic parallel prime sum vs serial reference, q=101 sigma=1.5
    const auto tf = rl::testfn::make_by_name("spline4", 1.5);
    const auto sv = rl::arith::sieve(256);
    const auto a = rl::density::prime_sum_term(tf, 101, sv);
    const auto b = rl::density::prime_sum_term_serial(tf, 101, sv);
    const double diff = std::abs(a.S - b.S);
    t.check(diff <= 1e-13 * std::max(1.0, std::abs(b.S)),
            "prime sum parallel vs serial q=101", "diff " + fmt(diff));
  }

  {  // zero scan sanity, q=11 up to height 20
    const auto sets = rl::lfunc::find_zeros_family(11, 20.0);
    std::size_t total = 0;
    double worst_res = 0;
    bool ascending = true;
    for (const auto& zs : sets) {
      total += zs.ordinates.size();
      worst_res = std::max(worst_res, zs.count_residual);
      for (std::size_t i = 1; i < zs.ordinates.size(); ++i)
        ascending = ascending && zs.ordinates[i - 1] < zs.ordinates[i];
    }
    t.check(total > 0 && ascending && worst_res <= 2.0, "zero scan q=11 t_max=20",
            std::to_string(total) + " zeros, worst count residual " + fmt(worst_res));
  }

  std::cout << (t.ok ? "selftest passed" : "selftest FAILED") << "\n";
  return t.ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ratioslab: 1-level density of non-principal Dirichlet L-functions "
               "of prime modulus, three ways (zero counts, explicit formula, "
               "averaged-ratio prediction)"};
  app.require_subcommand(1);

  ZerosOpts zo;
  CLI::App* zeros = app.add_subcommand("zeros", "Locate critical-line zeros for the family");
  zeros->add_option("--q", zo.q, "prime modulus")->required();
  zeros->add_option("--tmax", zo.t_max, "scan height (default 30)");
  zeros->add_option("--cache", zo.cache_dir, "cache directory");
  zeros->add_option("--out", zo.out, "write per-zero records to this path");
  zeros->add_option("--format", zo.format, "csv|jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  zeros->add_option("--jobs", zo.jobs, "thread count");

  DensityOpts dopt;
  CLI::App* dens = app.add_subcommand("density", "Compare 1-level density computations");
  dens->add_option("--q", dopt.q, "prime modulus")->required();
  dens->add_option("--sigma", dopt.sigma, "support radius of phihat (default 1)");
  dens->add_option("--phi", dopt.phi, "test function: fejer|spline2|spline4");
  dens->add_option("--method", dopt.methods, "empirical|explicit|ratios (repeatable)");
  dens->add_option("--tmax", dopt.t_max, "zero height for empirical (0 = policy default)");
  dens->add_option("--cache", dopt.cache_dir, "cache directory");
  dens->add_option("--out", dopt.out, "append the comparison row to this path");
  dens->add_option("--format", dopt.format, "csv|jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  dens->add_option("--jobs", dopt.jobs, "thread count");

  RatiosOpts ro;
  CLI::App* rat = app.add_subcommand("ratios", "Averaged-ratio prediction R(alpha, gamma)");
  rat->add_option("--q", ro.q, "prime modulus")->required();
  rat->add_option("--alpha", ro.alpha, "complex shift, e.g. 0.1+0.2i (default 0.25)");
  rat->add_option("--gamma", ro.gamma, "complex shift (default 0.25)");
  rat->add_option("--variant", ro.variant, "standard|weak")
      ->check(CLI::IsMember({"standard", "weak"}));
  rat->add_flag("--compare", ro.compare, "also evaluate the brute-force family sum");
  rat->add_flag("--dr", ro.derivative, "print d/dalpha at alpha = gamma instead");
  rat->add_option("--jobs", ro.jobs, "thread count");

  SweepOpts so;
  CLI::App* sweep = app.add_subcommand("sweep", "Density comparisons over a prime grid");
  sweep->add_option("--qmin", so.cfg.qmin, "smallest modulus")->required();
  sweep->add_option("--qmax", so.cfg.qmax, "largest modulus")->required();
  sweep->add_option("--count", so.cfg.count, "geometric grid size")->required();
  sweep->add_option("--sigma", so.cfg.sigmas, "support radii (repeatable; default 1)");
  sweep->add_option("--phi", so.cfg.phi, "test function name");
  sweep->add_option("--method", so.cfg.methods,
                    "empirical|explicit|ratios (repeatable; default explicit ratios)");
  sweep->add_option("--variant", so.variant, "standard|weak")
      ->check(CLI::IsMember({"standard", "weak"}));
  sweep->add_option("--tmax", so.cfg.t_max, "zero height for empirical (0 = policy)");
  sweep->add_option("--cache", so.cfg.cache_dir, "cache directory");
  sweep->add_option("--out", so.cfg.out_path, "output table path")->required();
  sweep->add_option("--format", so.cfg.format, "csv|jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sweep->add_option("--jobs", so.cfg.jobs, "thread count");
  sweep->add_flag("--emit-gnuplot", so.cfg.emit_gnuplot, "write a plot script next to --out");

  FitOpts fo;
  CLI::App* fit = app.add_subcommand("fit", "Decay-exponent fit over a sweep table");
  fit->add_option("--in", fo.in, "sweep table path")->required();
  fit->add_option("--format", fo.format, "csv|jsonl (default: by extension)")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  fit->add_option("--quantity", fo.quantity, "S|gap|both")
      ->check(CLI::IsMember({"S", "gap", "both"}));

  CLI::App* self = app.add_subcommand("selftest", "Quick internal consistency checks");
  (void)self;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*zeros) return cmd_zeros(zo);
    if (*dens) return cmd_density(dopt);
    if (*rat) return cmd_ratios(ro);
    if (*sweep) return cmd_sweep(so);
    if (*fit) return cmd_fit(fo);
    if (*self) return cmd_selftest();
  } catch (const rl::argument_error& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const rl::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const rl::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
