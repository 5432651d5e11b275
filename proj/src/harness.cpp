#include "ratioslab/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <system_error>
#include <tuple>

#include <nlohmann/json.hpp>

#include "ratioslab/characters.hpp"
#include "ratioslab/errors.hpp"
#include "ratioslab/parallel.hpp"

namespace ratioslab::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = 3.141592653589793238462643383279502884;

// 17 significant digits: enough to reproduce any double exactly on re-parse.
std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, p);
}

std::optional<double> parse_double(std::string_view tok) {
  if (tok == "nan") return kNaN;
  double v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::optional<std::uint32_t> parse_u32(std::string_view tok) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double json_double(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return kNaN;
  return it->get<double>();
}

}  // namespace

FitResult fit_decay_exponent(const std::vector<double>& q, const std::vector<double>& y) {
  if (q.size() != y.size())
    throw argument_error("fit_decay_exponent: q and y lengths differ");
  std::vector<double> xs, ys;
  int dropped = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double ay = std::abs(y[i]);
    if (!(q[i] > 0) || !std::isfinite(q[i]) || ay == 0.0 || !std::isfinite(ay)) {
      ++dropped;
      continue;
    }
    xs.push_back(std::log(q[i]));
    ys.push_back(std::log(ay));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 2)
    throw argument_error("fit_decay_exponent: fewer than two usable points (" +
                         std::to_string(dropped) + " dropped)");

  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw argument_error("fit_decay_exponent: all q identical");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_used = n;
  fit.n_dropped = dropped;
  if (n > 2) {
    double sse = 0;
    for (int i = 0; i < n; ++i) {
      const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
      sse += r * r;
    }
    fit.stderr_slope = std::sqrt(sse / (n - 2) / sxx);
  }
  return fit;
}

std::vector<std::uint32_t> select_primes_geometric(std::uint64_t qmin, std::uint64_t qmax,
                                                   int count) {
  if (qmin < 2 || qmax < qmin)
    throw argument_error("select_primes_geometric: need 2 <= qmin <= qmax");
  if (count < 1) throw argument_error("select_primes_geometric: count must be >= 1");
  std::vector<std::uint32_t> primes;
  const double lmin = std::log(static_cast<double>(qmin));
  const double lmax = std::log(static_cast<double>(qmax));
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? lmin : lmin + (lmax - lmin) * i / (count - 1);
    const auto target = static_cast<std::uint64_t>(std::ceil(std::exp(t) - 1e-9));
    const std::uint64_t p = arith::next_prime(std::max<std::uint64_t>(2, target));
    if (p > std::numeric_limits<std::uint32_t>::max())
      throw argument_error("select_primes_geometric: prime exceeds 32-bit range");
    if (primes.empty() || primes.back() != p) primes.push_back(static_cast<std::uint32_t>(p));
  }
  return primes;
}

double default_t_max(const testfn::TestFunction& tf, std::uint32_t q) {
  if (q < 3) throw argument_error("default_t_max: q must be >= 3");
  const double scale = std::abs(std::log(q / kPi));
  const double radius = tf.decay_radius(1e-6);
  return std::min(100.0, 2.0 * kPi * radius / scale);
}

std::string resolve_cache_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("RATIOSLAB_CACHE"); env && *env) return env;
  return ".ratioslab_cache";
}

namespace {

struct CacheGroup {
  std::vector<double> ordinates;
  bool have_summary = false;
  std::uint64_t count = 0;
  double residual = 0;
  bool refined = false;
  bool count_warning = false;
};

std::string zeros_path(const std::string& dir, std::uint32_t q, double t_max) {
  return dir + "/zeros_q" + std::to_string(q) + "_t" + fmt17(t_max) + ".jsonl";
}

void warn_corrupt(const std::string& path, std::size_t lineno, const std::string& why,
                  CacheStats* stats) {
  std::cerr << "warning: " << path << ":" << lineno << ": skipping cache line (" << why
            << ")\n";
  if (stats) ++stats->skipped_corrupt;
}

json ordinate_record(const lfunc::ZeroSet& zs, double ordinate) {
  return json{{"q", zs.q},          {"j", zs.j},
              {"g", zs.g},          {"ordinate", ordinate},
              {"t_max", zs.t_max},  {"residual", zs.count_residual}};
}

json summary_record(const lfunc::ZeroSet& zs) {
  return json{{"q", zs.q},
              {"j", zs.j},
              {"g", zs.g},
              {"t_max", zs.t_max},
              {"count", zs.ordinates.size()},
              {"residual", zs.count_residual},
              {"refined", zs.refined},
              {"count_warning", zs.count_warning}};
}

}  // namespace

std::vector<lfunc::ZeroSet> cache_zeros(std::uint32_t q, double t_max,
                                        const std::string& cache_dir, CacheStats* stats) {
  if (q < 3 || !arith::is_prime_u64(q))
    throw argument_error("cache_zeros: q must be an odd prime");
  const std::string dir = resolve_cache_dir(cache_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw resource_error("cache_zeros: cannot create cache dir " + dir);
  const std::string path = zeros_path(dir, q, t_max);
  const std::uint32_t g = arith::primitive_root(q);

  // Pass 1: collect per-character groups from whatever is on disk.  A group
  // counts as cached only when its summary record is present, its zero count
  // matches, and the ordinates are strictly ascending; anything else falls
  // through to recomputation.
  std::vector<CacheGroup> groups(q - 2);
  bool saw_corrupt = false;
  if (std::ifstream in(path); in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      json rec = json::parse(line, nullptr, false);
      if (rec.is_discarded() || !rec.is_object()) {
        warn_corrupt(path, lineno, "unparseable", stats);
        saw_corrupt = true;
        continue;
      }
      try {
        const auto rq = rec.at("q").get<std::uint64_t>();
        const auto rj = rec.at("j").get<std::uint64_t>();
        const auto rg = rec.at("g").get<std::uint64_t>();
        const double rt = rec.at("t_max").get<double>();
        if (rq != q || rj < 1 || rj > q - 2u || rg != g || rt != t_max) {
          warn_corrupt(path, lineno, "key mismatch", stats);
          saw_corrupt = true;
          continue;
        }
        CacheGroup& grp = groups[rj - 1];
        if (rec.contains("ordinate")) {
          grp.ordinates.push_back(rec.at("ordinate").get<double>());
        } else {
          grp.have_summary = true;
          grp.count = rec.at("count").get<std::uint64_t>();
          grp.residual = rec.at("residual").get<double>();
          grp.refined = rec.at("refined").get<bool>();
          grp.count_warning = rec.at("count_warning").get<bool>();
        }
      } catch (const json::exception&) {
        warn_corrupt(path, lineno, "missing or mistyped field", stats);
        saw_corrupt = true;
      }
    }
  }

  std::vector<lfunc::ZeroSet> sets(q - 2);
  std::vector<std::uint32_t> missing;
  for (std::uint32_t j = 1; j + 1 < q; ++j) {
    CacheGroup& grp = groups[j - 1];
    const bool ascending =
        std::adjacent_find(grp.ordinates.begin(), grp.ordinates.end(),
                           [](double a, double b) { return !(a < b); }) ==
        grp.ordinates.end();
    if (!grp.have_summary || grp.ordinates.size() != grp.count || !ascending) {
      if (grp.have_summary || !grp.ordinates.empty()) {
        std::cerr << "warning: " << path << ": incomplete cache for j=" << j
                  << ", recomputing\n";
        saw_corrupt = true;
      }
      missing.push_back(j);
      continue;
    }
    lfunc::ZeroSet zs;
    zs.q = q;
    zs.j = j;
    zs.g = g;
    zs.t_max = t_max;
    zs.ordinates = std::move(grp.ordinates);
    zs.count_residual = grp.residual;
    zs.refined = grp.refined;
    zs.count_warning = grp.count_warning;
    sets[j - 1] = std::move(zs);
    if (stats) ++stats->loaded;
  }

  if (missing.size() == static_cast<std::size_t>(q - 2)) {
    sets = lfunc::find_zeros_family(q, t_max);
  } else if (!missing.empty()) {
    auto table = std::make_shared<const arith::DlogTable>(arith::dlog_table(q));
    for (const std::uint32_t j : missing)
      sets[j - 1] = lfunc::find_zeros(characters::DirichletCharacter(table, j), t_max);
  }
  if (stats) stats->computed += static_cast<int>(missing.size());

  if (!missing.empty() || saw_corrupt) {
    const std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw resource_error("cache_zeros: cannot write " + tmp);
      for (const lfunc::ZeroSet& zs : sets) {
        for (const double t : zs.ordinates) out << ordinate_record(zs, t).dump() << "\n";
        out << summary_record(zs).dump() << "\n";
      }
      out.flush();
      if (!out) throw resource_error("cache_zeros: write failed for " + tmp);
    }
    fs::rename(tmp, path, ec);
    if (ec) throw resource_error("cache_zeros: cannot rename " + tmp + " to " + path);
  }
  return sets;
}

ComparisonRow::ComparisonRow()
    : empirical(kNaN), explicit_v(kNaN), ratios_v(kNaN), d_emp_exp(kNaN), d_exp_ratios(kNaN) {}

std::string row_csv_header() {
  return "q,sigma,phi,empirical,explicit,ratios,d_emp_exp,d_exp_ratios,"
         "S,S1,S2,B1,B2,B3,trunc_bound";
}

std::string row_to_csv(const ComparisonRow& r) {
  std::ostringstream os;
  os << r.q << ',' << fmt17(r.sigma) << ',' << r.phi << ',' << fmt17(r.empirical) << ','
     << fmt17(r.explicit_v) << ',' << fmt17(r.ratios_v) << ',' << fmt17(r.d_emp_exp) << ','
     << fmt17(r.d_exp_ratios) << ',' << fmt17(r.sdec.S) << ',' << fmt17(r.sdec.S1) << ','
     << fmt17(r.sdec.S2) << ',' << fmt17(r.sdec.B1) << ',' << fmt17(r.sdec.B2) << ','
     << fmt17(r.sdec.B3) << ',' << fmt17(r.trunc_bound);
  return os.str();
}

std::optional<ComparisonRow> row_from_csv(const std::string& line) {
  const std::vector<std::string> f = split_csv(line);
  if (f.size() != 15) return std::nullopt;
  const auto q = parse_u32(f[0]);
  if (!q) return std::nullopt;
  double vals[13];
  static constexpr int kIdx[13] = {1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
  for (int i = 0; i < 13; ++i) {
    const auto v = parse_double(f[kIdx[i]]);
    if (!v) return std::nullopt;
    vals[i] = *v;
  }
  ComparisonRow r;
  r.q = *q;
  r.sigma = vals[0];
  r.phi = f[2];
  r.empirical = vals[1];
  r.explicit_v = vals[2];
  r.ratios_v = vals[3];
  r.d_emp_exp = vals[4];
  r.d_exp_ratios = vals[5];
  r.sdec.S = vals[6];
  r.sdec.S1 = vals[7];
  r.sdec.S2 = vals[8];
  r.sdec.B1 = vals[9];
  r.sdec.B2 = vals[10];
  r.sdec.B3 = vals[11];
  r.trunc_bound = vals[12];
  r.sdec.q = r.q;
  r.sdec.sigma = r.sigma;
  return r;
}

std::string row_to_jsonl(const ComparisonRow& r) {
  // json::dump emits null for non-finite doubles, which is the jsonl
  // convention for "not computed".
  const json rec{{"q", r.q},
                 {"sigma", r.sigma},
                 {"phi", r.phi},
                 {"empirical", r.empirical},
                 {"explicit", r.explicit_v},
                 {"ratios", r.ratios_v},
                 {"d_emp_exp", r.d_emp_exp},
                 {"d_exp_ratios", r.d_exp_ratios},
                 {"S", r.sdec.S},
                 {"S1", r.sdec.S1},
                 {"S2", r.sdec.S2},
                 {"B1", r.sdec.B1},
                 {"B2", r.sdec.B2},
                 {"B3", r.sdec.B3},
                 {"trunc_bound", r.trunc_bound}};
  return rec.dump();
}

std::optional<ComparisonRow> row_from_jsonl(const std::string& line) {
  json rec = json::parse(line, nullptr, false);
  if (rec.is_discarded() || !rec.is_object()) return std::nullopt;
  ComparisonRow r;
  try {
    r.q = rec.at("q").get<std::uint32_t>();
    r.sigma = rec.at("sigma").get<double>();
    r.phi = rec.at("phi").get<std::string>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
  r.empirical = json_double(rec, "empirical");
  r.explicit_v = json_double(rec, "explicit");
  r.ratios_v = json_double(rec, "ratios");
  r.d_emp_exp = json_double(rec, "d_emp_exp");
  r.d_exp_ratios = json_double(rec, "d_exp_ratios");
  r.sdec.S = json_double(rec, "S");
  r.sdec.S1 = json_double(rec, "S1");
  r.sdec.S2 = json_double(rec, "S2");
  r.sdec.B1 = json_double(rec, "B1");
  r.sdec.B2 = json_double(rec, "B2");
  r.sdec.B3 = json_double(rec, "B3");
  r.trunc_bound = json_double(rec, "trunc_bound");
  r.sdec.q = r.q;
  r.sdec.sigma = r.sigma;
  return r;
}

ComparisonRow compute_row(std::uint32_t q, const testfn::TestFunction& tf,
                          const std::vector<std::string>& methods,
                          const arith::SieveTable& sv, double t_max,
                          const std::string& cache_dir) {
  if (q < 3 || !arith::is_prime_u64(q))
    throw argument_error("compute_row: q must be an odd prime, got " + std::to_string(q));
  ComparisonRow row;
  row.q = q;
  row.sigma = tf.sigma;
  row.phi = tf.name;
  row.sdec.q = q;
  row.sdec.sigma = tf.sigma;

  auto guarded = [&](const std::string& method, auto&& body) {
    try {
      body();
    } catch (const numeric_error& e) {
      std::cerr << "warning: q=" << q << " method=" << method << ": " << e.what() << "\n";
    } catch (const resource_error& e) {
      std::cerr << "warning: q=" << q << " method=" << method << ": " << e.what() << "\n";
    }
  };

  for (const std::string& m : methods) {
    if (m == "empirical") {
      guarded(m, [&] {
        const double t_eff = t_max > 0 ? t_max : default_t_max(tf, q);
        const std::vector<lfunc::ZeroSet> zeros = cache_zeros(q, t_eff, cache_dir);
        const density::DensityReport rep = density::empirical_density(tf, q, zeros);
        row.empirical = rep.total;
        row.trunc_bound = rep.truncation_bound;
      });
    } else if (m == "explicit") {
      guarded(m, [&] {
        const density::DensityReport rep = density::explicit_formula_density(tf, q, sv);
        row.explicit_v = rep.total;
        row.sdec = density::prime_sum_term(tf, q, sv);
      });
    } else if (m == "ratios") {
      guarded(m, [&] {
        const density::DensityReport rep = ratios::ratios_density_prediction(tf, q);
        row.ratios_v = rep.total;
      });
    } else {
      throw argument_error("compute_row: unknown method \"" + m + "\"");
    }
  }
  row.d_emp_exp = row.empirical - row.explicit_v;
  row.d_exp_ratios = row.explicit_v - row.ratios_v;
  return row;
}

namespace {

bool row_covers_methods(const ComparisonRow& row, const std::vector<std::string>& methods) {
  for (const std::string& m : methods) {
    if (m == "empirical" && !std::isfinite(row.empirical)) return false;
    if (m == "explicit" && !std::isfinite(row.explicit_v)) return false;
    if (m == "ratios" && !std::isfinite(row.ratios_v)) return false;
  }
  return true;
}

void write_gnuplot_script(const std::string& out_path) {
  std::ofstream gp(out_path + ".gp", std::ios::trunc);
  if (!gp) return;
  gp << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'q'\n"
     << "set ylabel 'magnitude'\n"
     << "set key left bottom\n"
     << "plot '" << out_path << "' skip 1 using 1:(abs($9)) with points title '|S|', \\\n"
     << "     '" << out_path << "' skip 1 using 1:(abs($8)) with points title "
     << "'|explicit - ratios|'\n";
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.qmin < 3 || cfg.qmax < cfg.qmin)
    throw argument_error("run_sweep: need 3 <= qmin <= qmax");
  if (cfg.count < 2) throw argument_error("run_sweep: count must be >= 2 for fitting");
  if (cfg.sigmas.empty()) throw argument_error("run_sweep: at least one sigma required");
  for (const double s : cfg.sigmas)
    if (!(s > 0)) throw argument_error("run_sweep: sigma must be positive");
  if (cfg.methods.empty()) throw argument_error("run_sweep: at least one method required");
  for (const std::string& m : cfg.methods)
    if (m != "empirical" && m != "explicit" && m != "ratios")
      throw argument_error("run_sweep: unknown method \"" + m + "\"");
  if (cfg.out_path.empty()) throw argument_error("run_sweep: output path required");
  if (cfg.format != "csv" && cfg.format != "jsonl")
    throw argument_error("run_sweep: format must be csv or jsonl");
  if (cfg.jobs > 0) parallel::set_jobs(cfg.jobs);

  const std::vector<std::uint32_t> primes =
      select_primes_geometric(cfg.qmin, cfg.qmax, cfg.count);
  std::vector<double> sigmas = cfg.sigmas;
  std::sort(sigmas.begin(), sigmas.end());
  sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());

  // One sieve covering the largest (q/pi)^sigma needed by the explicit method.
  std::uint64_t sieve_limit = 3;
  const bool want_explicit =
      std::find(cfg.methods.begin(), cfg.methods.end(), "explicit") != cfg.methods.end();
  if (want_explicit) {
    const double xmax =
        std::pow(primes.back() / kPi, sigmas.back());
    if (xmax > 4e18) throw resource_error("run_sweep: prime-sum range overflows");
    sieve_limit = std::max<std::uint64_t>(3, static_cast<std::uint64_t>(std::ceil(xmax)) + 2);
  }
  const arith::SieveTable sv = arith::sieve(sieve_limit);

  // Existing rows: last occurrence wins, so a resumed sweep supersedes rows it
  // rewrote.  The stored line is kept to make re-appends idempotent.
  std::map<std::tuple<std::uint32_t, double, std::string>,
           std::pair<ComparisonRow, std::string>>
      cached;
  const bool existed = fs::exists(cfg.out_path);
  if (existed) {
    std::ifstream in(cfg.out_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      if (cfg.format == "csv" && line == row_csv_header()) continue;
      const std::optional<ComparisonRow> row =
          cfg.format == "csv" ? row_from_csv(line) : row_from_jsonl(line);
      if (!row) {
        std::cerr << "warning: " << cfg.out_path << ":" << lineno
                  << ": skipping malformed row\n";
        continue;
      }
      cached[{row->q, row->sigma, row->phi}] = {*row, line};
    }
  }

  std::ofstream out(cfg.out_path, std::ios::app);
  if (!out) throw resource_error("run_sweep: cannot open " + cfg.out_path);
  if (cfg.format == "csv" && (!existed || fs::file_size(cfg.out_path) == 0)) {
    out << row_csv_header() << "\n";
    out.flush();
  }

  SweepResult result;
  const std::string cache_dir = resolve_cache_dir(cfg.cache_dir);
  for (const std::uint32_t q : primes) {
    for (const double sigma : sigmas) {
      const testfn::TestFunction tf = testfn::make_by_name(cfg.phi, sigma);
      const auto key = std::make_tuple(q, sigma, tf.name);
      const auto it = cached.find(key);
      if (it != cached.end() && row_covers_methods(it->second.first, cfg.methods)) {
        result.rows.push_back(it->second.first);
        continue;
      }
      const ComparisonRow row =
          compute_row(q, tf, cfg.methods, sv, cfg.t_max, cache_dir);
      const std::string line = cfg.format == "csv" ? row_to_csv(row) : row_to_jsonl(row);
      if (it == cached.end() || it->second.second != line) {
        out << line << "\n";
        out.flush();
        if (!out) throw resource_error("run_sweep: write failed for " + cfg.out_path);
      }
      result.rows.push_back(row);
    }
  }

  for (const double sigma : sigmas) {
    std::vector<double> qs, s_mag, gap_mag;
    for (const ComparisonRow& row : result.rows) {
      if (row.sigma != sigma) continue;
      qs.push_back(row.q);
      s_mag.push_back(std::abs(row.sdec.S));
      gap_mag.push_back(std::abs(row.d_exp_ratios));
    }
    try {
      result.fit_S[sigma] = fit_decay_exponent(qs, s_mag);
    } catch (const argument_error& e) {
      std::cerr << "note: sigma=" << sigma << ": no |S| fit (" << e.what() << ")\n";
    }
    try {
      result.fit_gap[sigma] = fit_decay_exponent(qs, gap_mag);
    } catch (const argument_error& e) {
      std::cerr << "note: sigma=" << sigma << ": no gap fit (" << e.what() << ")\n";
    }
  }

  if (cfg.emit_gnuplot) write_gnuplot_script(cfg.out_path);
  return result;
}

}  // namespace ratioslab::harness
