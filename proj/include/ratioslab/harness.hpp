#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratioslab/density.hpp"
#include "ratioslab/lfunc.hpp"
#include "ratioslab/ratios.hpp"
#include "ratioslab/testfn.hpp"

namespace ratioslab::harness {

struct SweepConfig {
  std::uint64_t qmin = 0, qmax = 0;
  int count = 0;                  // number of primes on the geometric grid
  std::vector<double> sigmas{1.0};
  std::string phi = "fejer";
  std::vector<std::string> methods{"explicit", "ratios"};
  ratios::Variant variant = ratios::Variant::standard;
  double t_max = 0;               // 0 = policy default (empirical only)
  std::string cache_dir;          // "" = resolve from env/dot-dir
  std::string out_path;
  std::string format = "csv";     // "csv" | "jsonl"
  int jobs = 0;                   // 0 = library default
  bool emit_gnuplot = false;
};

// Least-squares fit of log|y| = slope log q + intercept.
struct FitResult {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
  int n_used = 0;
  int n_dropped = 0;  // zero-magnitude points skipped
};

// Throws argument_error when fewer than two usable points remain.
FitResult fit_decay_exponent(const std::vector<double>& q, const std::vector<double>& y);

// Primes hit by rounding a count-point geometric grid on [qmin, qmax] up to
// the next prime (deduplicated, ascending).
std::vector<std::uint32_t> select_primes_geometric(std::uint64_t qmin, std::uint64_t qmax,
                                                   int count);

// Default zero height: 2 pi A(1e-6)/log(q/pi), capped at 100.
double default_t_max(const testfn::TestFunction& tf, std::uint32_t q);

// Cache directory resolution: explicit path, else $RATIOSLAB_CACHE, else
// ".ratioslab_cache".
std::string resolve_cache_dir(const std::string& explicit_dir);

struct CacheStats {
  int loaded = 0;    // zero sets served from disk
  int computed = 0;  // zero sets computed this call
  int skipped_corrupt = 0;  // cache lines dropped as unparseable
};

// Zero sets for the whole family at (q, t_max), loading complete cached sets
// and computing + appending the rest (write-temp-then-rename).  Corrupted
// cache lines are skipped with a warning to stderr and recomputed.
std::vector<lfunc::ZeroSet> cache_zeros(std::uint32_t q, double t_max,
                                        const std::string& cache_dir,
                                        CacheStats* stats = nullptr);

// One comparison row of a sweep.  Method values are NaN when not computed.
struct ComparisonRow {
  std::uint32_t q = 0;
  double sigma = 0;
  std::string phi;
  double empirical, explicit_v, ratios_v;  // initialized to NaN
  double d_emp_exp, d_exp_ratios;          // NaN when either side missing
  density::SDecomposition sdec;
  double trunc_bound = 0;

  ComparisonRow();
};

std::string row_csv_header();
std::string row_to_csv(const ComparisonRow& row);
std::optional<ComparisonRow> row_from_csv(const std::string& line);
std::string row_to_jsonl(const ComparisonRow& row);
std::optional<ComparisonRow> row_from_jsonl(const std::string& line);

// Compute every requested method for one (q, sigma, phi).
ComparisonRow compute_row(std::uint32_t q, const testfn::TestFunction& tf,
                          const std::vector<std::string>& methods,
                          const arith::SieveTable& sv, double t_max,
                          const std::string& cache_dir);

struct SweepResult {
  std::vector<ComparisonRow> rows;  // ordered by (q, sigma)
  // per-sigma fits of |S| and |explicit - ratios| against q
  std::map<double, FitResult> fit_S;
  std::map<double, FitResult> fit_gap;
};

// Runs the grid, appending rows to out_path as they complete (in (q, sigma)
// order; existing valid rows are loaded and not recomputed, so re-running a
// finished sweep is a no-op and an interrupted one resumes).
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace ratioslab::harness
