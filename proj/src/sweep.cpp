#include <chrono>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qrigid/rigidity.hpp"

namespace qrigid {

namespace {

struct TrialResult {
  bool certified = false;
  double margin = 0.0;
  double seconds = 0.0;
};

struct Task {
  std::size_t cell = 0;
  std::size_t n = 0, d = 0, trial = 0;
};

TrialResult run_trial(const SweepConfig& cfg, const Task& task) {
  const auto start = std::chrono::steady_clock::now();
  TrialResult out;
  try {
    CounterRng rng(trial_rng_spec(cfg.rng, task.n, task.d, task.trial));
    const auto tuple = sample_tuple<FloatScalar>(task.n, task.d, rng, cfg.shape);
    auto [d1, d2] = degree_matrices(tuple, cfg.mode, cfg.tol);
    const PowersResult pr = powers_basis_certificate(d1, d2, cfg.tol);
    out.certified = pr.certified;
    out.margin = pr.margin();
  } catch (const Error&) {
    // A degenerate random draw counts as a failed (uncertified) trial.
    out.certified = false;
    out.margin = 0.0;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int resolve_threads(int configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("QRIGID_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

SweepReport run_sweep(const SweepConfig& cfg) {
  SweepReport report;
  report.rng = cfg.rng;
  report.mode = cfg.mode;
  report.tol = cfg.tol;
  report.trials = cfg.trials;

  std::vector<Task> tasks;
  for (std::size_t n : cfg.ns) {
    std::size_t d_lo = 2, d_hi = (n * n >= 3) ? n * n - 3 : 0;
    if (cfg.d_range) {
      d_lo = cfg.d_range->first;
      d_hi = cfg.d_range->second;
    }
    for (std::size_t d = d_lo; d <= d_hi; ++d) {
      SweepCell cell;
      cell.n = n;
      cell.d = d;
      cell.trials = cfg.trials;
      const std::size_t cell_idx = report.cells.size();
      report.cells.push_back(cell);
      for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({cell_idx, n, d, t});
    }
  }

  std::vector<TrialResult> results(tasks.size());
  if (cfg.exec == SweepExec::Serial) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = run_trial(cfg, tasks[i]);
  } else {
    const int threads = resolve_threads(cfg.max_threads);
    (void)threads;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (long long i = 0; i < static_cast<long long>(tasks.size()); ++i)
      results[static_cast<std::size_t>(i)] =
          run_trial(cfg, tasks[static_cast<std::size_t>(i)]);
  }

  std::vector<bool> seen(report.cells.size(), false);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    SweepCell& cell = report.cells[tasks[i].cell];
    const TrialResult& r = results[i];
    if (r.certified) ++cell.certified;
    if (!seen[tasks[i].cell] || r.margin < cell.min_margin) cell.min_margin = r.margin;
    seen[tasks[i].cell] = true;
    cell.seconds += r.seconds;
  }
  return report;
}

}  // namespace qrigid
