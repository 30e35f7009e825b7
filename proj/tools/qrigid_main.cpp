#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qrigid/fixture.hpp"
#include "qrigid/json_io.hpp"
#include "qrigid/rigidity.hpp"
#include "qrigid/rng.hpp"
#include "qrigid/superop.hpp"

namespace {

using namespace qrigid;

struct GlobalOpts {
  std::string backend = "float";
  std::string trace_mode = "normalized";
  double tol_rank = TolerancePolicy{}.rank_rel_tol;
  double cert_margin = TolerancePolicy{}.cert_margin;
  double psd_tol = TolerancePolicy{}.psd_tol;
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "json";

  Backend backend_enum() const { return parse_backend(backend); }
  TraceMode mode_enum() const { return parse_trace_mode(trace_mode); }
  TolerancePolicy tol() const { return TolerancePolicy{tol_rank, cert_margin, psd_tol}; }
};

void add_global_flags(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--backend", g.backend, "Scalar backend: exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--trace-mode", g.trace_mode, "Trace: normalized|plain|delta")
      ->check(CLI::IsMember({"normalized", "plain", "delta"}));
  cmd->add_option("--tol-rank", g.tol_rank, "Relative singular-value cutoff for rank");
  cmd->add_option("--cert-margin", g.cert_margin, "Required sigma_min/sigma_max margin");
  cmd->add_option("--psd-tol", g.psd_tol, "Tolerance for hermiticity/positivity checks");
  cmd->add_option("--seed", g.seed, "RNG seed (fixed default keeps runs reproducible)");
  cmd->add_option("--output", g.output, "Write the report here instead of stdout");
  cmd->add_option("--format", g.format, "Output format: json|csv|pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output file '" + g.output + "'");
  out << text;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

// Accepts "a..b" (inclusive) or a single "a".
std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const std::size_t v = std::stoull(s);
      return {v, v};
    }
    const std::size_t lo = std::stoull(s.substr(0, dots));
    const std::size_t hi = std::stoull(s.substr(dots + 2));
    if (hi < lo) throw InvalidInput("empty range '" + s + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InvalidInput("bad range '" + s + "' (want N or LO..HI)");
  }
}

std::string pretty_certificate(const RigidityCertificate& c) {
  std::ostringstream os;
  os << "n=" << c.n << " d=" << c.d << " backend=" << to_string(c.backend)
     << " trace=" << to_string(c.mode) << "\n";
  os << "rank: " << c.rank << " / " << c.n * c.n << "\n";
  if (c.backend == Backend::Float) {
    os << "sigma_max: " << c.sigma_max << "\nsigma_min: " << c.sigma_min
       << "\nmargin: " << c.margin() << "\n";
  } else {
    os << "det: " << c.exact_det << "\n";
  }
  if (c.closure_dim) os << "closure_dimension: " << *c.closure_dim << "\n";
  os << "verdict: " << c.verdict() << "\n";
  return os.str();
}

std::string pretty_axioms(const AxiomReport& r) {
  std::ostringstream os;
  auto line = [&](const char* name, bool ok, double res) {
    os << name << ": " << (ok ? "pass" : "FAIL") << " (residual " << res << ")\n";
  };
  os << "backend: " << to_string(r.backend) << "\n";
  line("schur_idempotent", r.schur_idempotent, r.schur_residual);
  line("reflexive", r.reflexive, r.reflexive_residual);
  line("self_adjoint", r.self_adjoint, r.self_adjoint_residual);
  os << "completely_positive: " << (r.completely_positive ? "pass" : "FAIL")
     << " (choi min eig " << r.choi_min_eig << ")\n";
  os << "all_pass: " << (r.all_pass() ? "true" : "false") << "\n";
  return os.str();
}

std::string pretty_sweep(const SweepReport& r) {
  std::ostringstream os;
  os << "seed=" << r.rng.seed << " trials=" << r.trials
     << " trace=" << to_string(r.mode) << "\n";
  for (const auto& c : r.cells)
    os << "n=" << c.n << " d=" << c.d << ": " << c.certified << "/" << c.trials
       << " certified, min_margin=" << c.min_margin << "\n";
  os << "total: " << r.total_certified() << "/" << r.total_trials()
     << " certified; all cells attained: "
     << (r.all_cells_certified() ? "yes" : "no") << "\n";
  return os.str();
}

template <class S>
RigidityCertificate run_certify(const GlobalOpts& g, const std::string& fixture,
                                const std::string& input,
                                const std::vector<std::size_t>& sample) {
  OperatorTuple<S> t;
  if (!fixture.empty()) {
    if constexpr (ScalarOps<S>::backend == Backend::Exact)
      throw ExactBackendUnsupported("bundled fixtures are float-valued");
    else
      t = fixture_by_name(fixture);
  } else if (!input.empty()) {
    t = tuple_from_json<S>(load_json(input));
  } else {
    CounterRng rng(trial_rng_spec(RngSpec{g.seed, 0}, sample[0], sample[1], 0));
    t = sample_tuple<S>(sample[0], sample[1], rng);
  }
  return certify_tuple(t, g.mode_enum(), g.tol());
}

int cmd_certify(const GlobalOpts& g, const std::string& fixture, const std::string& input,
                const std::vector<std::size_t>& sample) {
  const int given = (!fixture.empty()) + (!input.empty()) + (!sample.empty());
  if (given != 1)
    throw InvalidInput("certify wants exactly one of --fixture, --input, --sample");
  if (!sample.empty() && (sample[0] < 2 || sample[1] == 0))
    throw InvalidInput("--sample wants n >= 2 and d >= 1");

  const RigidityCertificate cert =
      g.backend_enum() == Backend::Exact
          ? run_certify<ExactScalar>(g, fixture, input, sample)
          : run_certify<FloatScalar>(g, fixture, input, sample);

  if (g.format == "pretty")
    emit(g, pretty_certificate(cert));
  else
    emit(g, certificate_to_json(cert).dump(2) + "\n");
  return cert.certified ? 0 : 1;
}

int cmd_sweep(const GlobalOpts& g, const std::string& n_range, const std::string& d_range,
              std::size_t trials, bool timing) {
  if (g.backend_enum() == Backend::Exact)
    throw ExactBackendUnsupported("sweep is float-only; use certify --backend exact");

  SweepConfig cfg;
  const auto [n_lo, n_hi] = parse_range(n_range);
  for (std::size_t n = n_lo; n <= n_hi; ++n) cfg.ns.push_back(n);
  if (!d_range.empty()) cfg.d_range = parse_range(d_range);
  cfg.trials = trials;
  cfg.rng = RngSpec{g.seed, 0};
  cfg.mode = g.mode_enum();
  cfg.tol = g.tol();

  const SweepReport report = run_sweep(cfg);

  if (g.format == "csv")
    emit(g, sweep_report_to_csv(report));
  else if (g.format == "pretty")
    emit(g, pretty_sweep(report));
  else
    emit(g, sweep_report_to_json(report, timing).dump(2) + "\n");
  return report.all_cells_certified() ? 0 : 1;
}

template <class S>
Superoperator<S> load_superop(const Json& j) {
  if (j.contains("rep")) return superop_from_json<S>(j);
  if (j.contains("matrices")) return superop_from_kraus(kraus_from_json<S>(j));
  if (j.value("bipartite", false)) return superop_from_choi(choi_from_json<S>(j));
  throw InvalidInput("expected a superoperator, Kraus-tuple, or Choi JSON document");
}

Backend detect_document_backend(const Json& j) {
  if (j.contains("rep")) return detect_matrix_backend(j.at("rep"));
  if (j.contains("matrices")) return detect_matrix_backend(j.at("matrices").at(0));
  if (j.contains("entries")) return detect_matrix_backend(j);
  throw InvalidInput("cannot infer backend from document");
}

int cmd_check_axioms(const GlobalOpts& g, const std::string& system, std::size_t n,
                     const std::string& input) {
  if (system.empty() == input.empty())
    throw InvalidInput("check-axioms wants exactly one of --system, --input");

  AxiomReport report;
  Backend backend = g.backend_enum();
  if (!input.empty()) {
    const Json j = load_json(input);
    backend = detect_document_backend(j);
    if (backend == Backend::Exact)
      report = check_quantum_graph(load_superop<ExactScalar>(j), g.tol());
    else
      report = check_quantum_graph(load_superop<FloatScalar>(j), g.tol());
  } else {
    if (n < 1) throw InvalidInput("--system wants --n >= 1");
    auto build = [&]<class S>() {
      if (system == "trivial") return Superoperator<S>::identity(n);
      if (system == "full" || system == "complete") return complete_superop<S>(n);
      throw InvalidInput("unknown system '" + system + "' (want trivial|full)");
    };
    report = backend == Backend::Exact
                 ? check_quantum_graph(build.operator()<ExactScalar>(), g.tol())
                 : check_quantum_graph(build.operator()<FloatScalar>(), g.tol());
  }

  if (g.format == "pretty")
    emit(g, pretty_axioms(report));
  else
    emit(g, axiom_report_to_json(report).dump(2) + "\n");
  return report.all_pass() ? 0 : 1;
}

template <class S>
std::string run_choi(const Json& j, const std::string& direction) {
  if (direction == "to-choi") {
    const Superoperator<S> p = load_superop<S>(j);
    return choi_to_json(choi(p)).dump(2) + "\n";
  }
  const ChoiMatrix<S> c = choi_from_json<S>(j);
  return superop_to_json(superop_from_choi(c)).dump(2) + "\n";
}

int cmd_choi(const GlobalOpts& g, const std::string& input, const std::string& direction) {
  const Json j = load_json(input);
  const Backend backend = detect_document_backend(j);
  emit(g, backend == Backend::Exact ? run_choi<ExactScalar>(j, direction)
                                    : run_choi<FloatScalar>(j, direction));
  return 0;
}

int cmd_fixture(const GlobalOpts& g, const std::string& name) {
  const OperatorTuple<FloatScalar> t = fixture_by_name(name);
  emit(g, tuple_to_json(t).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-graph construction, axiom checking, and rigidity certificates"};
  app.require_subcommand(1);

  GlobalOpts g;

  auto* certify = app.add_subcommand("certify", "Certify a tuple via the degree-matrix basis test");
  std::string certify_fixture, certify_input;
  std::vector<std::size_t> certify_sample;
  certify->add_option("--fixture", certify_fixture, "Bundled fixture name");
  certify->add_option("--input", certify_input, "Tuple JSON file");
  certify->add_option("--sample", certify_sample, "Sample a random tuple: N D")
      ->expected(2);
  add_global_flags(certify, g);

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo certification sweep over (n, d)");
  std::string sweep_n = "3..8", sweep_d;
  std::size_t sweep_trials = 5;
  bool sweep_timing = false;
  sweep->add_option("--n", sweep_n, "n range, e.g. 3..8 or 5");
  sweep->add_option("--d", sweep_d, "d range override (default 2..n^2-3 per n)");
  sweep->add_option("--trials", sweep_trials, "Trials per (n, d) cell");
  sweep->add_flag("--timing", sweep_timing, "Include wall-clock seconds in JSON cells");
  add_global_flags(sweep, g);

  auto* axioms = app.add_subcommand("check-axioms", "Verify the quantum-graph axioms");
  std::string axioms_system, axioms_input;
  std::size_t axioms_n = 0;
  axioms->add_option("--system", axioms_system, "Built-in system: trivial|full");
  axioms->add_option("--n", axioms_n, "Dimension for --system");
  axioms->add_option("--input", axioms_input, "Superoperator or Kraus-tuple JSON file");
  add_global_flags(axioms, g);

  auto* choi_cmd = app.add_subcommand("choi", "Convert between superoperator and Choi forms");
  std::string choi_input, choi_direction = "to-choi";
  choi_cmd->add_option("--input", choi_input, "Input JSON file")->required();
  choi_cmd->add_option("--direction", choi_direction, "to-choi|from-choi")
      ->check(CLI::IsMember({"to-choi", "from-choi"}));
  add_global_flags(choi_cmd, g);

  auto* fixture = app.add_subcommand("fixture", "Emit a bundled fixture as tuple JSON");
  std::string fixture_name = "paper-n7-d4";
  fixture->add_option("--name", fixture_name, "Fixture name");
  add_global_flags(fixture, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (certify->parsed())
      return cmd_certify(g, certify_fixture, certify_input, certify_sample);
    if (sweep->parsed()) return cmd_sweep(g, sweep_n, sweep_d, sweep_trials, sweep_timing);
    if (axioms->parsed()) return cmd_check_axioms(g, axioms_system, axioms_n, axioms_input);
    if (choi_cmd->parsed()) return cmd_choi(g, choi_input, choi_direction);
    if (fixture->parsed()) return cmd_fixture(g, fixture_name);
  } catch (const qrigid::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
