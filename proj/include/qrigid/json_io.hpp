#pragma once

#include <json.hpp>

#include <cstddef>
#include <string>

#include "qrigid/graded.hpp"
#include "qrigid/opsys.hpp"
#include "qrigid/rigidity.hpp"
#include "qrigid/superop.hpp"

namespace qrigid {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Enums
// ---------------------------------------------------------------------------

inline TraceMode parse_trace_mode(const std::string& s) {
  if (s == "normalized") return TraceMode::Normalized;
  if (s == "plain") return TraceMode::Plain;
  if (s == "delta") return TraceMode::DeltaForm;
  throw InvalidInput("unknown trace mode '" + s + "'");
}

inline Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "float") return Backend::Float;
  throw InvalidInput("unknown backend '" + s + "'");
}

// ---------------------------------------------------------------------------
// Matrices: {"n": k, "entries": k x k x [re, im]} with numeric components on
// the float backend and "p/q" strings on the exact one. Mixing kinds inside
// one matrix is rejected.
// ---------------------------------------------------------------------------

inline mpq_class parse_rational(const std::string& s) {
  try {
    mpq_class q(s);
    if (q.get_den() == 0) throw InvalidInput("rational with zero denominator: " + s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("bad rational literal '" + s + "'");
  }
}

inline Backend detect_matrix_backend(const Json& j) {
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.empty() || !entries[0].is_array() ||
      entries[0].empty())
    throw InvalidInput("matrix entries must be a non-empty 2d array");
  const auto& cell = entries[0][0];
  if (!cell.is_array() || cell.size() != 2)
    throw InvalidInput("matrix entry must be a [re, im] pair");
  if (cell[0].is_string()) return Backend::Exact;
  if (cell[0].is_number()) return Backend::Float;
  throw InvalidInput("matrix entry components must be numbers or 'p/q' strings");
}

template <class S>
Json matrix_to_json(const Matrix<S>& m) {
  if (!m.is_square()) throw DimensionMismatch("only square matrices serialize");
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (ScalarOps<S>::backend == Backend::Exact) {
        row.push_back({m(i, j).real().get_str(), m(i, j).imag().get_str()});
      } else {
        row.push_back({m(i, j).real(), m(i, j).imag()});
      }
    }
    entries.push_back(std::move(row));
  }
  return Json{{"n", m.rows()}, {"entries", std::move(entries)}};
}

template <class S>
Matrix<S> matrix_from_json(const Json& j) {
  const auto n = j.at("n").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (entries.size() != n) throw DimensionMismatch("matrix row count vs n");
  Matrix<S> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = entries[i];
    if (row.size() != n) throw DimensionMismatch("matrix column count vs n");
    for (std::size_t jj = 0; jj < n; ++jj) {
      const auto& cell = row[jj];
      if (!cell.is_array() || cell.size() != 2)
        throw InvalidInput("matrix entry must be a [re, im] pair");
      if constexpr (ScalarOps<S>::backend == Backend::Exact) {
        if (!cell[0].is_string() || !cell[1].is_string())
          throw BackendMismatch("exact matrix wants 'p/q' string components");
        m(i, jj) = ExactScalar(parse_rational(cell[0].get<std::string>()),
                               parse_rational(cell[1].get<std::string>()));
      } else {
        if (!cell[0].is_number() || !cell[1].is_number())
          throw BackendMismatch("float matrix wants numeric components");
        m(i, jj) = FloatScalar(cell[0].get<double>(), cell[1].get<double>());
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Tuples / Kraus lists
// ---------------------------------------------------------------------------

template <class S>
Json tuple_to_json(const OperatorTuple<S>& t, const TolerancePolicy& tol = {}) {
  Json mats = Json::array();
  bool herm = true, tless = true;
  for (const auto& m : t.mats) {
    mats.push_back(matrix_to_json(m));
    herm = herm && is_hermitian(m, tol.psd_tol);
    tless = tless && is_traceless(m);
  }
  return Json{{"n", t.n},         {"d", t.d()},        {"matrices", std::move(mats)},
              {"hermitian", herm}, {"traceless", tless}};
}

template <class S>
OperatorTuple<S> tuple_from_json(const Json& j) {
  OperatorTuple<S> t;
  t.n = j.at("n").get<std::size_t>();
  const auto& mats = j.at("matrices");
  if (j.contains("d") && j.at("d").get<std::size_t>() != mats.size())
    throw InvalidInput("tuple 'd' disagrees with matrix count");
  for (const auto& mj : mats) {
    if (detect_matrix_backend(mj) != ScalarOps<S>::backend)
      throw BackendMismatch("tuple entry backend");
    t.mats.push_back(matrix_from_json<S>(mj));
    if (t.mats.back().rows() != t.n) throw DimensionMismatch("tuple entry vs n");
  }
  return t;
}

template <class S>
Json kraus_to_json(const KrausTuple<S>& k) {
  Json mats = Json::array();
  for (const auto& m : k.mats) mats.push_back(matrix_to_json(m));
  return Json{{"n", k.n}, {"d", k.count()}, {"matrices", std::move(mats)}};
}

template <class S>
KrausTuple<S> kraus_from_json(const Json& j) {
  const OperatorTuple<S> t = tuple_from_json<S>(j);
  return KrausTuple<S>{t.n, t.mats};
}

// ---------------------------------------------------------------------------
// Superoperators and Choi matrices
// ---------------------------------------------------------------------------

template <class S>
Json superop_to_json(const Superoperator<S>& p) {
  return Json{{"n", p.n}, {"rep", matrix_to_json(p.rep)}};
}

template <class S>
Superoperator<S> superop_from_json(const Json& j) {
  Superoperator<S> p;
  p.n = j.at("n").get<std::size_t>();
  p.rep = matrix_from_json<S>(j.at("rep"));
  if (p.rep.rows() != p.n * p.n) throw DimensionMismatch("rep is not n^2 x n^2");
  return p;
}

template <class S>
Json choi_to_json(const ChoiMatrix<S>& c) {
  Json j = matrix_to_json(c.mat);
  j["bipartite"] = true;
  return j;
}

template <class S>
ChoiMatrix<S> choi_from_json(const Json& j) {
  if (!j.value("bipartite", false)) throw InvalidInput("choi JSON needs bipartite: true");
  const Matrix<S> m = matrix_from_json<S>(j);
  std::size_t base = 0;
  while (base * base < m.rows()) ++base;
  if (base * base != m.rows()) throw DimensionMismatch("choi size is not a perfect square");
  return ChoiMatrix<S>{base, m};
}

// ---------------------------------------------------------------------------
// Groups
// ---------------------------------------------------------------------------

inline Json group_to_json(const FiniteGroup& g) {
  Json table = Json::array();
  for (std::size_t a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < g.order(); ++b) row.push_back(g.mult(a, b));
    table.push_back(std::move(row));
  }
  Json names = Json::array();
  for (std::size_t a = 0; a < g.order(); ++a) names.push_back(g.name(a));
  return Json{{"order", g.order()}, {"table", std::move(table)}, {"names", std::move(names)}};
}

inline FiniteGroup group_from_json(const Json& j) {
  const auto order = j.at("order").get<std::size_t>();
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : j.at("table"))
    table.push_back(row.get<std::vector<std::size_t>>());
  if (table.size() != order) throw InvalidGroup("table size vs order");
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  return FiniteGroup::from_table(std::move(table), std::move(names));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json certificate_to_json(const RigidityCertificate& c) {
  Json j{{"schema", kSchemaVersion},
         {"kind", "certificate"},
         {"n", c.n},
         {"d", c.d},
         {"backend", to_string(c.backend)},
         {"trace_mode", to_string(c.mode)},
         {"rank", c.rank},
         {"verdict", c.verdict()}};
  if (c.backend == Backend::Float) {
    j["sigma_max"] = c.sigma_max;
    j["sigma_min"] = c.sigma_min;
    j["margin"] = c.margin();
  } else {
    j["exact_det"] = c.exact_det;
  }
  if (c.closure_dim) j["closure_dimension"] = *c.closure_dim;
  return j;
}

inline Json axiom_report_to_json(const AxiomReport& r) {
  return Json{{"schema", kSchemaVersion},
              {"kind", "axioms"},
              {"backend", to_string(r.backend)},
              {"schur_idempotent", r.schur_idempotent},
              {"reflexive", r.reflexive},
              {"self_adjoint", r.self_adjoint},
              {"completely_positive", r.completely_positive},
              {"schur_residual", r.schur_residual},
              {"reflexive_residual", r.reflexive_residual},
              {"self_adjoint_residual", r.self_adjoint_residual},
              {"choi_min_eig", r.choi_min_eig},
              {"all_pass", r.all_pass()}};
}

inline Json sweep_report_to_json(const SweepReport& r, bool include_timing = false) {
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    Json cj{{"n", c.n},
            {"d", c.d},
            {"trials", c.trials},
            {"certified", c.certified},
            {"min_margin", c.min_margin}};
    if (include_timing) cj["seconds"] = c.seconds;
    cells.push_back(std::move(cj));
  }
  return Json{{"schema", kSchemaVersion},
              {"kind", "sweep"},
              {"seed", r.rng.seed},
              {"stream", r.rng.stream},
              {"trace_mode", to_string(r.mode)},
              {"trials", r.trials},
              {"cells", std::move(cells)},
              {"all_cells_certified", r.all_cells_certified()},
              {"total_trials", r.total_trials()},
              {"total_certified", r.total_certified()}};
}

inline std::string sweep_report_to_csv(const SweepReport& r) {
  std::string out = "n,d,trials,certified,min_margin,seconds\n";
  char buf[160];
  for (const auto& c : r.cells) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%zu,%.12g,%.6f\n", c.n, c.d, c.trials,
                  c.certified, c.min_margin, c.seconds);
    out += buf;
  }
  return out;
}

}  // namespace qrigid
