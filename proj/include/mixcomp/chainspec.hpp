#pragma once
// Chain descriptions as JSON documents and the CSV/JSON emission helpers the
// command-line tool is built on. A document selects a constructor kind plus
// its parameters; build_chain validates and returns the kernel together with
// its stationary pmf and the partial order the kind is naturally compared
// under. Weight vectors ("pi") may arrive unnormalized; they are scaled.
//
// Kinds: symmetric_bd, uniform, fmmc_logconcave, biased_rw, from_w,
// lw_optimal, budgeted, shuffle_site, spin_site, raw.

#include "mixcomp/chains.hpp"
#include "mixcomp/core.hpp"
#include "mixcomp/mixing.hpp"
#include "mixcomp/orders.hpp"
#include "mixcomp/structures.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>

namespace mixcomp::spec {

using nlohmann::json;

struct BuiltChain {
  Kernel kernel;  // carries the stationary pmf
  Pmf pi;
  Poset poset;
  std::string poset_text;  // grammar form, reproducible via parse_poset
  std::string kind;
  std::optional<chains::BdParams> bd;  // present when the kernel is tridiagonal
};

namespace detail_spec {

inline const json& require_field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end())
    throw validation_error(std::string("spec: missing field \"") + name + "\" for kind \"" +
                           doc.value("kind", "?") + "\"");
  return *it;
}

inline double require_number(const json& doc, const char* name) {
  const json& v = require_field(doc, name);
  if (!v.is_number()) throw validation_error(std::string("spec: field \"") + name + "\" must be a number");
  return v.get<double>();
}

inline int require_int(const json& doc, const char* name) {
  const json& v = require_field(doc, name);
  if (!v.is_number_integer()) throw validation_error(std::string("spec: field \"") + name + "\" must be an integer");
  return v.get<int>();
}

inline Vec require_vector(const json& doc, const char* name) {
  const json& v = require_field(doc, name);
  if (!v.is_array() || v.empty())
    throw validation_error(std::string("spec: field \"") + name + "\" must be a nonempty array");
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      throw validation_error(std::string("spec: field \"") + name + "\" must contain numbers only");
    out[static_cast<int>(i)] = v[i].get<double>();
  }
  return out;
}

}  // namespace detail_spec

// Weight vectors from documents and flags may arrive unnormalized; scale them.
inline Pmf pmf_from_weights(Vec w, const char* what) {
  double sum = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0)
      throw validation_error(std::string(what) + ": weights must be nonnegative and finite");
    sum += w[i];
  }
  if (!(sum > 0.0)) throw validation_error(std::string(what) + ": weights sum to 0");
  w /= sum;
  return Pmf(std::move(w));
}

// Poset grammar: "linear" (the state order), "bruhat:N" (strong Bruhat on
// permutations of 1..N), "product:SITES:SPINS" (coordinatewise on spin
// configurations). The resulting order must match n_states.
inline Poset parse_poset(const std::string& text, int n_states) {
  auto fit = [&](Poset p) {
    if (p.size() != n_states)
      throw validation_error("poset: \"" + text + "\" has " + std::to_string(p.size()) + " states, chain has " +
                             std::to_string(n_states));
    return p;
  };
  if (text == "linear") return fit(Poset::linear(n_states));
  if (text.rfind("bruhat:", 0) == 0) {
    int n = 0;
    if (std::sscanf(text.c_str(), "bruhat:%d", &n) != 1)
      throw validation_error("poset: malformed \"" + text + "\"");
    return fit(structures::bruhat_poset(structures::PermutationSpace(n)));
  }
  if (text.rfind("product:", 0) == 0) {
    int sites = 0, spins = 0;
    if (std::sscanf(text.c_str(), "product:%d:%d", &sites, &spins) != 2)
      throw validation_error("poset: malformed \"" + text + "\"");
    return fit(structures::product_order(structures::SpinSpace(sites, spins, {})));
  }
  throw validation_error("poset: unknown form \"" + text + "\" (expect linear, bruhat:N, product:SITES:SPINS)");
}

inline BuiltChain build_chain(const json& doc) {
  using namespace detail_spec;
  if (!doc.is_object()) throw validation_error("spec: document must be a JSON object");
  const std::string kind = require_field(doc, "kind").get<std::string>();

  std::optional<Kernel> kernel;
  std::optional<Pmf> pi;
  std::string poset_text = "linear";
  std::optional<Poset> poset;

  if (kind == "uniform") {
    kernel = chains::uniform_chain(require_int(doc, "n"));
  } else if (kind == "symmetric_bd") {
    kernel = chains::symmetric_bd(require_vector(doc, "p"));
  } else if (kind == "fmmc_logconcave") {
    Pmf target = pmf_from_weights(require_vector(doc, "pi"), "fmmc_logconcave");
    kernel = chains::to_kernel(chains::fmmc_logconcave(target));
    pi = std::move(target);
  } else if (kind == "biased_rw") {
    auto bd = chains::biased_rw(require_number(doc, "rho"), require_int(doc, "n"));
    pi = chains::bd_stationary(bd);
    kernel = chains::to_kernel(bd);
  } else if (kind == "from_w") {
    Pmf target = pmf_from_weights(require_vector(doc, "pi"), "from_w");
    kernel = chains::to_kernel(chains::from_w(chains::WParams{require_vector(doc, "w"), target}));
    pi = std::move(target);
  } else if (kind == "lw_optimal") {
    kernel = chains::lw_optimal_path(require_int(doc, "n"));
  } else if (kind == "budgeted") {
    Pmf target = pmf_from_weights(require_vector(doc, "pi"), "budgeted");
    kernel = chains::budgeted_min_tmix(target, require_number(doc, "c")).kernel;
    pi = std::move(target);
  } else if (kind == "shuffle_site") {
    const int n = require_int(doc, "n");
    structures::PermutationSpace space(n);
    const double sort_p = require_number(doc, "sort_probability");
    kernel = structures::shuffle_site_kernel(space, require_int(doc, "site"), sort_p);
    pi = structures::shuffle_stationary(space, sort_p);
    poset_text = "bruhat:" + std::to_string(n);
    poset = structures::bruhat_poset(space);
  } else if (kind == "spin_site") {
    const int rows = require_int(doc, "rows"), cols = require_int(doc, "cols");
    const int spins = doc.value("spins", 2);
    auto space = structures::SpinSpace::grid(rows, cols, spins);
    Pmf target = structures::ising_pmf(space, require_number(doc, "beta"));
    kernel = structures::spin_site_kernel(space, target, require_int(doc, "site"));
    pi = std::move(target);
    poset_text = "product:" + std::to_string(space.sites()) + ":" + std::to_string(spins);
    poset = structures::product_order(space);
  } else if (kind == "raw") {
    const json& rows = require_field(doc, "matrix");
    if (!rows.is_array() || rows.empty()) throw validation_error("raw: matrix must be a nonempty array of rows");
    const int n = static_cast<int>(rows.size());
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
        throw validation_error("raw: matrix must be square");
      for (int j = 0; j < n; ++j) {
        if (!rows[i][j].is_number()) throw validation_error("raw: matrix entries must be numbers");
        m(i, j) = rows[i][j].get<double>();
      }
    }
    kernel = Kernel(std::move(m));
    if (doc.contains("pi")) pi = pmf_from_weights(require_vector(doc, "pi"), "raw");
    if (doc.contains("poset")) poset_text = require_field(doc, "poset").get<std::string>();
  } else {
    throw validation_error("spec: unknown kind \"" + kind + "\"");
  }

  if (!pi) pi = stationary(*kernel);
  Kernel attached = kernel->with_stationary(*pi);
  if (!poset) poset = parse_poset(poset_text, attached.size());

  std::optional<chains::BdParams> bd;
  try {
    bd = chains::bd_from_kernel(attached);
  } catch (const validation_error&) {
  }
  return BuiltChain{std::move(attached), std::move(*pi), std::move(*poset), std::move(poset_text), kind,
                    std::move(bd)};
}

inline BuiltChain build_chain(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("spec: invalid JSON: ") + e.what());
  }
  return build_chain(doc);
}

// String literals would otherwise be ambiguous between the json and
// std::string overloads.
inline BuiltChain build_chain(const char* text) { return build_chain(std::string(text)); }

// Raw-kind document reproducing the chain exactly: matrix and pmf entries
// serialize with full round-trip precision, so re-building from this output
// yields bit-identical kernels (and therefore bit-identical traces). The
// monotone flag is null when the poset's down-set family exceeds `cap`.
inline json describe(const BuiltChain& built, size_t cap = orders::kDownSetCap) {
  json out;
  out["kind"] = "raw";
  out["source_kind"] = built.kind;
  json matrix = json::array();
  for (int i = 0; i < built.kernel.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < built.kernel.size(); ++j) row.push_back(built.kernel(i, j));
    matrix.push_back(std::move(row));
  }
  out["matrix"] = std::move(matrix);
  json pw = json::array();
  for (int i = 0; i < built.pi.size(); ++i) pw.push_back(built.pi(i));
  out["pi"] = std::move(pw);
  out["poset"] = built.poset_text;
  try {
    out["monotone"] = orders::is_monotone(built.kernel, built.poset, tol::kCompare, cap);
  } catch (const validation_error&) {
    out["monotone"] = nullptr;
  }
  out["reversible"] = is_reversible(built.kernel, built.pi);
  return out;
}

// ---- CSV emission ----

// Significant-digit formatting: '.' decimal point (C locale), "inf" for
// infinities, and magnitudes below 1e-13 snapped to 0 so that traces started
// at stationarity print as exact zeros.
inline std::string format_sig(double x, int precision = 9) {
  if (precision < 1 || precision > 17) throw validation_error("format: precision must be in 1..17");
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (std::abs(x) < 1e-13) x = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
  return buf;
}

inline const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols = {"tv", "sep", "l2", "linf", "hellinger", "kl_fwd", "kl_rev"};
  return cols;
}

inline double trace_value(const mixing::DistanceTraceRow& row, const std::string& column) {
  if (column == "tv") return row.tv;
  if (column == "sep") return row.sep;
  if (column == "l2") return row.l2;
  if (column == "linf") return row.linf;
  if (column == "hellinger") return row.hellinger;
  if (column == "kl_fwd") return row.kl_pi_rho;
  if (column == "kl_rev") return row.kl_rho_pi;
  throw validation_error("trace: unknown metric \"" + column + "\"");
}

// Header always emitted; one row per time step.
inline void write_trace_csv(std::ostream& os, const mixing::DistanceTrace& trace,
                            const std::vector<std::string>& columns, int precision = 9) {
  if (columns.empty()) throw validation_error("trace: no metrics selected");
  for (const auto& c : columns) trace_value(mixing::DistanceTraceRow{}, c);  // validate before emitting
  os << "t";
  for (const auto& c : columns) os << "," << c;
  os << "\n";
  for (size_t t = 0; t < trace.rows.size(); ++t) {
    os << t;
    for (const auto& c : columns) os << "," << format_sig(trace_value(trace.rows[t], c), precision);
    os << "\n";
  }
}

}  // namespace mixcomp::spec
