// Command-line front end: build chains from JSON documents, trace distances
// to stationarity, compare kernels in the down-set order, estimate mixing
// times, derive absorbing duals, optimize path designs, and run the
// self-check suites.
//
// Exit codes: 0 success, 1 self-check failure, 2 invalid input, 3 numeric
// failure (overflow, non-convergence).

#include <clocale>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixcomp/mixcomp.hpp"

namespace {

using namespace mixcomp;
using nlohmann::json;

std::string read_document(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

spec::BuiltChain load_chain(const std::string& path) { return spec::build_chain(read_document(path)); }

// --out FILE redirects the primary output; stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw validation_error("cannot open output file \"" + path + "\"");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

Vec parse_weights(const std::string& text) {
  const auto parts = split_csv(text);
  if (parts.empty()) throw validation_error("empty weight list");
  Vec w(static_cast<int>(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i) {
    try {
      size_t used = 0;
      w[static_cast<int>(i)] = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw validation_error("bad weight \"" + parts[i] + "\"");
    }
  }
  return w;
}

Pmf start_pmf(const spec::BuiltChain& built, const std::string& start) {
  if (start == "pi") return built.pi;
  int state = -1;
  try {
    size_t used = 0;
    state = std::stoi(start, &used);
    if (used != start.size()) throw std::invalid_argument(start);
  } catch (const std::exception&) {
    throw validation_error("--start must be a state index or \"pi\"");
  }
  if (state < 0 || state >= built.kernel.size())
    throw validation_error(detail::describe_index("--start out of range: state ", state));
  return point_mass(built.kernel.size(), state);
}

std::string format_members(const std::vector<int>& members) {
  std::string out = "{";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(members[i]);
  }
  return out + "}";
}

int cmd_build(const std::string& path, const std::string& out_path, size_t cap) {
  const auto built = load_chain(path);
  Output out(out_path);
  out.stream() << spec::describe(built, cap).dump(2) << "\n";
  return 0;
}

int cmd_trace(const std::string& path, const std::string& out_path, const std::string& start, int horizon,
              const std::string& metrics, int precision) {
  const auto built = load_chain(path);
  const auto trace = mixing::trace(built.kernel, start_pmf(built, start), horizon);
  const auto columns = metrics == "all" ? spec::trace_columns() : split_csv(metrics);
  Output out(out_path);
  spec::write_trace_csv(out.stream(), trace, columns, precision);
  return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, const std::string& out_path,
                const std::string& poset_text, double tolerance, size_t cap) {
  const auto a = load_chain(path_a);
  const auto b = load_chain(path_b);
  if (a.kernel.size() != b.kernel.size()) throw validation_error("compare: chains have different state counts");
  if ((a.pi.weights() - b.pi.weights()).lpNorm<Eigen::Infinity>() > 1e-9)
    throw validation_error("compare: stationary pmfs differ; the order needs a shared pi");
  const Poset poset =
      poset_text.empty() ? a.poset : spec::parse_poset(poset_text, a.kernel.size());
  const auto forward = orders::compare(a.kernel, b.kernel, a.pi, poset, tolerance, cap);
  const auto reverse = orders::compare(b.kernel, a.kernel, a.pi, poset, tolerance, cap);
  const char* verdict = forward.holds ? (reverse.holds ? "equal" : "A<=B")
                                      : (reverse.holds ? "B<=A" : "incomparable");
  Output out(out_path);
  out.stream() << verdict << "\n"
               << "forward worst=" << spec::format_sig(forward.worst_violation, 6)
               << " witness_d=" << format_members(forward.witness_d)
               << " witness_e=" << format_members(forward.witness_e) << "\n"
               << "reverse worst=" << spec::format_sig(reverse.worst_violation, 6)
               << " witness_d=" << format_members(reverse.witness_d)
               << " witness_e=" << format_members(reverse.witness_e) << "\n";
  return 0;
}

int cmd_tmix(const std::string& path, const std::string& out_path, const std::string& method, long samples,
             uint64_t seed, int precision) {
  const auto built = load_chain(path);
  std::vector<duality::TmixReport> reports;
  if (method == "auto") {
    if (built.bd) {
      reports.push_back(duality::tmix_closed(*built.bd, built.pi));
      reports.push_back(duality::tmix_first_step(built.kernel));
    } else {
      reports.push_back(duality::tmix_first_step(built.kernel));
    }
  } else if (method == "closed_form") {
    if (!built.bd) throw validation_error("tmix: closed_form needs a birth-and-death chain");
    reports.push_back(duality::tmix_closed(*built.bd, built.pi));
  } else if (method == "first_step") {
    reports.push_back(duality::tmix_first_step(built.kernel));
  } else if (method == "monte_carlo") {
    reports.push_back(duality::tmix_monte_carlo(built.kernel, samples, seed));
  } else {
    throw validation_error("tmix: unknown method \"" + method + "\"");
  }
  Output out(out_path);
  for (const auto& r : reports) {
    out.stream() << duality::method_name(r.method) << " " << spec::format_sig(r.value, precision);
    if (r.se) out.stream() << " se " << spec::format_sig(*r.se, 6);
    out.stream() << "\n";
  }
  if (reports.size() == 2)
    out.stream() << "cross_check_diff " << spec::format_sig(std::abs(reports[0].value - reports[1].value), 3)
                 << "\n";
  return 0;
}

int cmd_dual(const std::string& path, const std::string& out_path, int survival_horizon, int precision) {
  const auto built = load_chain(path);
  if (!built.bd) throw validation_error("dual: chain is not birth-and-death");
  const auto dual = duality::ssd_dual(*built.bd, built.pi);
  Output out(out_path);
  if (survival_horizon >= 0) {
    const Vec surv = duality::dual_survival(dual, survival_horizon);
    out.stream() << "t,survival\n";
    for (int t = 0; t < surv.size(); ++t)
      out.stream() << t << "," << spec::format_sig(surv[t], precision) << "\n";
  } else {
    out.stream() << "state,q_star,p_star\n";
    for (int i = 0; i < dual.states(); ++i)
      out.stream() << i << "," << spec::format_sig(dual.q_star[i], precision) << ","
                   << spec::format_sig(dual.p_star[i], precision) << "\n";
  }
  return 0;
}

int cmd_spectrum(const std::string& path, const std::string& out_path, int precision) {
  const auto built = load_chain(path);
  const auto spectrum = spectral::spectrum_reversible(built.kernel, built.pi);
  Output out(out_path);
  out.stream() << "i,eigenvalue\n";
  for (int i = 0; i < spectrum.eigenvalues.size(); ++i)
    out.stream() << i << "," << spec::format_sig(spectrum.eigenvalues[i], precision) << "\n";
  out.stream() << "# slem=" << spec::format_sig(spectral::slem(built.kernel, built.pi), precision)
               << " relaxation_time="
               << spec::format_sig(spectral::relaxation_time(built.kernel, built.pi), precision) << "\n";
  return 0;
}

int cmd_optimize(const std::string& mode, const std::string& pi_text, double budget, const std::string& out_path,
                 size_t cap) {
  if (pi_text.empty()) throw validation_error("optimize: --pi is required");
  const Pmf pi = spec::pmf_from_weights(parse_weights(pi_text), "optimize");
  std::optional<chains::LwOptimum> lw;
  Kernel kernel = [&] {
    if (mode == "fmmc_lw") {
      lw = chains::fmmc_lw(pi);
      return lw->kernel;
    }
    if (mode == "budgeted") {
      if (!(budget > 0.0)) throw validation_error("optimize: budgeted needs --c > 0");
      return chains::budgeted_min_tmix(pi, budget).kernel;
    }
    throw validation_error("optimize: mode must be fmmc_lw or budgeted");
  }();
  spec::BuiltChain built{kernel, pi, Poset::linear(kernel.size()), "linear", mode,
                         chains::bd_from_kernel(kernel)};
  json doc = spec::describe(built, cap);
  doc["tmix"] = duality::tmix_closed(*built.bd, built.pi).value;
  if (lw) doc["w_star"] = lw->w_star;
  Output out(out_path);
  out.stream() << doc.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& which) {
  const auto results = which == "all" ? verify::run_all() : std::vector<verify::VerifyResult>{verify::run_suite(which)};
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"finite Markov chain comparison, mixing, and path-design toolkit"};
  app.require_subcommand(1);

  std::string spec_path, spec_path_b, out_path, start = "0", metrics = "all", method = "auto";
  std::string poset_text, mode, pi_text, suite = "all";
  int horizon = 20, precision = 9, survival_horizon = -1;
  double tolerance = mixcomp::tol::kCompare, budget = 0.0;
  long samples = 1'000'000;
  uint64_t seed = mixcomp::duality::kDefaultSeed;
  size_t cap = mixcomp::orders::kDownSetCap;

  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "write output to a file"); };
  auto add_precision = [&](CLI::App* cmd) {
    cmd->add_option("--precision", precision, "significant digits, 1..17 (default 9)");
  };

  auto* build = app.add_subcommand("build", "build a chain and print its full description");
  build->add_option("spec", spec_path, "chain document (path or - for stdin)")->required();
  build->add_option("--cap-downsets", cap, "down-set enumeration cap");
  add_out(build);

  auto* trace = app.add_subcommand("trace", "distance-to-stationarity trace as CSV");
  trace->add_option("spec", spec_path, "chain document (path or - for stdin)")->required();
  trace->add_option("--start", start, "initial state index, or \"pi\" for stationary start");
  trace->add_option("--horizon", horizon, "last time step (default 20)");
  trace->add_option("--metrics", metrics, "comma-separated metric columns, or \"all\"");
  add_precision(trace);
  add_out(trace);

  auto* compare = app.add_subcommand("compare", "order two kernels by down-set inner products");
  compare->add_option("spec_a", spec_path, "first chain document")->required();
  compare->add_option("spec_b", spec_path_b, "second chain document")->required();
  compare->add_option("--poset", poset_text, "override the order (linear | bruhat:N | product:SITES:SPINS)");
  compare->add_option("--tol", tolerance, "violation tolerance (default 1e-10)");
  compare->add_option("--cap-downsets", cap, "down-set enumeration cap");
  add_out(compare);

  auto* tmix = app.add_subcommand("tmix", "expected mixing time from state 0");
  tmix->add_option("spec", spec_path, "chain document (path or - for stdin)")->required();
  tmix->add_option("--method", method, "auto | closed_form | first_step | monte_carlo");
  tmix->add_option("--samples", samples, "monte_carlo sample count (default 1000000)");
  tmix->add_option("--seed", seed, "monte_carlo seed");
  add_precision(tmix);
  add_out(tmix);

  auto* dual = app.add_subcommand("dual", "absorbing dual walk of a path chain");
  dual->add_option("spec", spec_path, "chain document (path or - for stdin)")->required();
  dual->add_option("--survival-horizon", survival_horizon,
                   "print survival probabilities through this time instead of the step parameters");
  add_precision(dual);
  add_out(dual);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of a reversible kernel");
  spectrum->add_option("spec", spec_path, "chain document (path or - for stdin)")->required();
  add_precision(spectrum);
  add_out(spectrum);

  auto* optimize = app.add_subcommand("optimize", "fastest-mixing path designs for a target pmf");
  optimize->add_option("mode", mode, "fmmc_lw | budgeted")->required();
  optimize->add_option("--pi", pi_text, "target stationary weights, comma-separated")->required();
  optimize->add_option("--c", budget, "per-state rate budget (budgeted mode)");
  optimize->add_option("--cap-downsets", cap, "down-set enumeration cap");
  add_out(optimize);

  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  verify->add_option("suite", suite, "suite name, or \"all\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(spec_path, out_path, cap);
    if (trace->parsed()) return cmd_trace(spec_path, out_path, start, horizon, metrics, precision);
    if (compare->parsed()) return cmd_compare(spec_path, spec_path_b, out_path, poset_text, tolerance, cap);
    if (tmix->parsed()) return cmd_tmix(spec_path, out_path, method, samples, seed, precision);
    if (dual->parsed()) return cmd_dual(spec_path, out_path, survival_horizon, precision);
    if (spectrum->parsed()) return cmd_spectrum(spec_path, out_path, precision);
    if (optimize->parsed()) return cmd_optimize(mode, pi_text, budget, out_path, cap);
    if (verify->parsed()) return cmd_verify(suite);
  } catch (const mixcomp::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mixcomp::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
