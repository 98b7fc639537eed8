#include "arithbh/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "arithbh/dual.hpp"
#include "arithbh/hamiltonian.hpp"
#include "arithbh/io.hpp"
#include "arithbh/lanczos.hpp"
#include "arithbh/spectral.hpp"
#include "arithbh/sweep.hpp"
#include "arithbh/thermo.hpp"
#include "arithbh/verify.hpp"

namespace arithbh::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelArgs {
  double U = 10.0;
  double mu = 0.0;
  double t = 1.0;
  std::size_t N = 150;

  HamiltonianParams params() const { return {U, mu, t, N}; }
};

struct AxisArgs {
  double mu_min = -3.0, mu_max = 7.0;
  std::size_t mu_points = 101;
  double t_min = 0.1, t_max = 3.0;
  std::size_t t_points = 101;

  std::vector<double> mu() const {
    if (mu_points == 0) throw UsageError("--mu-points must be >= 1");
    if (mu_points > 1 && !(mu_max > mu_min)) throw UsageError("--mu-max must exceed --mu-min");
    return linspace(mu_min, mu_max, mu_points);
  }
  std::vector<double> t() const {
    if (t_points == 0) throw UsageError("--t-points must be >= 1");
    if (t_points > 1 && !(t_max > t_min)) throw UsageError("--t-max must exceed --t-min");
    return linspace(t_min, t_max, t_points);
  }
};

void add_model(CLI::App* sub, ModelArgs& m, bool with_t = true, bool with_mu = true) {
  sub->add_option("--U", m.U, "on-site coupling")->capture_default_str();
  if (with_mu) sub->add_option("--mu", m.mu, "chemical potential")->capture_default_str();
  if (with_t) sub->add_option("--t", m.t, "hopping amplitude")->capture_default_str();
  sub->add_option("--N", m.N, "truncation size of F_N")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_axes(CLI::App* sub, AxisArgs& a) {
  sub->add_option("--mu-min", a.mu_min)->capture_default_str();
  sub->add_option("--mu-max", a.mu_max)->capture_default_str();
  sub->add_option("--mu-points", a.mu_points)->capture_default_str();
  sub->add_option("--t-min", a.t_min)->capture_default_str();
  sub->add_option("--t-max", a.t_max)->capture_default_str();
  sub->add_option("--t-points", a.t_points)->capture_default_str();
}

SolverKind solver_from(const std::string& s) {
  if (s == "auto") return SolverKind::automatic;
  if (s == "dense") return SolverKind::dense;
  if (s == "lanczos") return SolverKind::lanczos;
  throw UsageError("unknown solver '" + s + "'");
}

json params_json(const HamiltonianParams& p) {
  return {{"U", p.U}, {"mu", p.mu}, {"t", p.t}, {"N", p.N}};
}

void write_json(const fs::path& path, const json& j) {
  write_file(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

/// Writes `body` to `path`, or to `out` when path is empty or "-".
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(out);
  } else {
    write_file(path, body);
  }
}

void write_grid_bundle(const std::string& prefix, const PhaseGrid& grid, json extra = json::object()) {
  write_file(prefix + ".csv", [&](std::ostream& o) { write_grid_csv(o, grid); });
  json side = grid_sidecar(grid);
  for (auto& [k, v] : extra.items()) side[k] = v;
  write_json(prefix + ".json", side);
  write_file(prefix + ".dat", [&](std::ostream& o) { write_gnuplot(o, grid); });
}

std::map<Natural, double> parse_theta(const std::string& text) {
  std::map<Natural, double> theta;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--theta expects p:angle pairs, got '" + item + "'");
    try {
      theta[std::stoull(item.substr(0, colon))] = parse_double(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--theta: cannot parse '" + item + "'");
    }
  }
  return theta;
}

void add_config(CLI::App* sub, std::string& path) {
  sub->add_option("--config", path, "TOML file of option = value lines; explicit flags win");
}

// Splices the keys of a flat TOML file in front of the subcommand's own flags.
std::vector<std::string> expand_config(const std::vector<std::string>& args, const std::vector<std::string>& names) {
  std::vector<std::string> rest;
  std::string file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (file.empty()) return rest;
  if (!std::filesystem::exists(file)) throw IoError("cannot read config " + file);
  const auto sub = std::find_if(rest.begin(), rest.end(), [&](const std::string& a) {
    return std::find(names.begin(), names.end(), a) != names.end();
  });
  if (sub == rest.end()) throw UsageError("--config must follow a subcommand");
  std::vector<std::string> injected;
  for (const auto& item : CLI::ConfigTOML().from_file(file)) {
    if (!item.parents.empty() || item.inputs.empty() || item.name == "++" || item.name == "--") continue;
    injected.push_back("--" + item.name + "=" + item.inputs.front());
  }
  rest.insert(sub + 1, injected.begin(), injected.end());
  return rest;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact diagonalization of the arithmetic Bose-Hubbard model", "arithbh"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker threads (default: ARITHBH_THREADS or all cores)");

  // build
  ModelArgs build_m;
  std::string build_out = "hamiltonian.mtx";
  auto* build = app.add_subcommand("build", "assemble H on F_N and write MatrixMarket + JSON");
  add_config(build, config_path);
  add_model(build, build_m);
  build->add_option("-o,--output", build_out, "matrix file")->capture_default_str();

  // spectrum
  ModelArgs spec_m;
  std::string spec_out;
  std::size_t spec_count = all_eigenpairs;
  std::string spec_solver = "auto";
  bool spec_single = false;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues with <N> and residuals as CSV");
  add_config(spectrum, config_path);
  add_model(spectrum, spec_m);
  spectrum->add_option("-k,--count", spec_count, "lowest eigenpairs to keep (default all)");
  spectrum->add_option("--solver", spec_solver, "auto, dense or lanczos")->capture_default_str();
  spectrum->add_flag("--single-particle", spec_single, "one-particle block only, with the closed form");
  spectrum->add_option("-o,--output", spec_out, "CSV file (default stdout)");

  // gap-sweep
  ModelArgs gap_m{0.0, 0.0, -0.1, 1024};
  double ratio_min = 0.0, ratio_max = 100.0;
  std::size_t ratio_points = 101;
  std::string gap_solver = "lanczos";
  std::string gap_out;
  auto* gapsweep = app.add_subcommand("gap-sweep", "E_1 - E_0 against U/|t|");
  add_config(gapsweep, config_path);
  gapsweep->add_option("--mu", gap_m.mu)->capture_default_str();
  gapsweep->add_option("--t", gap_m.t)->capture_default_str();
  gapsweep->add_option("--N", gap_m.N)->capture_default_str()->check(CLI::PositiveNumber);
  gapsweep->add_option("--ratio-min", ratio_min)->capture_default_str();
  gapsweep->add_option("--ratio-max", ratio_max)->capture_default_str();
  gapsweep->add_option("--points", ratio_points)->capture_default_str();
  gapsweep->add_option("--solver", gap_solver, "auto, dense or lanczos")->capture_default_str();
  gapsweep->add_option("-o,--output", gap_out, "CSV file (default stdout)");

  // phase-diagram
  ModelArgs pd_m;
  AxisArgs pd_axes{-3.0, 7.0, 51, 0.0, 3.0, 51};
  std::size_t pd_level = 0;
  std::string pd_operator = "hamiltonian";
  std::string pd_shift = "literal";
  std::string pd_out = "phase";
  auto* phase = app.add_subcommand("phase-diagram", "<N> of a chosen level over a (mu, t) grid");
  add_config(phase, config_path);
  add_model(phase, pd_m, false, false);
  add_axes(phase, pd_axes);
  phase->add_option("--level", pd_level, "0 = ground state, 1 = first excited, ...")->capture_default_str();
  phase->add_option("--operator", pd_operator, "hamiltonian or grand (H - c N)")->capture_default_str();
  phase->add_option("--grand-shift", pd_shift, "literal or single")->capture_default_str();
  phase->add_option("-o,--output", pd_out, "output prefix")->capture_default_str();

  // partition
  ModelArgs pf_m;
  AxisArgs pf_axes;
  double beta = 10.0;
  std::string pf_shift = "literal";
  std::string pf_out = "logz";
  std::string threshold_rule = "max";
  double threshold_factor = 0.25;
  double threshold = 0.0;
  std::size_t min_region = 9;
  auto* partition = app.add_subcommand("partition", "log Z over a (mu, t) grid, Laplacian ridges");
  add_config(partition, config_path);
  add_model(partition, pf_m, false, false);
  add_axes(partition, pf_axes);
  partition->add_option("--beta", beta)->capture_default_str()->check(CLI::PositiveNumber);
  partition->add_option("--grand-shift", pf_shift, "literal or single")->capture_default_str();
  partition->add_option("--threshold", threshold, "absolute ridge threshold (overrides the rule)");
  partition->add_option("--threshold-rule", threshold_rule, "max or median")->capture_default_str();
  partition->add_option("--threshold-factor", threshold_factor)->capture_default_str();
  partition->add_option("--min-region", min_region, "cells for a complement region to count")->capture_default_str();
  partition->add_option("-o,--output", pf_out, "output prefix")->capture_default_str();

  // flow
  ModelArgs flow_m{10.0, 0.0, 1.0, 150};
  double tau = 1.0;
  std::uint64_t flow_seed = 1;
  std::string theta_text;
  std::string flow_out;
  auto* flow = app.add_subcommand("flow", "conjugate H by sigma_tau and compare spectra");
  add_config(flow, config_path);
  add_model(flow, flow_m);
  flow->add_option("--tau", tau)->capture_default_str();
  flow->add_option("--seed", flow_seed, "random angles when --theta is absent")->capture_default_str();
  flow->add_option("--theta", theta_text, "explicit angles, e.g. 2:1,3:0.5,5:0");
  flow->add_option("-o,--output", flow_out, "write H_tau as complex Hermitian MatrixMarket");

  // verify
  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_config(verify, config_path);
  verify->add_option("--N", vopt.N)->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--depth", vopt.depth, "Kastrup truncation depth M")->capture_default_str();
  verify->add_option("--seed", vopt.seed)->capture_default_str();
  verify->add_option("--samples", vopt.random_params)->capture_default_str();
  verify->add_option("--perturb", vopt.perturbation, "inject an error (testing hook)");

  std::vector<std::string> expanded;
  try {
    std::vector<std::string> names;
    for (const auto* sub : app.get_subcommands({})) names.push_back(sub->get_name());
    expanded = expand_config(args, names);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*build) {
      const auto params = build_m.params();
      params.validate();
      const auto start = std::chrono::steady_clock::now();
      const HamiltonianModel model(params.N);
      const auto H = model.assemble(params);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_file(build_out, [&](std::ostream& o) { write_matrix_market(o, H); });
      write_json(build_out + ".json", {{"params", params_json(params)},
                                       {"structural_nonzeros", H.structural_nonzeros()},
                                       {"stored_entries", H.stored_entries()},
                                       {"build_seconds", seconds}});
      out << "wrote " << build_out << " (" << params.N << "x" << params.N << ", " << H.structural_nonzeros()
          << " structural nonzeros)\n";
    } else if (*spectrum) {
      const auto params = spec_m.params();
      params.validate();
      if (spec_count == 0) throw UsageError("--count must be >= 1");
      EigenOptions eo;
      eo.solver = solver_from(spec_solver);
      if (spec_single) {
        const auto block = single_particle_block(params);
        if (block.rows() == 0) throw UsageError("--single-particle needs N >= 2");
        const auto numeric = eigensolve(block, spec_count);
        std::vector<SpectrumRow> rows;
        for (std::size_t i = 0; i < numeric.size(); ++i) {
          const auto c = static_cast<Eigen::Index>(i);
          rows.push_back({i, numeric.eigenvalues[c], 1.0, numeric.residuals[c]});
        }
        emit(spec_out, out, [&](std::ostream& o) { write_spectrum_csv(o, rows); });
        auto closed = single_particle_spectrum(params);
        std::sort(closed.begin(), closed.end());
        double dev = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) dev = std::max(dev, std::abs(rows[i].eigenvalue - closed[i]));
        err << "closed form max deviation " << format_double(dev) << '\n';
      } else {
        const HamiltonianModel model(params.N);
        const auto s = eigensolve_blocked(model, params, spec_count, eo);
        emit(spec_out, out, [&](std::ostream& o) { write_spectrum_csv(o, s); });
      }
    } else if (*gapsweep) {
      if (ratio_points == 0) throw UsageError("--points must be >= 1");
      if (gap_m.t == 0.0) throw UsageError("--t must be nonzero, the sweep is in U/|t|");
      EigenOptions eo;
      eo.solver = solver_from(gap_solver);
      const auto ratios = linspace(ratio_min, ratio_max, ratio_points);
      const auto pts = gap_sweep(gap_m.N, gap_m.mu, gap_m.t, ratios, eo, threads);
      emit(gap_out, out, [&](std::ostream& o) {
        o << "ratio,U,E0,E1,gap\n";
        for (const auto& p : pts) {
          o << format_double(p.ratio) << ',' << format_double(p.U) << ',' << format_double(p.E0) << ','
            << format_double(p.E1) << ',' << format_double(p.gap) << '\n';
        }
      });
      std::vector<double> g;
      for (const auto& p : pts) g.push_back(p.gap);
      err << "monotone segments: " << monotone_segments(g) << '\n';
    } else if (*phase) {
      PhaseOptions po;
      po.level = pd_level;
      if (pd_operator == "hamiltonian") {
        po.op = PhaseOperator::hamiltonian;
      } else if (pd_operator == "grand") {
        po.op = PhaseOperator::grand;
      } else {
        throw UsageError("--operator must be hamiltonian or grand");
      }
      po.shift = grand_shift_from_string(pd_shift);
      po.threads = threads;
      const auto grid = phase_diagram_ground(pd_m.U, pd_m.N, pd_axes.mu(), pd_axes.t(), po);
      write_grid_bundle(pd_out, grid);
      std::vector<double> seen;
      std::size_t flagged = 0;
      for (std::size_t k = 0; k < grid.values.size(); ++k) {
        if (grid.flags[k]) {
          ++flagged;
        } else if (std::find(seen.begin(), seen.end(), grid.values[k]) == seen.end()) {
          seen.push_back(grid.values[k]);
        }
      }
      std::sort(seen.begin(), seen.end());
      out << "values off degeneracies:";
      for (double v : seen) out << ' ' << v;
      out << "\ndegenerate cells: " << flagged << '\n';
    } else if (*partition) {
      GridOptions go;
      go.shift = grand_shift_from_string(pf_shift);
      go.threads = threads;
      auto grid = log_z_grid(pf_m.U, beta, pf_m.N, pf_axes.mu(), pf_axes.t(), go);
      write_grid_bundle(pf_out, grid);
      if (grid.rows() >= 3 && grid.cols() >= 3) {
        auto filtered = laplacian_filter(grid);
        double th = threshold;
        if (th <= 0.0) {
          if (threshold_rule == "max") {
            th = max_fraction_threshold(filtered, threshold_factor);
          } else if (threshold_rule == "median") {
            th = median_threshold(filtered, threshold_factor);
          } else {
            throw UsageError("--threshold-rule must be max or median");
          }
        }
        filtered.meta.threshold = th;
        const auto ridges = detect_singular_lines(filtered, th);
        const auto regions = complement_regions(filtered.rows(), filtered.cols(), ridges, min_region);
        json comps = json::array();
        for (const auto& c : ridges) comps.push_back(c.size());
        write_grid_bundle(pf_out + "_laplacian", filtered,
                          {{"ridge_component_sizes", comps},
                           {"regions", regions.regions},
                           {"region_fragments", regions.fragments},
                           {"min_region_cells", min_region}});
        out << "threshold " << format_double(th) << ": " << ridges.size() << " ridge components, "
            << regions.regions << " regions (" << regions.fragments << " fragments below " << min_region
            << " cells)\n";
      } else {
        out << "grid smaller than 3x3, Laplacian skipped\n";
      }
    } else if (*flow) {
      const auto params = flow_m.params();
      params.validate();
      FlowSpec spec;
      if (theta_text.empty()) {
        spec = random_flow_spec(params.N, tau, flow_seed);
      } else {
        spec.theta = parse_theta(theta_text);
        spec.tau = tau;
      }
      spec.validate(params.N);
      const auto H = build_hamiltonian(params);
      const auto Ht = conjugated_hamiltonian(spec, H);
      if (!flow_out.empty()) write_file(flow_out, [&](std::ostream& o) { write_matrix_market(o, Ht); });
      const Eigen::VectorXd ref = eigensolve(H.to_dense()).eigenvalues;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Ht.to_dense(), Eigen::EigenvaluesOnly);
      const double dev = (es.eigenvalues() - ref).cwiseAbs().maxCoeff();
      out << "tau " << format_double(tau) << ": max |E(H_tau) - E(H)| = " << format_double(dev) << '\n';
      if (dev > 1e-10) return numerical;
    } else if (*verify) {
      const auto report = run_verify(vopt);
      for (const auto& w : report.warnings) err << "warning: " << w << '\n';
      for (const auto& c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(22) << c.name << " max deviation "
            << std::scientific << std::setprecision(3) << c.max_deviation << " (tol " << c.tolerance << ")"
            << std::defaultfloat;
        if (!c.detail.empty()) out << "  " << c.detail;
        out << '\n';
      }
      return report.passed() ? ok : numerical;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return io;
  } catch (const NonConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const std::overflow_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return numerical;
  }
  return ok;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace arithbh::cli
