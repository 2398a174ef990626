// Command line front end: entropy, schmidt-table, verify, angles, sweep, fit, dump-gs.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "motzkin/format.hpp"
#include "motzkin/groundstate.hpp"
#include "motzkin/hamiltonian.hpp"
#include "motzkin/schmidt.hpp"
#include "motzkin/sweep.hpp"

using namespace motzkin;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailure = 2;

// Raised for bad user input found after flag parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

struct ChainFlags {
  int two_n = 0;
  int s = 1;
  std::optional<double> t;
  std::optional<std::uint64_t> angles_seed;
  double theta_first = 0.7;
  std::string spec_file;

  void attach(CLI::App *cmd, bool allow_angles) {
    cmd->add_option("--two-n", two_n, "number of sites (even)");
    cmd->add_option("--s", s, "number of colors")->capture_default_str();
    cmd->add_option("--t", t, "uniform deformation parameter");
    if (allow_angles) {
      cmd->add_option("--angles-seed", angles_seed, "use a random tuned angle set (s = 1)");
      cmd->add_option("--theta-first", theta_first, "first theta of the tuned angle set")->capture_default_str();
      cmd->add_option("--spec", spec_file, "read the chain from a config record instead");
    }
  }

  ChainSpec resolve() const {
    if (!spec_file.empty()) {
      if (t || angles_seed) throw UsageError("--spec excludes --t and --angles-seed");
      return parse_config(read_file(spec_file));
    }
    if (t && angles_seed) throw UsageError("give either --t or --angles-seed, not both");
    if (!t && !angles_seed) throw UsageError("one of --t or --angles-seed is required");
    if (two_n == 0) throw UsageError("--two-n is required");
    ChainSpec spec;
    if (angles_seed) {
      if (s != 1) throw UsageError("tuned angle sets exist only for s = 1");
      spec = generate_tuned_angles(two_n, *angles_seed, theta_first);
    } else {
      spec = ChainSpec::uniform(two_n, s, *t);
    }
    validate(spec);
    return spec;
  }
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Area-weighted colored Motzkin chain: spectra, ground states and entanglement"};
  app.require_subcommand(1);

  // entropy
  int e_s = 1, e_n = 0;
  double e_t = 1.0;
  bool e_base2 = false, e_ground = false;
  auto *entropy = app.add_subcommand("entropy", "half-chain entanglement entropy S_n");
  entropy->add_option("--s", e_s, "number of colors")->required();
  entropy->add_option("--t", e_t, "deformation parameter")->required();
  entropy->add_option("--n", e_n, "half-chain length")->required();
  entropy->add_flag("--base2", e_base2, "report bits instead of nats");
  entropy->add_flag("--ground-state", e_ground, "t is the Hamiltonian deformation (evaluates the recurrence at t^2)");

  // schmidt-table
  int st_s = 1, st_n = 0;
  double st_t = 1.0;
  bool st_ground = false;
  auto *table = app.add_subcommand("schmidt-table", "m, log M_{n,m}, p_{n,m} as CSV");
  table->add_option("--s", st_s, "number of colors")->required();
  table->add_option("--t", st_t, "deformation parameter")->required();
  table->add_option("--n", st_n, "half-chain length")->required();
  table->add_flag("--ground-state", st_ground, "t is the Hamiltonian deformation (evaluates the recurrence at t^2)");

  // verify
  ChainFlags v_chain;
  int v_k = 2;
  bool v_csv = false;
  auto *verify = app.add_subcommand("verify", "build H, check the explicit ground state and the null space");
  v_chain.attach(verify, true);
  verify->add_option("--k", v_k, "number of low eigenvalues")->capture_default_str();
  verify->add_flag("--csv", v_csv, "also print the spectrum CSV row");

  // angles
  int a_two_n = 0;
  std::uint64_t a_seed = 0;
  double a_theta = 0.7;
  auto *angles = app.add_subcommand("angles", "print a random tuned angle set as a config record");
  angles->add_option("--two-n", a_two_n, "number of sites (even)")->required();
  angles->add_option("--seed", a_seed, "random seed")->required();
  angles->add_option("--theta-first", a_theta, "first theta")->capture_default_str();

  // sweep
  std::string sw_plan, sw_out;
  std::optional<int> sw_jobs;
  auto *sweep = app.add_subcommand("sweep", "entropy curves over a grid of (s, t)");
  sweep->add_option("--plan", sw_plan, "plan file")->required();
  sweep->add_option("--out", sw_out, "output CSV (overrides the plan)");
  sweep->add_option("--jobs", sw_jobs, "worker threads (overrides the plan)");

  // fit
  std::string f_in, f_model = "all";
  std::optional<int> f_s;
  std::optional<double> f_t;
  int f_nmin = 1, f_nmax = kMaxProfileN;
  auto *fit = app.add_subcommand("fit", "fit S_n against n, sqrt n, log n or a constant");
  fit->add_option("--in", f_in, "sweep CSV")->required();
  fit->add_option("--model", f_model, "linear, sqrt, log, constant or all")->capture_default_str();
  fit->add_option("--s", f_s, "select one grid point");
  fit->add_option("--t", f_t, "select one grid point");
  fit->add_option("--n-min", f_nmin, "smallest n used");
  fit->add_option("--n-max", f_nmax, "largest n used");

  // dump-gs
  ChainFlags d_chain;
  std::string d_out;
  auto *dump = app.add_subcommand("dump-gs", "write the explicit ground state as walk/log-weight lines");
  d_chain.attach(dump, true);
  dump->add_option("--out", d_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (*entropy) {
      const double t = e_ground ? e_t * e_t : e_t;
      std::cout << format_double(entanglement_entropy(e_n, e_s, t, e_base2)) << "\n";
    } else if (*table) {
      const auto p = st_ground ? ground_state_profile(st_n, st_s, st_t) : profile(st_n, st_s, st_t);
      std::cout << "m,logM,p\n";
      for (int m = 0; m <= p.n; ++m)
        std::cout << m << "," << format_double(p.log_m[m].log()) << "," << format_double(p.p[m]) << "\n";
    } else if (*verify) {
      const auto spec = v_chain.resolve();
      if (v_k < 2) throw UsageError("--k must be >= 2");
      DiagonalizeOptions opts;
      opts.hamiltonian.dimension_cap = dimension_cap_from_env();
      const double res = residual(spec, build_ground_state(spec).state_vector(), opts.hamiltonian);
      const auto report = diagonalize_low(spec, v_k, opts);
      const bool res_ok = res < 1e-10;
      const bool null_ok = report.null_dim == 1;
      std::cout << "residual<1e-10 " << (res_ok ? "PASS" : "FAIL") << "; null_dim=" << report.null_dim << " "
                << (null_ok ? "PASS" : "FAIL") << "\n";
      if (v_csv) std::cout << kSpectrumCsvHeader << "\n" << spectrum_csv_row(spec, report) << "\n";
      std::cerr << "explicit ground state residual " << format_double(res) << "; lowest eigenvalues";
      for (double e : report.lowest_eigenvalues) std::cerr << " " << format_double(e);
      std::cerr << "\n";
      return res_ok && null_ok ? kExitOk : kExitFailure;
    } else if (*angles) {
      std::cout << to_config(generate_tuned_angles(a_two_n, a_seed, a_theta));
    } else if (*sweep) {
      auto plan = parse_plan(read_file(sw_plan));
      if (!sw_out.empty()) plan.output = sw_out;
      if (sw_jobs) plan.jobs = *sw_jobs;
      validate(plan);
      if (plan.output.empty()) throw UsageError("no output file: pass --out or set out= in the plan");
      const auto rows = run_sweep(plan);
      write_sweep_csv(plan.output, rows);
      std::size_t bad = 0;
      for (const auto &r : rows)
        if (r.status != "ok") ++bad;
      std::cerr << rows.size() << " rows written to " << plan.output.string() << " (" << bad << " not ok)\n";
    } else if (*fit) {
      if (f_s.has_value() != f_t.has_value()) throw UsageError("--s and --t select a grid point together");
      std::vector<SweepRow> slice;
      std::optional<std::pair<int, double>> point;
      for (const auto &r : parse_sweep_csv(read_file(f_in))) {
        if (r.n < f_nmin || r.n > f_nmax) continue;
        if (f_s && (r.s != *f_s || r.t != *f_t)) continue;
        if (point && (point->first != r.s || point->second != r.t))
          throw UsageError("the CSV holds several grid points; select one with --s and --t");
        point = {r.s, r.t};
        slice.push_back(r);
      }
      std::cout << "model,coefficient,intercept,residual,n_min,n_max\n";
      auto print = [](const FitResult &f) {
        std::cout << to_string(f.model) << "," << format_double(f.coefficient) << "," << format_double(f.intercept)
                  << "," << format_double(f.residual) << "," << f.n_range.first << "," << f.n_range.second << "\n";
      };
      if (f_model == "all") {
        for (auto m : kAllModels) print(fit_scaling(slice, m));
        std::cerr << "best: " << to_string(best_fit(slice).model) << "\n";
      } else {
        print(fit_scaling(slice, parse_model(f_model)));
      }
    } else if (*dump) {
      const auto spec = d_chain.resolve();
      write_file(d_out, dump_ensemble(build_ground_state(spec)));
    }
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::length_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception &e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
