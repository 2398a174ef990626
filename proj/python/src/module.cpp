#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "motzkin/groundstate.hpp"
#include "motzkin/hamiltonian.hpp"
#include "motzkin/schmidt.hpp"
#include "motzkin/sweep.hpp"

namespace py = pybind11;
using namespace motzkin;

namespace {

std::vector<double> logs(const std::vector<LogWeight> &w) {
  std::vector<double> out;
  out.reserve(w.size());
  for (const auto &x : w) out.push_back(x.log());
  return out;
}

}  // namespace

PYBIND11_MODULE(_motzkin, m) {
  m.doc() = "Area-weighted colored Motzkin chain";
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  // chains and spectra
  py::class_<ChainSpec>(m, "ChainSpec")
      .def_static("uniform", &ChainSpec::uniform, py::arg("two_n"), py::arg("s"), py::arg("t"))
      .def_static("tuned_angles", &generate_tuned_angles, py::arg("two_n"), py::arg("seed"),
                  py::arg("theta_first") = 0.7)
      .def_static("from_config", &parse_config, py::arg("text"))
      .def_readonly("two_n", &ChainSpec::two_n)
      .def_readonly("s", &ChainSpec::s)
      .def_property_readonly("is_uniform", &ChainSpec::is_uniform)
      .def_property_readonly("t", [](const ChainSpec &c) { return c.is_uniform() ? py::cast(c.t()) : py::none(); })
      .def_property_readonly("dimension", &ChainSpec::dimension)
      .def("to_config", [](const ChainSpec &c) { return to_config(c); })
      .def("__repr__", [](const ChainSpec &c) {
        return "<ChainSpec two_n=" + std::to_string(c.two_n) + " s=" + std::to_string(c.s) + " " +
               deformation_label(c) + ">";
      });

  m.def(
      "build_hamiltonian",
      [](const ChainSpec &spec, bool check_tuning) {
        HamiltonianOptions opts;
        opts.dimension_cap = dimension_cap_from_env();
        opts.check_tuning = check_tuning;
        return build_hamiltonian(spec, opts);
      },
      py::arg("spec"), py::arg("check_tuning") = true, "Sparse Hamiltonian (scipy.sparse CSC matrix).");

  py::class_<SpectrumReport>(m, "SpectrumReport")
      .def_readonly("lowest_eigenvalues", &SpectrumReport::lowest_eigenvalues)
      .def_readonly("gs_residual", &SpectrumReport::gs_residual)
      .def_readonly("null_dim", &SpectrumReport::null_dim);

  m.def(
      "diagonalize_low",
      [](const ChainSpec &spec, int k) {
        DiagonalizeOptions opts;
        opts.hamiltonian.dimension_cap = dimension_cap_from_env();
        py::gil_scoped_release release;
        return diagonalize_low(spec, k, opts);
      },
      py::arg("spec"), py::arg("k") = 2);

  // explicit ground states
  m.def(
      "ground_state",
      [](const ChainSpec &spec) {
        const auto ens = build_ground_state(spec);
        std::vector<std::pair<std::string, double>> entries;
        for (const auto &e : ens.entries) entries.emplace_back(e.walk.to_string(), e.weight.log());
        return py::make_tuple(entries, ens.norm.log());
      },
      py::arg("spec"), "([(walk, log weight)], log norm) over all complete walks.");
  m.def(
      "ground_state_vector", [](const ChainSpec &spec) { return build_ground_state(spec).state_vector(); },
      py::arg("spec"));
  m.def(
      "residual",
      [](const ChainSpec &spec, const Eigen::VectorXd &state) {
        HamiltonianOptions opts;
        opts.dimension_cap = dimension_cap_from_env();
        return residual(spec, state, opts);
      },
      py::arg("spec"), py::arg("state"));
  m.def(
      "schmidt_by_svd",
      [](const ChainSpec &spec) {
        const auto sp = schmidt_by_svd(build_ground_state(spec));
        std::vector<std::tuple<int, int, double>> groups;
        for (const auto &g : sp.groups) groups.emplace_back(g.m, g.multiplicity, g.p);
        return py::make_tuple(groups, sp.squared_singular_values);
      },
      py::arg("spec"), "([(m, multiplicity, p)], squared singular values).");

  // half-chain recurrence
  py::class_<SchmidtProfile>(m, "SchmidtProfile")
      .def_readonly("n", &SchmidtProfile::n)
      .def_readonly("s", &SchmidtProfile::s)
      .def_readonly("t", &SchmidtProfile::t)
      .def_property_readonly("log_m", [](const SchmidtProfile &p) { return logs(p.log_m); })
      .def_property_readonly("log_norm", [](const SchmidtProfile &p) { return p.norm.log(); })
      .def_readonly("log_p", &SchmidtProfile::log_p)
      .def_readonly("p", &SchmidtProfile::p)
      .def_readonly("entropy", &SchmidtProfile::entropy)
      .def("sector_weight", &SchmidtProfile::sector_weight, py::arg("m"))
      .def("peak_height", [](const SchmidtProfile &p, bool sector) {
        return peak_height(p, sector ? PeakMode::MaxSectorWeight : PeakMode::MaxM);
      }, py::arg("sector_weight") = false);

  m.def("profile", &profile, py::arg("n"), py::arg("s"), py::arg("t"));
  m.def("ground_state_profile", &ground_state_profile, py::arg("n"), py::arg("s"), py::arg("t"));
  m.def("entanglement_entropy", &entanglement_entropy, py::arg("n"), py::arg("s"), py::arg("t"),
        py::arg("base2") = false);
  m.def("peak_offset_n0", &peak_offset_n0, py::arg("s"), py::arg("t"));
  m.def("tail_start_m0", &tail_start_m0, py::arg("s"), py::arg("t"));
  m.def("entropy_bound_c", &entropy_bound_c, py::arg("s"), py::arg("t"));
  m.def(
      "entropy_curve",
      [](int n_max, int s, double t, int stride) {
        std::vector<CurvePoint> pts;
        {
          py::gil_scoped_release release;
          pts = entropy_curve(n_max, s, t, stride);
        }
        py::dict out;
        std::vector<int> n, mstar;
        std::vector<double> entropy, log_norm;
        for (const auto &p : pts) {
          n.push_back(p.n);
          entropy.push_back(p.entropy);
          mstar.push_back(p.mstar);
          log_norm.push_back(p.log_norm);
        }
        out["n"] = n;
        out["entropy"] = entropy;
        out["mstar"] = mstar;
        out["logN"] = log_norm;
        return out;
      },
      py::arg("n_max"), py::arg("s"), py::arg("t"), py::arg("stride") = 1);

  // sweeps and fits
  m.def(
      "sweep_csv",
      [](const std::string &plan_text, std::optional<int> jobs) {
        auto plan = parse_plan(plan_text);
        if (jobs) plan.jobs = *jobs;
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(plan);
        }
        return sweep_csv(rows);
      },
      py::arg("plan"), py::arg("jobs") = py::none(), "Run a sweep plan; returns the CSV text.");
  m.def(
      "fit",
      [](const std::string &csv_text, const std::string &model) {
        const auto rows = parse_sweep_csv(csv_text);
        const auto f = fit_scaling(rows, parse_model(model));
        py::dict out;
        out["model"] = std::string(to_string(f.model));
        out["coefficient"] = f.coefficient;
        out["intercept"] = f.intercept;
        out["residual"] = f.residual;
        out["n_range"] = f.n_range;
        return out;
      },
      py::arg("csv"), py::arg("model"), "Least-squares fit of S_n for a single-grid-point sweep CSV.");
}
