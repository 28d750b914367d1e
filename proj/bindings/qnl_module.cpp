#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnl/asymptotic.hpp"
#include "qnl/dynamics.hpp"
#include "qnl/fields.hpp"
#include "qnl/lattice.hpp"
#include "qnl/nonlin.hpp"
#include "qnl/perturb.hpp"
#include "qnl/ranges.hpp"
#include "qnl/spectra.hpp"
#include "qnl/variational.hpp"

namespace py = pybind11;
using namespace qnl;

namespace {

DensityField density_from_array(const Grid1D& grid, py::array_t<double> values) {
    auto buf = values.request();
    if (buf.ndim != 1 || static_cast<std::size_t>(buf.shape[0]) != grid.count)
        throw std::invalid_argument("values must be a 1-D array of grid.count samples");
    DensityField p;
    p.grid = grid;
    const auto* ptr = static_cast<const double*>(buf.ptr);
    p.values.assign(ptr, ptr + grid.count);
    return p;
}

WaveField wave_from_array(const Grid1D& grid, py::array_t<std::complex<double>> values) {
    auto buf = values.request();
    if (buf.ndim != 1 || static_cast<std::size_t>(buf.shape[0]) != grid.count)
        throw std::invalid_argument("values must be a 1-D array of grid.count samples");
    WaveField psi;
    psi.grid = grid;
    const auto* ptr = static_cast<const std::complex<double>*>(buf.ptr);
    psi.values.assign(ptr, ptr + grid.count);
    return psi;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

PotentialSpec potential_from(const py::object& v, const Grid1D& grid) {
    if (py::isinstance<py::str>(v)) {
        if (v.cast<std::string>() == "harmonic") return Harmonic{1.0};
        throw std::invalid_argument("potential: pass 'harmonic' or an array of samples");
    }
    Tabulated t;
    auto arr = v.cast<py::array_t<double>>();
    auto buf = arr.request();
    if (buf.ndim != 1 || static_cast<std::size_t>(buf.shape[0]) != grid.count)
        throw std::invalid_argument("tabulated potential must match the grid");
    const auto* ptr = static_cast<const double*>(buf.ptr);
    t.values.assign(ptr, ptr + grid.count);
    return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nonlocal nonlinear Schrodinger equation toolkit";

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("eta"), py::arg("L"))
        .def_readwrite("hbar", &ModelParams::hbar)
        .def_readwrite("mass", &ModelParams::mass)
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("eta", &ModelParams::eta)
        .def_readwrite("L", &ModelParams::L)
        .def("a", &ModelParams::a)
        .def("eps", &ModelParams::eps)
        .def("escale", &ModelParams::escale)
        .def_static("from_eps", &ModelParams::from_eps, py::arg("eta"), py::arg("eps"));

    py::enum_<Boundary>(m, "Boundary")
        .value("Periodic", Boundary::Periodic)
        .value("PaddedFloor", Boundary::PaddedFloor);

    py::class_<Grid1D>(m, "Grid1D")
        .def_readonly("x_min", &Grid1D::x_min)
        .def_readonly("dx", &Grid1D::dx)
        .def_readonly("count", &Grid1D::count)
        .def_readonly("shift_cells", &Grid1D::shift_cells)
        .def_property_readonly("shift_length", &Grid1D::shift_length)
        .def("x", [](const Grid1D& g) {
            py::array_t<double> out(static_cast<py::ssize_t>(g.count));
            auto* ptr = out.mutable_data();
            for (std::size_t i = 0; i < g.count; ++i) ptr[i] = g.x(i);
            return out;
        });

    m.def("make_grid", &make_grid, py::arg("domain_halfwidth"), py::arg("eta"), py::arg("L"),
          py::arg("target_dx"), py::arg("boundary") = Boundary::PaddedFloor);

    m.def("parse_range", &parse_range, py::arg("spec"));

    // nonlinear fields and functionals
    m.def("bohm_potential",
          [](const Grid1D& g, py::array_t<double> p, const ModelParams& params) {
              return to_array(nonlin::bohm_potential(density_from_array(g, p), params).values);
          });
    m.def("q1nl", [](const Grid1D& g, py::array_t<double> p, const ModelParams& params) {
        return to_array(nonlin::q1nl(density_from_array(g, p), params).values);
    });
    m.def("f1", [](const Grid1D& g, py::array_t<double> p, const ModelParams& params) {
        return to_array(nonlin::f1(density_from_array(g, p), params).values);
    });
    m.def("fisher_energy", [](const Grid1D& g, py::array_t<double> p, const ModelParams& prm) {
        return nonlin::fisher_energy(density_from_array(g, p), prm);
    });
    m.def("kl_energy", [](const Grid1D& g, py::array_t<double> p, const ModelParams& prm) {
        return nonlin::kl_energy(density_from_array(g, p), prm);
    });
    m.def("total_energy",
          [](const Grid1D& g, py::array_t<std::complex<double>> psi, const py::object& V,
             const ModelParams& prm) {
              return nonlin::total_energy(wave_from_array(g, psi), potential_from(V, g), prm);
          },
          py::arg("grid"), py::arg("psi"), py::arg("potential"), py::arg("params"));

    // spectra
    m.def("sho_eigenstate",
          [](int n, double c, const Grid1D& g, const ModelParams& prm) {
              const auto pair = spectra::sho_eigenstate(n, c, g, prm);
              std::vector<double> re(pair.psi.values.size());
              for (std::size_t i = 0; i < re.size(); ++i) re[i] = pair.psi.values[i].real();
              return py::make_tuple(pair.energy, to_array(re));
          },
          py::arg("n"), py::arg("width_c"), py::arg("grid"), py::arg("params"));

    // perturbative regime
    m.def("eta_shape_factor", &perturb::eta_shape_factor);
    m.def("eta_minimizer_perturbative", &perturb::eta_minimizer_perturbative);
    m.def("first_order_shift",
          [](int n, const ModelParams& prm, const Grid1D& g, const py::object& V) {
              return perturb::first_order_shift(n, prm, g, potential_from(V, g));
          },
          py::arg("n"), py::arg("params"), py::arg("grid"), py::arg("potential"));

    // asymptotic regime
    m.def("collapse_energy", [](double eta, const ModelParams& prm) {
        const auto r = asymptotic::collapse_energy(eta, prm);
        return py::make_tuple(r.g_value, r.energy);
    });
    m.def("eta_minimizer_asymptotic", &asymptotic::eta_minimizer_asymptotic);

    // variational interpolation
    py::class_<variational::VariationalPoint>(m, "VariationalPoint")
        .def_readonly("n", &variational::VariationalPoint::n)
        .def_readonly("eta", &variational::VariationalPoint::eta)
        .def_readonly("eps", &variational::VariationalPoint::eps)
        .def_readonly("c_star", &variational::VariationalPoint::c_star)
        .def_readonly("e_star", &variational::VariationalPoint::e_star)
        .def_readonly("restarts_used", &variational::VariationalPoint::restarts_used)
        .def_readonly("converged", &variational::VariationalPoint::converged);
    m.def("variational_energy", &variational::variational_energy, py::arg("n"), py::arg("c"),
          py::arg("params"));
    m.def("minimize_over_c", &variational::minimize_over_c, py::arg("n"), py::arg("params"));
    m.def("variational_sweep", &variational::sweep, py::arg("n"), py::arg("etas"),
          py::arg("eps_list"), py::arg("params"), py::arg("threads") = 1);

    // lattice recursion
    m.def("step_forward_eta1", &lattice::step_forward_eta1);
    m.def("step_backward_eta1", [](double p_cur, double p_next, double e) {
        return lattice::step_backward_eta1(p_cur, p_next, e);  // None on truncation
    });
    m.def("step_forward_general", [](double p_prev, double p_cur, double e, double eta) {
        return lattice::step_forward_general(p_prev, p_cur, e, eta);
    });
    m.def("ratio_fixed_points", [](double e_ratio) {
        const auto r = lattice::ratio_fixed_points(e_ratio);
        py::list stab;
        for (auto s : r.stability)
            stab.append(s == lattice::Stability::Stable
                            ? "stable"
                            : (s == lattice::Stability::Unstable ? "unstable" : "neutral"));
        return py::make_tuple(r.fixed_points, stab);
    });
    m.def("classify_trajectory",
          [](double eta, double e_ratio, double p0, double p1, int window, double bound) {
              const auto t = lattice::classify_trajectory(eta, e_ratio, p0, p1, window, bound);
              py::dict d;
              d["eta"] = t.eta;
              d["e_ratio"] = t.e_ratio;
              d["values"] = to_array(t.values);
              d["first_index"] = t.first_index;
              d["forward"] = lattice::to_string(t.forward_class);
              d["backward"] = lattice::to_string(t.backward_class);
              if (t.truncation_index)
                  d["truncation_index"] = *t.truncation_index;
              else
                  d["truncation_index"] = py::none();
              return d;
          },
          py::arg("eta"), py::arg("e_ratio"), py::arg("p0"), py::arg("p1"),
          py::arg("window") = 1000, py::arg("bound") = 1e50);

    // dynamics
    m.def("evolve",
          [](const Grid1D& g, py::array_t<std::complex<double>> psi0, const py::object& V,
             const ModelParams& prm, double dt, int steps, int stride) {
              const auto res = dynamics::evolve(wave_from_array(g, psi0), potential_from(V, g),
                                                prm, dt, steps, stride);
              py::array_t<std::complex<double>> psi(
                  static_cast<py::ssize_t>(res.psi.values.size()));
              std::copy(res.psi.values.begin(), res.psi.values.end(), psi.mutable_data());
              py::list records;
              for (const auto& r : res.diagnostics.records)
                  records.append(py::make_tuple(r.step, r.t, r.norm, r.energy, r.centroid,
                                                r.width));
              return py::make_tuple(psi, records);
          },
          py::arg("grid"), py::arg("psi0"), py::arg("potential"), py::arg("params"),
          py::arg("dt"), py::arg("steps"), py::arg("record_stride") = 1);
    m.def("relax_ground_state",
          [](const py::object& V, const ModelParams& prm, const Grid1D& g, double dtau,
             double tol, int max_steps) {
              const auto res =
                  dynamics::relax_ground_state(potential_from(V, g), prm, g, dtau, tol,
                                               max_steps);
              std::vector<double> re(res.psi.values.size());
              for (std::size_t i = 0; i < re.size(); ++i) re[i] = res.psi.values[i].real();
              py::dict d;
              d["psi"] = to_array(re);
              d["energy"] = res.energy;
              d["steps"] = res.steps;
              d["converged"] = res.converged;
              d["oscillation"] = res.oscillation;
              d["residual"] = res.residual;
              return d;
          },
          py::arg("potential"), py::arg("params"), py::arg("grid"), py::arg("dtau"),
          py::arg("tol"), py::arg("max_steps") = 200000);

    m.attr("__version__") = "1.0.0";
}
