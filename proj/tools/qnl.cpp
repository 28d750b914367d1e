#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "qnl/asymptotic.hpp"
#include "qnl/dynamics.hpp"
#include "qnl/fields.hpp"
#include "qnl/lattice.hpp"
#include "qnl/minimize.hpp"
#include "qnl/nonlin.hpp"
#include "qnl/perturb.hpp"
#include "qnl/ranges.hpp"
#include "qnl/serialize.hpp"
#include "qnl/spectra.hpp"
#include "qnl/variational.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

int worker_threads() {
    if (const char* env = std::getenv("QNL_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// Buffers the body, then emits a header block (timestamp and wall time on
// the volatile lines, version and resolved config below) followed by the
// body.  Reruns of the same configuration are byte-identical below the
// volatile lines.
struct Output {
    std::ostringstream body;
    std::string path;
    std::string config;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Output(std::string path_, std::string config_)
        : path(std::move(path_)), config(std::move(config_)) {
        body.precision(12);
    }
    std::ostream& stream() { return body; }

    ~Output() {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::unique_ptr<std::ofstream> file;
        std::ostream* os = &std::cout;
        if (!path.empty() && path != "-") {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) {
                std::cerr << "{\"error\": \"cannot open output file: " << path << "\"}\n";
                return;
            }
            os = file.get();
        }
        *os << "# generated: " << buf << "\n";
        *os << "# wall_time_s: " << wall << "\n";
        *os << "# qnl " << kVersion << "\n";
        *os << "# config: " << config << "\n";
        *os << body.str();
    }
};

void check_eta_list(const std::vector<double>& etas, bool open_interval) {
    for (double e : etas) {
        if (!(e > 0.0) || e > 1.0 || (open_interval && e == 1.0))
            throw CLI::ValidationError("--eta", "eta values must lie in (0, 1" +
                                                    std::string(open_interval ? ")" : "]"));
    }
}

int run_variational(const std::string& eta_spec, const std::string& eps_spec, int n,
                    const std::string& out_path) {
    const auto etas = qnl::parse_range(eta_spec);
    const auto epss = qnl::parse_range(eps_spec);
    check_eta_list(etas, false);
    std::ostringstream cfg;
    cfg << "variational n=" << n << " eta=" << eta_spec << " eps=" << eps_spec
        << " threads=" << worker_threads();
    Output out(out_path, cfg.str());
    out.stream() << "n,eta,eps,c_star,E_star,restarts,converged\n";
    const auto points = qnl::variational::sweep(n, etas, epss, qnl::ModelParams{}, worker_threads());
    for (const auto& p : points)
        out.stream() << p.n << ',' << p.eta << ',' << p.eps << ',' << p.c_star << ','
                     << p.e_star << ',' << p.restarts_used << ',' << (p.converged ? 1 : 0)
                     << '\n';
    return 0;
}

int run_perturb(const std::string& eta_spec, const std::string& l_spec, int n,
                const std::string& potential, double cells_per_shift,
                const std::string& out_path) {
    const auto etas = qnl::parse_range(eta_spec);
    const auto ls = qnl::parse_range(l_spec);
    check_eta_list(etas, true);

    qnl::ModelParams base;
    qnl::perturb::PotentialFamily family =
        potential == "well" ? qnl::perturb::quartic_well_family(0.25, n)
                            : qnl::perturb::harmonic_family(base, n);
    qnl::perturb::GridPolicy policy;
    policy.cells_per_shift = cells_per_shift;

    std::ostringstream cfg;
    cfg << "perturb n=" << n << " potential=" << potential << " eta=" << eta_spec
        << " L=" << l_spec << " cells_per_shift=" << cells_per_shift;
    Output out(out_path, cfg.str());
    out.stream() << "n,eta,L,deltaE,exponent_fit,c2_estimate\n";

    for (double eta : etas) {
        if (ls.size() >= 3) {
            const auto fit = qnl::perturb::extract_C2(n, eta, ls, family, base, policy);
            for (const auto& row : fit.rows)
                out.stream() << row.n << ',' << row.eta << ',' << row.L << ',' << row.deltaE
                             << ',' << row.exponent_fit << ',' << row.c2_estimate << '\n';
            if (!fit.ok) out.stream() << "# fit n=" << n << " eta=" << eta << ": "
                                      << fit.message << '\n';
        } else {
            const auto scan = qnl::perturb::eta_scan(n, ls.front(), {eta}, family, base, policy);
            for (const auto& row : scan.rows)
                out.stream() << row.n << ',' << row.eta << ',' << row.L << ',' << row.deltaE
                             << ",nan,nan\n";
        }
    }
    return 0;
}

int run_asymptotic(const std::string& eta_spec, const std::string& out_path) {
    const auto etas = qnl::parse_range(eta_spec);
    for (double e : etas)
        if (!(e > 0.0 && e < 1.0))
            throw CLI::ValidationError("--scan-eta", "eta values must lie in (0, 1)");
    Output out(out_path, "asymptotic scan-eta=" + eta_spec);
    out.stream() << "eta,g,energy\n";
    const qnl::ModelParams params;
    for (double e : etas) {
        const auto res = qnl::asymptotic::collapse_energy(e, params);
        out.stream() << res.eta << ',' << res.g_value << ',' << res.energy << '\n';
    }
    out.stream() << "# eta_minimizer=" << qnl::asymptotic::eta_minimizer_asymptotic() << '\n';
    return 0;
}

int run_lattice(double eta, double e_ratio, double p0, double p1, int window, double bound,
                const std::string& out_path) {
    const auto traj = qnl::lattice::classify_trajectory(eta, e_ratio, p0, p1, window, bound);
    std::ostringstream cfg;
    cfg << "lattice eta=" << eta << " e-ratio=" << e_ratio << " p0=" << p0 << " p1=" << p1
        << " window=" << window << " bound=" << bound;
    Output out(out_path, cfg.str());
    out.stream() << "eta,e_ratio,index,p\n";
    for (std::size_t i = 0; i < traj.values.size(); ++i)
        out.stream() << eta << ',' << e_ratio << ',' << traj.first_index + static_cast<int>(i)
                     << ',' << traj.values[i] << '\n';
    out.stream() << "# forward=" << qnl::lattice::to_string(traj.forward_class)
                 << " backward=" << qnl::lattice::to_string(traj.backward_class);
    if (traj.truncation_index) out.stream() << " truncation_index=" << *traj.truncation_index;
    out.stream() << '\n';
    return 0;
}

qnl::WaveField make_psi0(const std::string& spec, const qnl::Grid1D& grid,
                         const qnl::ModelParams& params) {
    // gaussian:c=1[:k=0][:x0=0]
    double c = 1.0, k = 0.0, x0 = 0.0;
    std::stringstream ss(spec);
    std::string tok;
    std::getline(ss, tok, ':');
    if (tok != "gaussian") throw CLI::ValidationError("--psi0", "unknown initial state: " + tok);
    while (std::getline(ss, tok, ':')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--psi0", "bad token: " + tok);
        const std::string key = tok.substr(0, eq);
        const double val = std::stod(tok.substr(eq + 1));
        if (key == "c") c = val;
        else if (key == "k") k = val;
        else if (key == "x0") x0 = val;
        else throw CLI::ValidationError("--psi0", "unknown key: " + key);
    }
    const double b = c * params.a();
    qnl::WaveField psi;
    psi.grid = grid;
    psi.values.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double x = grid.x(i) - x0;
        psi.values[i] = std::polar(std::exp(-x * x / (2.0 * b * b)), k * grid.x(i));
    }
    qnl::normalize(psi);
    return psi;
}

int run_evolve(const std::string& psi0_spec, double eta, double eps, double dt, int steps,
               double halfwidth, double target_dx, int stride, const std::string& out_path) {
    const auto params = qnl::ModelParams::from_eps(eta, eps);
    const auto grid = qnl::make_grid(halfwidth, params.eta, params.L, target_dx,
                                     qnl::Boundary::Periodic);
    std::ostringstream cfg;
    cfg << "evolve psi0=" << psi0_spec << " eta=" << eta << " eps=" << eps << " dt=" << dt
        << " steps=" << steps << " halfwidth=" << halfwidth << " dx=" << grid.dx
        << " stride=" << stride;
    Output out(out_path, cfg.str());
    const auto psi0 = make_psi0(psi0_spec, grid, params);
    const qnl::PotentialSpec V = qnl::Harmonic{params.omega};
    const auto result = qnl::dynamics::evolve(psi0, V, params, dt, steps, stride);
    out.stream() << "step,t,norm,energy,centroid,width\n";
    for (const auto& r : result.diagnostics.records)
        out.stream() << r.step << ',' << r.t << ',' << r.norm << ',' << r.energy << ','
                     << r.centroid << ',' << r.width << '\n';
    return 0;
}

int run_relax(double eta, double eps, double dtau, double tol, double halfwidth,
              double target_dx, const std::string& out_path) {
    const auto params = qnl::ModelParams::from_eps(eta, eps);
    const auto grid = qnl::make_grid(halfwidth, params.eta, params.L, target_dx,
                                     qnl::Boundary::Periodic);
    std::ostringstream cfg;
    cfg << "relax eta=" << eta << " eps=" << eps << " dtau=" << dtau << " tol=" << tol
        << " halfwidth=" << halfwidth << " dx=" << grid.dx;
    Output out(out_path, cfg.str());
    const qnl::PotentialSpec V = qnl::Harmonic{params.omega};
    const auto res = qnl::dynamics::relax_ground_state(V, params, grid, dtau, tol);
    out.stream() << "# energy=" << res.energy << " steps=" << res.steps
                 << " converged=" << (res.converged ? 1 : 0)
                 << " oscillation=" << (res.oscillation ? 1 : 0)
                 << " residual=" << res.residual << '\n';
    const auto p = qnl::density_of(res.psi);
    out.stream() << "# width=" << qnl::rms_width(p) << '\n';
    qnl::write_csv(out.stream(), grid, p.values);
    return res.converged ? 0 : 3;
}

int run_check() {
    int failures = 0;
    auto report = [&](const char* name, bool ok, double value) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << value << ")\n";
        if (!ok) ++failures;
    };

    const qnl::ModelParams params(0.5, 1.0);
    auto grid = qnl::make_grid(8.0, params.eta, params.L, 0.01, qnl::Boundary::Periodic);
    qnl::DensityField p;
    p.grid = grid;
    p.values.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double x = grid.x(i);
        p.values[i] = std::exp(-x * x);
    }

    // F1 vanishes on constant density
    {
        qnl::DensityField c;
        c.grid = grid;
        c.values.assign(grid.count, 0.7);
        const auto field = qnl::nonlin::f1(c, params);
        double mx = 0.0;
        for (double v : field.values) mx = std::max(mx, std::abs(v));
        report("f1_constant_zero", mx < 1e-12, mx);
    }
    // scale invariance (representable scaling, exact)
    {
        const auto field1 = qnl::nonlin::f1(p, params);
        qnl::DensityField q = p;
        for (auto& v : q.values) v *= 0x1p12;
        const auto field2 = qnl::nonlin::f1(q, params);
        double mx = 0.0;
        for (std::size_t i = 0; i < field1.values.size(); ++i)
            mx = std::max(mx, std::abs(field1.values[i] - field2.values[i]));
        report("f1_scale_invariance", mx < 1e-12 * qnl::nonlin::clamp_bound(params), mx);
    }
    // functional derivatives
    {
        const double errF = qnl::nonlin::functional_derivative_check(
            qnl::nonlin::Functional::Fisher, p, grid.count / 2 + 17, 1e-7, params);
        const double errK = qnl::nonlin::functional_derivative_check(
            qnl::nonlin::Functional::KL, p, grid.count / 2 + 17, 1e-7, params);
        report("fisher_derivative", errF < 1e-4, errF);
        report("kl_derivative", errK < 1e-4, errK);
    }
    // minimizers
    {
        const double em = qnl::perturb::eta_minimizer_perturbative();
        report("eta_minimizer_perturbative", std::abs(em - 0.796535165408627) < 1e-8, em);
        const double ea = qnl::asymptotic::eta_minimizer_asymptotic();
        report("eta_minimizer_asymptotic", std::abs(ea - 0.9033503778) < 1e-6, ea);
    }
    // lattice identities
    {
        const double fwd = qnl::lattice::step_forward_eta1(1.0, 1.0, 1.0);
        const auto back = qnl::lattice::step_backward_eta1(1.0, fwd, 1.0);
        report("lattice_inverse", back && std::abs(*back - 1.0) < 1e-12,
               back ? *back : -1.0);
    }
    std::cout << (failures == 0 ? "ALL CHECKS PASSED\n" : "CHECKS FAILED\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qnl - nonlocal nonlinear Schrodinger equation toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // variational
    auto* var = app.add_subcommand("variational", "minimize E(c) over the trial width");
    int var_n = 0;
    std::string var_eta = "0.1,0.2,0.5,0.9,0.999,0.999999";
    std::string var_eps = "0.01:20:log:60";
    std::string var_out;
    var->add_option("--n", var_n, "state index")->check(CLI::NonNegativeNumber);
    var->add_option("--eta", var_eta, "eta list/range");
    var->add_option("--eps", var_eps, "eps = L/a list/range");
    var->add_option("--out", var_out, "output CSV path (default stdout)");

    // perturb
    auto* per = app.add_subcommand("perturb", "first-order shifts and their fits");
    int per_n = 5;
    std::string per_eta = "0.05:0.95:37";
    std::string per_L = "1e-3";
    std::string per_pot = "sho";
    double per_cells = 40.0;
    std::string per_out;
    per->add_option("--n", per_n, "state index")->check(CLI::NonNegativeNumber);
    per->add_option("--eta", per_eta, "eta list/range");
    per->add_option("--L", per_L, "L list/range");
    per->add_option("--potential", per_pot, "sho or well (smooth quartic)")
        ->check(CLI::IsMember({"sho", "well"}));
    per->add_option("--cells-per-shift", per_cells, "grid cells across eta*L (>= 20)")
        ->check(CLI::Range(20.0, 1000.0));
    per->add_option("--out", per_out, "output CSV path");

    // asymptotic
    auto* asy = app.add_subcommand("asymptotic", "collapse energy g(eta) scan");
    std::string asy_eta = "0.05:0.999:200";
    std::string asy_out;
    asy->add_option("--scan-eta", asy_eta, "eta range");
    asy->add_option("--out", asy_out, "output CSV path");

    // lattice
    auto* lat = app.add_subcommand("lattice", "discrete stationary recursion");
    double lat_eta = 1.0, lat_e = 1.0, lat_p0 = 1.0, lat_p1 = 1.0, lat_bound = 1e50;
    int lat_window = 200;
    std::string lat_out;
    lat->add_option("--eta", lat_eta, "eta in (0,1]")->check(CLI::Range(1e-12, 1.0));
    lat->add_option("--e-ratio", lat_e, "E/escale");
    lat->add_option("--p0", lat_p0, "seed p at index 0")->check(CLI::PositiveNumber);
    lat->add_option("--p1", lat_p1, "seed p at index 1")->check(CLI::PositiveNumber);
    lat->add_option("--window", lat_window, "max steps per direction")
        ->check(CLI::Range(1, 1000000));
    lat->add_option("--bound", lat_bound, "unboundedness threshold");
    lat->add_option("--out", lat_out, "output CSV path");

    // evolve
    auto* evo = app.add_subcommand("evolve", "real-time split-step evolution");
    std::string evo_psi0 = "gaussian:c=1";
    double evo_eta = 0.5, evo_eps = 0.1, evo_dt = 2e-4, evo_hw = 8.0, evo_dx = 0.05;
    int evo_steps = 2000, evo_stride = 50;
    std::string evo_out;
    evo->add_option("--psi0", evo_psi0, "initial state, gaussian:c=..[:k=..][:x0=..]");
    evo->add_option("--eta", evo_eta)->check(CLI::Range(1e-12, 1.0));
    evo->add_option("--eps", evo_eps)->check(CLI::PositiveNumber);
    evo->add_option("--dt", evo_dt)->check(CLI::PositiveNumber);
    evo->add_option("--steps", evo_steps)->check(CLI::PositiveNumber);
    evo->add_option("--halfwidth", evo_hw)->check(CLI::PositiveNumber);
    evo->add_option("--dx", evo_dx, "target grid spacing")->check(CLI::PositiveNumber);
    evo->add_option("--stride", evo_stride, "record every k-th step");
    evo->add_option("--out", evo_out, "diagnostics CSV path");

    // relax
    auto* rel = app.add_subcommand("relax", "imaginary-time nonlinear ground state");
    double rel_eta = 0.5, rel_eps = 1.0, rel_dtau = 1e-3, rel_tol = 1e-5, rel_hw = 8.0,
           rel_dx = 0.02;
    std::string rel_out;
    rel->add_option("--eta", rel_eta)->check(CLI::Range(1e-12, 1.0));
    rel->add_option("--eps", rel_eps)->check(CLI::PositiveNumber);
    rel->add_option("--dtau", rel_dtau)->check(CLI::PositiveNumber);
    rel->add_option("--tol", rel_tol)->check(CLI::PositiveNumber);
    rel->add_option("--halfwidth", rel_hw)->check(CLI::PositiveNumber);
    rel->add_option("--dx", rel_dx, "target grid spacing")->check(CLI::PositiveNumber);
    rel->add_option("--out", rel_out, "output path");

    // check
    app.add_subcommand("check", "run the quick invariant battery");

    CLI11_PARSE(app, argc, argv);

    try {
        if (var->parsed()) return run_variational(var_eta, var_eps, var_n, var_out);
        if (per->parsed()) return run_perturb(per_eta, per_L, per_n, per_pot, per_cells, per_out);
        if (asy->parsed()) return run_asymptotic(asy_eta, asy_out);
        if (lat->parsed())
            return run_lattice(lat_eta, lat_e, lat_p0, lat_p1, lat_window, lat_bound, lat_out);
        if (evo->parsed())
            return run_evolve(evo_psi0, evo_eta, evo_eps, evo_dt, evo_steps, evo_hw, evo_dx,
                              evo_stride, evo_out);
        if (rel->parsed())
            return run_relax(rel_eta, rel_eps, rel_dtau, rel_tol, rel_hw, rel_dx, rel_out);
        return run_check();
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 1;
    }
}
