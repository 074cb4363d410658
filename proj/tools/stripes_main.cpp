// Command-line front end for the stripe-formation energy laboratory.
//
// Exit codes: 0 success, 1 verification failure (a suite reported margin
// violations), 2 usage or input error, 3 quadrature failure (a requested
// tolerance could not be certified).
//
// All JSON and CSV numbers are emitted with shortest round-trip formatting
// (locale independent); identical arguments and seeds reproduce identical
// bytes, except for the wall-clock timing fields (wall_ms), which are
// genuine measurements.

#include <CLI11.hpp>
#include <json.hpp>

#include "stripes/energy1d.hpp"
#include "stripes/energynd.hpp"
#include "stripes/kernels.hpp"
#include "stripes/params.hpp"
#include "stripes/periodic_set.hpp"
#include "stripes/quadrature.hpp"
#include "stripes/random_sets.hpp"
#include "stripes/search.hpp"
#include "stripes/verification.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace stripes;

constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitQuadrature = 3;

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

ordered_json report_json(const EnergyReport& rep) {
    ordered_json j;
    j["total"] = rep.total;
    j["perimeter_term"] = rep.perimeter_term;
    j["nonlocal_term"] = rep.nonlocal_term;
    j["per_direction"] = rep.per_direction;
    j["cross_term"] = rep.cross_term;
    j["err_estimate"] = rep.err_estimate;
    j["below_resolution"] = rep.below_resolution;
    return j;
}

void run_params(int d, double p, double tau) {
    const ModelParams pm(d, p, tau);
    ordered_json j;
    j["dim"] = pm.dim;
    j["p"] = pm.p;
    j["tau"] = pm.tau;
    j["q"] = pm.q;
    j["beta"] = pm.beta;
    j["C_q"] = marginal_kernel_constant(pm);
    j["Cbar_q"] = stripe_series_constant(pm);
    j["J_c"] = critical_coupling(pm);
    j["h_star"] = optimal_stripe_width(pm);
    j["e_star"] = stripe_energy_inf(optimal_stripe_width(pm), pm);
    j["err_estimate"] = 0.0; // closed forms, exact to double rounding
    emit(j);
}

void run_hstar(int d, double p) {
    const HStarResult r = find_hstar(ModelParams(d, p));
    ordered_json j;
    j["h_star"] = r.h_star;
    j["e_star"] = r.e_star;
    j["h_search"] = r.h_search;
    j["agreement"] = r.agreement;
    j["err_estimate"] = r.agreement;
    emit(j);
}

void run_energy1d(const std::string& file, int d, double p, double tau, double tol) {
    const PeriodicSet1D set = set_from_json(load_json(file));
    const ModelParams pm(d, p, tau);
    EnergyReport rep;
    if (tau == 0.0) {
        rep = f0(set, pm, tol);
    } else if (set.is_empty() || set.is_full()) {
        rep = EnergyReport{};
    } else {
        const double L = set.period();
        const BoundedIntegral gb = g1d_bounded(set, pm, tol);
        rep.perimeter_term = -static_cast<double>(set.perimeter_count()) / L;
        rep.per_direction = {gb.value / L};
        rep.nonlocal_term = gb.value / L;
        rep.total = rep.perimeter_term + rep.nonlocal_term;
        rep.err_estimate = gb.err / L;
    }
    ordered_json j;
    j["L"] = set.period();
    j["tau"] = tau;
    j["measure"] = set.measure();
    j["arc_count"] = set.arc_count();
    j.update(report_json(rep));
    emit(j);
}

void run_energynd(const std::string& file, double p, bool has_J, double J, bool has_tau,
                  double tau, double tol) {
    const GridSetND grid = grid_from_json(load_json(file));
    const ModelParams pm(grid.dim(), p, has_tau ? tau : 0.0, has_J ? J : 0.0,
                         grid.period());
    const EnergyReport rep = has_J ? ftilde(grid, pm, tol) : f_tau(grid, pm, tol);
    ordered_json j;
    j["dim"] = grid.dim();
    j["n"] = grid.n();
    j["L"] = grid.period();
    if (has_J)
        j["J"] = J;
    else
        j["tau"] = tau;
    j["volume"] = grid.volume();
    j.update(report_json(rep));
    emit(j);
}

void run_minimize(double L, int d, double p, bool free_boundary, std::uint64_t seed,
                  int sweeps) {
    const ModelParams pm(d, p);
    const StripeMinimum stripes = minimize_f0_stripes(L, pm);
    ordered_json j;
    if (!free_boundary) {
        j["n_arcs"] = stripes.n_arcs;
        j["h"] = stripes.h;
        j["energy"] = stripes.energy;
        j["err_estimate"] = 0.0; // closed-form stripe energy
        emit(j);
        return;
    }
    SplitMix64 rng(seed);
    const PeriodicSet1D init = random_set(rng, L);
    const FreeMinimum out = minimize_f0_free(init, pm, sweeps);
    const EnergyReport final_report = f0(out.set, pm);
    j["n_arcs"] = out.set.arc_count();
    j["energy"] = out.energy;
    j["err_estimate"] = final_report.err_estimate;
    j["converged"] = out.converged;
    j["sweeps_used"] = out.sweeps_used;
    j["initial_energy"] = f0(init, pm).total;
    j["stripe_best_energy"] = stripes.energy;
    j["symdiff_to_best_stripes"] =
        aligned_sym_diff(out.set, make_stripes(stripes.h, L));
    ordered_json set_json;
    to_json(set_json, out.set);
    j["set"] = std::move(set_json);
    emit(j);
}

void run_sweep(int d, double p, double from, double to, int per_decade, double L,
               double tol, int max_arcs, const std::string& out_path) {
    ModelParams pm(d, p);
    if (L <= 0.0) L = 10.0 * optimal_stripe_width(pm); // default family period
    pm = pm.with_L(L);
    const std::vector<double> grid = log_spaced_grid(from, to, per_decade);
    const std::vector<SweepRecord> recs = tau_sweep(grid, pm, tol, max_arcs);
    std::ostringstream csv;
    write_sweep_csv(csv, recs);
    write_text(out_path, csv.str());
    if (!out_path.empty()) {
        const double slope = fitted_scaling_slope(recs);
        ordered_json j;
        j["records"] = recs.size();
        j["L"] = L;
        j["slope"] = slope;
        j["slope_target"] = (p - d) / (p - d - 1.0);
        j["err_estimate"] = std::abs(slope - (p - d) / (p - d - 1.0));
        j["csv"] = out_path;
        emit(j);
    }
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed, int d, double p,
               double tol, int threads) {
    const SuiteResult res = run_suite(suite, trials, seed, ModelParams(d, p), tol, threads);
    ordered_json j;
    j["suite"] = res.suite;
    j["trials"] = res.trials;
    j["violations"] = res.violations;
    j["worst_margin"] = res.worst_margin;
    j["tolerance"] = res.tolerance;
    j["wall_ms"] = res.wall_ms;
    j["passed"] = res.passed();
    emit(j);
    return res.passed() ? 0 : kExitVerification;
}

void run_plot_stripe_energy(int d, double p, double h_min, double h_max, int points,
                            const std::string& out_path) {
    const ModelParams pm(d, p);
    const double h_star = optimal_stripe_width(pm);
    if (h_min <= 0.0) h_min = 0.3 * h_star;
    if (h_max <= 0.0) h_max = 4.0 * h_star;
    if (!(h_max > h_min)) throw std::invalid_argument("plotdata: need h-max > h-min");
    if (points < 2) throw std::invalid_argument("plotdata: need at least two points");
    std::string text;
    for (int i = 0; i < points; ++i) {
        const double h = h_min + (h_max - h_min) * static_cast<double>(i) / (points - 1);
        text += format_number(h);
        text += ' ';
        text += format_number(stripe_energy_inf(h, pm));
        text += '\n';
    }
    write_text(out_path, text);
}

void run_plot_sweep(int d, double p, double from, double to, int per_decade, double L,
                    const std::string& out_path) {
    ModelParams pm(d, p);
    if (L <= 0.0) L = 10.0 * optimal_stripe_width(pm);
    pm = pm.with_L(L);
    const std::vector<SweepRecord> recs =
        tau_sweep(log_spaced_grid(from, to, per_decade), pm);
    std::string text;
    for (const auto& r : recs) {
        text += format_number(r.tau);
        text += ' ';
        text += format_number(-r.energy);
        text += '\n';
    }
    write_text(out_path, text);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for stripe-forming interaction energies"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "read option defaults from a key=value file (INI sections per "
                   "subcommand)");

    int rc = 0;

    // params
    int pa_d = 2;
    double pa_p = 5.0, pa_tau = 0.0;
    auto* sub_params = app.add_subcommand("params", "print model constants as JSON");
    sub_params->add_option("--d", pa_d, "ambient dimension")->required();
    sub_params->add_option("--p", pa_p, "kernel decay exponent")->required();
    sub_params->add_option("--tau", pa_tau, "kernel floor parameter");
    sub_params->callback([&] { run_params(pa_d, pa_p, pa_tau); });

    // hstar
    int hs_d = 2;
    double hs_p = 5.0;
    auto* sub_hstar =
        app.add_subcommand("hstar", "optimal stripe half-period (search vs closed form)");
    sub_hstar->add_option("--d", hs_d, "ambient dimension")->required();
    sub_hstar->add_option("--p", hs_p, "kernel decay exponent")->required();
    sub_hstar->callback([&] { run_hstar(hs_d, hs_p); });

    // energy1d
    std::string e1_file;
    int e1_d = 2;
    double e1_p = 5.0, e1_tau = 0.0, e1_tol = 1e-10;
    auto* sub_e1 = app.add_subcommand("energy1d", "1D energy density of a periodic set");
    sub_e1->add_option("--set", e1_file, "periodic set JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub_e1->add_option("--d", e1_d, "ambient dimension");
    sub_e1->add_option("--p", e1_p, "kernel decay exponent");
    sub_e1->add_option("--tau", e1_tau, "kernel floor (0 = sharp limit)");
    sub_e1->add_option("--tol", e1_tol, "quadrature tolerance");
    sub_e1->callback([&] { run_energy1d(e1_file, e1_d, e1_p, e1_tau, e1_tol); });

    // energynd
    std::string en_file;
    double en_p = 5.0, en_J = 0.0, en_tau = 0.0, en_tol = 1e-6;
    auto* sub_en = app.add_subcommand("energynd", "lattice energy of a pixel grid");
    sub_en->add_option("--grid", en_file, "grid JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub_en->add_option("--p", en_p, "kernel decay exponent");
    auto* opt_J =
        sub_en->add_option("--J", en_J, "perimeter coupling (original-variable energy)");
    auto* opt_tau = sub_en->add_option("--tau", en_tau, "kernel floor (rescaled energy)");
    opt_J->excludes(opt_tau);
    sub_en->add_option("--tol", en_tol, "energy error tolerance");
    sub_en->callback([&] {
        const bool has_J = opt_J->count() > 0;
        const bool has_tau = opt_tau->count() > 0;
        if (has_J == has_tau)
            throw CLI::RequiredError("energynd: exactly one of --J or --tau");
        run_energynd(en_file, en_p, has_J, en_J, has_tau, en_tau, en_tol);
    });

    // minimize
    double mi_L = 0.0;
    int mi_d = 2, mi_sweeps = 400;
    double mi_p = 5.0;
    bool mi_free = false;
    std::uint64_t mi_seed = 1;
    auto* sub_mi = app.add_subcommand("minimize", "minimize the sharp-interface density");
    sub_mi->add_option("--L", mi_L, "period")->required()->check(CLI::PositiveNumber);
    sub_mi->add_option("--d", mi_d, "ambient dimension");
    sub_mi->add_option("--p", mi_p, "kernel decay exponent");
    sub_mi->add_flag("--free", mi_free, "free-endpoint descent from a random start");
    sub_mi->add_option("--seed", mi_seed, "random start seed (with --free)");
    sub_mi->add_option("--steps", mi_sweeps, "sweep budget (with --free)");
    sub_mi->callback([&] { run_minimize(mi_L, mi_d, mi_p, mi_free, mi_seed, mi_sweeps); });

    // sweep-tau
    int sw_d = 2, sw_per_decade = 8, sw_max_arcs = 64;
    double sw_p = 5.0, sw_from = 1e-1, sw_to = 1e-3, sw_L = 0.0, sw_tol = 1e-8;
    std::string sw_out;
    auto* sub_sw =
        app.add_subcommand("sweep-tau", "stripe minima across kernel floors (CSV)");
    sub_sw->add_option("--d", sw_d, "ambient dimension");
    sub_sw->add_option("--p", sw_p, "kernel decay exponent");
    sub_sw->add_option("--from", sw_from, "largest kernel floor");
    sub_sw->add_option("--to", sw_to, "smallest kernel floor");
    sub_sw->add_option("--per-decade", sw_per_decade, "grid points per decade");
    sub_sw->add_option("--L", sw_L, "family period (default 10 h*)");
    sub_sw->add_option("--tol", sw_tol, "quadrature tolerance");
    sub_sw->add_option("--max-arcs", sw_max_arcs, "family search cap");
    sub_sw->add_option("--out", sw_out, "CSV output path (default: stdout)");
    sub_sw->callback([&] {
        run_sweep(sw_d, sw_p, sw_from, sw_to, sw_per_decade, sw_L, sw_tol, sw_max_arcs,
                  sw_out);
    });

    // verify
    std::string ve_suite;
    int ve_trials = 100, ve_d = 2, ve_threads = 0;
    double ve_p = 5.0, ve_tol = -1.0;
    std::uint64_t ve_seed = 1;
    auto* sub_ve =
        app.add_subcommand("verify", "run a statistical verification suite");
    sub_ve->add_option("--suite", ve_suite, "suite name")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    sub_ve->add_option("--trials", ve_trials, "number of random trials");
    sub_ve->add_option("--seed", ve_seed, "corpus seed");
    sub_ve->add_option("--d", ve_d, "ambient dimension");
    sub_ve->add_option("--p", ve_p, "kernel decay exponent");
    sub_ve->add_option("--tol", ve_tol, "margin tolerance override");
    sub_ve->add_option("--threads", ve_threads, "worker threads (0 = STRIPES_THREADS)");
    sub_ve->callback(
        [&] { rc = run_verify(ve_suite, ve_trials, ve_seed, ve_d, ve_p, ve_tol, ve_threads); });

    // plotdata
    auto* sub_pd = app.add_subcommand("plotdata", "two-column text data for plots");
    sub_pd->require_subcommand(1);

    int ps_d = 2, ps_points = 200;
    double ps_p = 5.0, ps_hmin = 0.0, ps_hmax = 0.0;
    std::string ps_out;
    auto* sub_ps = sub_pd->add_subcommand(
        "stripe-energy", "h vs e_inf(h) around the optimal half-period");
    sub_ps->add_option("--d", ps_d, "ambient dimension");
    sub_ps->add_option("--p", ps_p, "kernel decay exponent");
    sub_ps->add_option("--h-min", ps_hmin, "smallest half-period (default 0.3 h*)");
    sub_ps->add_option("--h-max", ps_hmax, "largest half-period (default 4 h*)");
    sub_ps->add_option("--points", ps_points, "sample count");
    sub_ps->add_option("--out", ps_out, "output path (default: stdout)");
    sub_ps->callback(
        [&] { run_plot_stripe_energy(ps_d, ps_p, ps_hmin, ps_hmax, ps_points, ps_out); });

    int pw_d = 2, pw_per_decade = 8;
    double pw_p = 5.0, pw_from = 1e-1, pw_to = 1e-3, pw_L = 0.0;
    std::string pw_out;
    auto* sub_pw = sub_pd->add_subcommand(
        "sweep", "kernel floor vs minus the minimal stripe energy");
    sub_pw->add_option("--d", pw_d, "ambient dimension");
    sub_pw->add_option("--p", pw_p, "kernel decay exponent");
    sub_pw->add_option("--from", pw_from, "largest kernel floor");
    sub_pw->add_option("--to", pw_to, "smallest kernel floor");
    sub_pw->add_option("--per-decade", pw_per_decade, "grid points per decade");
    sub_pw->add_option("--L", pw_L, "family period (default 10 h*)");
    sub_pw->add_option("--out", pw_out, "output path (default: stdout)");
    sub_pw->callback(
        [&] { run_plot_sweep(pw_d, pw_p, pw_from, pw_to, pw_per_decade, pw_L, pw_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const QuadratureError& e) {
        std::cerr << "quadrature failure: " << e.what()
                  << " (achieved " << e.achieved_error() << ", requested "
                  << e.requested_tolerance() << ")\n";
        return kExitQuadrature;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return rc;
}
