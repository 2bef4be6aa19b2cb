#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "vacfric/dynamics.hpp"
#include "vacfric/equilibrium.hpp"
#include "vacfric/material.hpp"
#include "vacfric/observables.hpp"
#include "vacfric/polarizability.hpp"

namespace vacfric::cli {

namespace {

using K = Constants;

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(w) {}
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

double parse_number(const std::string& text, const std::string& flag)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ConfigError(flag + ": cannot parse '" + text + "' as a number");
    return v;
}

double parse_positive(const std::string& text, const std::string& flag)
{
    const double v = parse_number(text, flag);
    if (!(v > 0.0)) throw ConfigError(flag + ": value must be positive, got '" + text + "'");
    return v;
}

/// "<number>" or "x<f><unit>", e.g. x0.5theta0. `scale` resolves the unit.
double parse_scaled(const std::string& text, const std::string& flag, const std::string& unit,
                    const std::function<double()>& scale)
{
    if (!text.empty() && text.front() == 'x') {
        if (text.size() <= unit.size() + 1 || text.compare(text.size() - unit.size(), unit.size(), unit) != 0)
            throw ConfigError(flag + ": expected x<factor>" + unit + ", got '" + text + "'");
        const double f = parse_number(text.substr(1, text.size() - 1 - unit.size()), flag);
        if (!(f >= 0.0)) throw ConfigError(flag + ": factor must be >= 0");
        return f * scale();
    }
    const double v = parse_number(text, flag);
    if (!(v >= 0.0)) throw ConfigError(flag + ": value must be >= 0, got '" + text + "'");
    return v;
}

struct GridSpec {
    std::string lo, hi;
    Eigen::Index n = 0;
    bool log = false;
};

GridSpec parse_grid(const std::string& text, const std::string& flag)
{
    GridSpec g;
    std::string body = text;
    const auto comma = body.find(',');
    if (comma != std::string::npos) {
        const std::string mode = body.substr(comma + 1);
        if (mode == "log") g.log = true;
        else if (mode != "lin") throw ConfigError(flag + ": spacing must be 'log' or 'lin', got '" + mode + "'");
        body = body.substr(0, comma);
    }
    const auto c1 = body.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : body.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError(flag + ": expected lo:hi:n[,log], got '" + text + "'");
    g.lo = body.substr(0, c1);
    g.hi = body.substr(c1 + 1, c2 - c1 - 1);
    const double n = parse_number(body.substr(c2 + 1), flag);
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6) throw ConfigError(flag + ": point count must be a positive integer");
    g.n = static_cast<Eigen::Index>(n);
    return g;
}

Eigen::ArrayXd grid_values(double lo, double hi, const GridSpec& g, const std::string& flag)
{
    if (g.n == 1) return Eigen::ArrayXd::Constant(1, lo);
    if (!(hi > lo)) throw ConfigError(flag + ": hi must exceed lo");
    if (g.log) {
        if (!(lo > 0.0)) throw ConfigError(flag + ": log spacing needs lo > 0");
        return log_spaced(lo, hi, g.n);
    }
    return Eigen::ArrayXd::LinSpaced(g.n, lo, hi);
}

std::string quote(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch == '\n' ? ' ' : ch);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct Options {
    std::string material;
    std::string radius_nm;
    std::string eta = "1";
    std::string density = "2.26";
    std::string t0;
    std::string t1;
    std::string omega;
    std::string omega_grid;
    std::string t0_grid;
    std::string t_end;
    std::string window;
    std::string out;
    std::string rel_tol;
    std::string cutoff_factor;
    std::string above_grid = "truncate";
    bool no_radiative_correction = false;
    bool peak = false;
    bool numeric = false;
    bool seedless = false;
};

enum class Response { drude_linear, clausius_mossotti };

struct Setup {
    std::string material_text;
    Response response;
    std::optional<double> sigma0;           // Gaussian, Drude materials
    std::vector<PermittivityTable> tables;  // tabulated materials
    std::vector<double> weights;
    ParticleGeometry geometry;
    PolarizabilitySpec particle;
    QuadratureConfig quad;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

QuadratureConfig quadrature_from(const Options& o)
{
    QuadratureConfig q;
    if (!o.rel_tol.empty()) q.rel_tol = parse_positive(o.rel_tol, "--rel-tol");
    if (!o.cutoff_factor.empty()) q.cutoff_factor = parse_positive(o.cutoff_factor, "--cutoff-factor");
    try {
        q.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return q;
}

ParticleGeometry geometry_from(const Options& o)
{
    if (o.radius_nm.empty()) throw ConfigError("--radius-nm is required");
    const double a = parse_positive(o.radius_nm, "--radius-nm") * 1e-7;
    const double eta = parse_positive(o.eta, "--eta");
    const double rho = parse_positive(o.density, "--density");
    if (eta > 1.0) throw ConfigError("--eta: aspect ratio must be in (0, 1]");
    return eta == 1.0 ? ParticleGeometry::sphere(a, rho) : ParticleGeometry::oblate_spheroid(a, eta, rho);
}

Setup setup_from(const Options& o)
{
    if (o.material.empty()) throw ConfigError("--material is required");
    const ParticleGeometry geometry = geometry_from(o);
    const bool rc = !o.no_radiative_correction;
    const QuadratureConfig quad = quadrature_from(o);

    AboveGridPolicy above;
    if (o.above_grid == "truncate") above = AboveGridPolicy::truncate;
    else if (o.above_grid == "error") above = AboveGridPolicy::error;
    else throw ConfigError("--above-grid: expected 'truncate' or 'error', got '" + o.above_grid + "'");

    const auto colon = o.material.find(':');
    if (colon == std::string::npos)
        throw ConfigError("--material: expected drude:<S/m>, drude-cm:<S/m> or table:<path>[,<path>]");
    const std::string kind = o.material.substr(0, colon);
    const std::string arg = o.material.substr(colon + 1);

    if (kind == "drude" || kind == "drude-cm") {
        const double sigma = conductivity_si_to_gaussian(parse_positive(arg, "--material"));
        if (kind == "drude")
            return {o.material, Response::drude_linear, sigma, {}, {}, geometry, drude_low_frequency(geometry, sigma, rc), quad};
        return {o.material, Response::clausius_mossotti, sigma, {}, {}, geometry,
                clausius_mossotti(geometry, MaterialModel::drude(sigma), rc), quad};
    }
    if (kind == "table") {
        std::vector<PermittivityTable> tables;
        for (const auto& path : split(arg, ',')) {
            if (path.empty()) throw ConfigError("--material: empty table path");
            tables.push_back(load_permittivity_table(std::filesystem::path(path)));
        }
        auto material = MaterialModel::tabulated(tables, {}, ExtrapolationPolicy{above});
        auto weights = std::get<TabulatedMaterial>(material.variant()).weights;
        return {o.material, Response::clausius_mossotti, std::nullopt, std::move(tables), std::move(weights), geometry,
                clausius_mossotti(geometry, material, rc), quad};
    }
    throw ConfigError("--material: unknown kind '" + kind + "'");
}

double parse_t0(const Options& o)
{
    if (o.t0.empty()) throw ConfigError("--t0 is required");
    const double T0 = parse_number(o.t0, "--t0");
    if (!(T0 >= 0.0)) throw ConfigError("--t0: temperature must be >= 0");
    return T0;
}

std::function<double()> theta0_scale(double T0)
{
    return [T0] {
        if (!(T0 > 0.0)) throw ConfigError("x<factor>theta0 needs T0 > 0");
        return thermal_angular_frequency(T0);
    };
}

bool t1_is_equilibrium(const Options& o)
{
    return o.t1 == "equilibrium";
}

double resolve_t1(const Options& o, const Setup& s, double T0, double Omega)
{
    if (o.t1.empty() || o.t1 == "equal") return T0;
    if (t1_is_equilibrium(o)) return equilibrium_temperature(s.particle, T0, Omega, s.quad).T1_star;
    const double T1 = parse_number(o.t1, "--t1");
    if (!(T1 >= 0.0)) throw ConfigError("--t1: temperature must be >= 0");
    return T1;
}

Eigen::ArrayXd omega_values(const Options& o, double T0, bool required)
{
    const auto scale = theta0_scale(T0);
    if (!o.omega_grid.empty()) {
        if (!o.omega.empty()) throw ConfigError("--omega and --omega-grid are mutually exclusive");
        const GridSpec g = parse_grid(o.omega_grid, "--omega-grid");
        return grid_values(parse_scaled(g.lo, "--omega-grid", "theta0", scale),
                           parse_scaled(g.hi, "--omega-grid", "theta0", scale), g, "--omega-grid");
    }
    if (o.omega.empty()) {
        if (required) throw ConfigError("--omega or --omega-grid is required");
        return Eigen::ArrayXd::Zero(1);
    }
    return Eigen::ArrayXd::Constant(1, parse_scaled(o.omega, "--omega", "theta0", scale));
}

void write_header(std::ostream& os, const std::string& command, const Options& o, const Setup& s,
                  const std::vector<std::pair<std::string, std::string>>& extra)
{
    os << "# vacfric " << command << '\n';
    os << "# material=" << s.material_text << '\n';
    os << "# response=" << (s.response == Response::drude_linear ? "drude-linear" : "clausius-mossotti") << '\n';
    if (s.sigma0) os << "# sigma0_gaussian=" << fmt(*s.sigma0) << '\n';
    for (std::size_t k = 0; k < s.tables.size(); ++k) {
        const auto& t = s.tables[k];
        os << "# table[" << k << "]=" << t.label << " orientation=" << to_string(t.orientation)
           << " weight=" << fmt(s.weights[k]) << " nodes=" << t.size() << '\n';
    }
    if (!s.tables.empty()) os << "# above_grid=" << o.above_grid << '\n';
    os << "# radiative_correction=" << (s.particle.radiative_correction() ? "on" : "off") << '\n';
    os << "# radius_cm=" << fmt(s.geometry.radius()) << '\n';
    os << "# eta=" << fmt(s.geometry.aspect_ratio()) << '\n';
    os << "# density_g_cm3=" << fmt(s.geometry.density()) << '\n';
    os << "# rel_tol=" << fmt(s.quad.rel_tol) << '\n';
    os << "# cutoff_factor=" << fmt(s.quad.cutoff_factor) << '\n';
    for (const auto& [k, v] : extra) os << "# " << k << '=' << v << '\n';
}

void warn_validity(const SpinSystem& sys, std::ostream& err)
{
    for (const auto& w : sys.validity_warnings()) err << "warning msg=\"" << quote(w) << "\"\n";
}

// ---------------------------------------------------------------------------
// Commands

void cmd_observables(const Options& o, std::ostream& os, std::ostream& err)
{
    const Setup s = setup_from(o);
    const double T0 = parse_t0(o);
    const Eigen::ArrayXd omegas = omega_values(o, T0, true);

    if (o.omega_grid.empty()) {
        const double Omega = omegas[0];
        const double T1 = resolve_t1(o, s, T0, Omega);
        const SpinSystem sys{s.particle, T0, T1, Omega};
        warn_validity(sys, err);
        const ObservableSet r = compute_observables(sys, s.quad);
        write_header(os, "observables", o, s,
                     {{"T0_K", fmt(T0)}, {"T1", o.t1.empty() ? "equal" : o.t1}, {"omega", fmt(Omega)}});
        os << "Omega,T0,T1,M,P_rad,P_abs,quad_error\n";
        os << fmt(Omega) << ',' << fmt(T0) << ',' << fmt(T1) << ',' << fmt(r.torque) << ',' << fmt(r.p_rad) << ','
           << fmt(r.p_abs) << ',' << fmt(r.quad_error) << '\n';
        return;
    }

    if (!(T0 > 0.0)) throw ConfigError("--omega-grid with observables needs T0 > 0");
    const double theta0 = thermal_angular_frequency(T0);
    // -M Omega in units of hbar a^3 theta0^6 / (60 pi^2 c^3 sigma0).
    double norm = std::nan("");
    if (s.sigma0) {
        const double a = s.geometry.radius();
        norm = K::hbar * a * a * a * std::pow(theta0, 6) / (60.0 * K::pi * K::pi * K::c * K::c * K::c * *s.sigma0);
    }
    write_header(os, "observables", o, s,
                 {{"T0_K", fmt(T0)}, {"omega_grid", o.omega_grid},
                  {"stopping_norm", "-M Omega / (hbar a^3 theta0^6 / (60 pi^2 c^3 sigma0))"}});
    os << "Omega,Omega_over_theta0,mode,T0,T1,M,P_rad,P_abs,quad_error,stopping_norm\n";
    for (Eigen::Index i = 0; i < omegas.size(); ++i) {
        const double Omega = omegas[i];
        for (const bool equilibrium : {false, true}) {
            const double T1 = equilibrium ? equilibrium_temperature(s.particle, T0, Omega, s.quad).T1_star : T0;
            const ObservableSet r = compute_observables(SpinSystem{s.particle, T0, T1, Omega}, s.quad);
            os << fmt(Omega) << ',' << fmt(Omega / theta0) << ',' << (equilibrium ? "equilibrium" : "equal") << ','
               << fmt(T0) << ',' << fmt(T1) << ',' << fmt(r.torque) << ',' << fmt(r.p_rad) << ',' << fmt(r.p_abs)
               << ',' << fmt(r.quad_error) << ',' << fmt(-r.torque * Omega / norm) << '\n';
        }
    }
}

void cmd_spectrum(const Options& o, std::ostream& os, std::ostream& err)
{
    const Setup s = setup_from(o);
    const double T0 = parse_t0(o);
    if (!o.omega_grid.empty()) throw ConfigError("spectrum takes a single --omega");
    const double Omega = omega_values(o, T0, false)[0];
    const double T1 = resolve_t1(o, s, T0, Omega);
    const SpinSystem sys{s.particle, T0, T1, Omega};
    warn_validity(sys, err);

    const double scale = std::max({sys.theta0(), sys.theta1(), Omega});
    if (!(scale > 0.0)) throw ConfigError("spectrum: T0, T1 and Omega are all zero");
    double hi = s.quad.cutoff_factor * scale;
    const double limit = s.particle.max_frequency() - Omega;
    if (hi > limit) {
        if (s.particle.above_grid_policy() == AboveGridPolicy::error)
            throw RangeError("spectrum: grid needs frequencies above the material data");
        hi = limit;
    }
    const double lo = 1e-3 * scale;
    if (!(hi > lo)) throw RangeError("spectrum: material data does not cover the spectral window");
    const SpectralGrid spec = emission_spectrum_grid(sys, log_spaced(lo, hi, 512));

    write_header(os, "spectrum", o, s,
                 {{"T0_K", fmt(T0)}, {"T1_K", fmt(T1)}, {"T1", o.t1.empty() ? "equal" : o.t1}, {"omega", fmt(Omega)}});
    os << "omega,dP_domega,kind\n";
    for (Eigen::Index i = 0; i < spec.omegas.size(); ++i)
        os << fmt(spec.omegas[i]) << ',' << fmt(spec.values[i]) << ",spectrum\n";
    if (o.peak) {
        const double w = peak_emission_frequency(sys, s.quad);
        os << fmt(w) << ',' << fmt(emission_spectrum(sys, w)) << ",peak\n";
    }
}

void cmd_equilibrium(const Options& o, std::ostream& os, std::ostream& err)
{
    const Setup s = setup_from(o);
    const double T0 = parse_t0(o);
    const Eigen::ArrayXd omegas = omega_values(o, T0, true);
    const double theta0 = thermal_angular_frequency(T0);

    write_header(os, "equilibrium", o, s,
                 {{"T0_K", fmt(T0)}, {"omega", o.omega_grid.empty() ? o.omega : o.omega_grid}});
    os << "Omega,Omega_over_theta0,T1_K,T1_over_T0,theta1_over_Omega,status\n";
    const double nan = std::nan("");
    for (Eigen::Index i = 0; i < omegas.size(); ++i) {
        const double Omega = omegas[i];
        const double x = T0 > 0.0 ? Omega / theta0 : nan;
        try {
            const double T1 = equilibrium_temperature(s.particle, T0, Omega, s.quad).T1_star;
            const double theta1 = thermal_angular_frequency(T1);
            os << fmt(Omega) << ',' << fmt(x) << ',' << fmt(T1) << ',' << fmt(T0 > 0.0 ? T1 / T0 : nan) << ','
               << fmt(Omega > 0.0 ? theta1 / Omega : nan) << ",ok\n";
        } catch (const Error& e) {
            if (!e.is_numerical()) throw;
            err << "warning omega=" << fmt(Omega) << " msg=\"" << quote(e.what()) << "\"\n";
            os << fmt(Omega) << ',' << fmt(x) << ',' << fmt(nan) << ',' << fmt(nan) << ',' << fmt(nan) << ",failed\n";
        }
    }
}

// Drude conductivity standing in for a tabulated material: per-table fits over
// the window, combined as 1/sigma = sum w_k / sigma_k (Im alpha ~ 1/sigma).
double fitted_sigma(const Setup& s, const Options& o, std::ostream* err)
{
    double inv = 0.0;
    for (std::size_t k = 0; k < s.tables.size(); ++k) {
        const auto& t = s.tables[k];
        double lo = t.min_frequency();
        double hi = 10.0 * lo;
        if (!o.window.empty()) {
            const auto parts = split(o.window, ':');
            if (parts.size() != 2) throw ConfigError("--window: expected lo:hi in eV");
            lo = photon_energy_to_angular_frequency(parse_positive(parts[0], "--window"));
            hi = photon_energy_to_angular_frequency(parse_positive(parts[1], "--window"));
        }
        const DrudeFit fit = fit_drude_sigma(t, lo, hi);
        if (fit.flagged && err)
            *err << "warning msg=\"" << quote(t.label) << ": Drude fit residual " << fmt(fit.residual_rms)
                 << " exceeds 1e-2\"\n";
        inv += s.weights[k] / fit.sigma0;
    }
    return 1.0 / inv;
}

void cmd_stopping_time(const Options& o, std::ostream& os, std::ostream& err)
{
    const Setup s = setup_from(o);
    Eigen::ArrayXd temps;
    if (!o.t0_grid.empty()) {
        if (!o.t0.empty()) throw ConfigError("--t0 and --t0-grid are mutually exclusive");
        const GridSpec g = parse_grid(o.t0_grid, "--t0-grid");
        temps = grid_values(parse_positive(g.lo, "--t0-grid"), parse_positive(g.hi, "--t0-grid"), g, "--t0-grid");
    } else {
        temps = Eigen::ArrayXd::Constant(1, parse_t0(o));
    }

    const bool tabulated = !s.tables.empty();
    const double sigma = tabulated ? fitted_sigma(s, o, &err) : *s.sigma0;
    const bool numeric = tabulated || o.numeric;

    write_header(os, "stopping-time", o, s,
                 {{"T0", o.t0_grid.empty() ? o.t0 : o.t0_grid},
                  {"drude_sigma0_gaussian", fmt(sigma)},
                  {"window_eV", o.window.empty() ? "default" : o.window}});
    os << "T0,tau_seconds,tau_years,method\n";
    for (Eigen::Index i = 0; i < temps.size(); ++i) {
        const double T0 = temps[i];
        const double tau = stopping_time_drude(s.geometry, sigma, T0);
        os << fmt(T0) << ',' << fmt(tau) << ',' << fmt(seconds_to_years(tau)) << ",drude-analytic\n";
        if (numeric) {
            const StoppingTimeEstimate est = stopping_time_numeric(s.particle, T0, s.quad);
            if (!est.linear_regime_confirmed)
                err << "warning T0=" << fmt(T0) << " msg=\"linear regime not confirmed; probe change "
                    << fmt(est.relative_change) << "\"\n";
            os << fmt(T0) << ',' << fmt(est.tau) << ',' << fmt(seconds_to_years(est.tau)) << ",numeric\n";
        }
    }
}

void cmd_spindown(const Options& o, std::ostream& os, std::ostream& err)
{
    const Setup s = setup_from(o);
    const double T0 = parse_t0(o);
    if (!o.omega_grid.empty()) throw ConfigError("spindown takes a single --omega");
    const double Omega = omega_values(o, T0, true)[0];
    if (!(Omega > 0.0)) throw ConfigError("--omega: spin-down needs Omega > 0");
    if (o.t_end.empty()) throw ConfigError("--t-end is required");

    const auto tau = [&] {
        if (!(T0 > 0.0)) throw ConfigError("x<factor>tau needs T0 > 0");
        return s.tables.empty() ? stopping_time_drude(s.geometry, *s.sigma0, T0)
                                : stopping_time_numeric(s.particle, T0, s.quad).tau;
    };
    const double t_end = parse_scaled(o.t_end, "--t-end", "tau", tau);
    if (!(t_end > 0.0)) throw ConfigError("--t-end must be positive");

    const bool equilibrium = t1_is_equilibrium(o);
    const double T1 = equilibrium ? T0 : resolve_t1(o, s, T0, Omega);
    const SpinSystem sys{s.particle, T0, T1, Omega};
    warn_validity(sys, err);
    const SpinDownTrajectory traj = spin_down_trajectory(
        sys, equilibrium ? SpinDownMode::quasistatic_equilibrium : SpinDownMode::fixed_T1, 0.0, t_end, s.quad);

    write_header(os, "spindown", o, s,
                 {{"T0_K", fmt(T0)}, {"T1", o.t1.empty() ? "equal" : o.t1}, {"omega", fmt(Omega)},
                  {"t_end_s", fmt(t_end)}});
    os << "t,Omega,T1,P_rad,P_abs,stopping_power\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& l = traj.ledger[i];
        os << fmt(traj.times[i]) << ',' << fmt(traj.omegas[i]) << ',' << fmt(traj.T1_path[i]) << ',' << fmt(l.p_rad)
           << ',' << fmt(l.p_abs) << ',' << fmt(l.stopping_power) << '\n';
    }
}

void cmd_fit_drude(const Options& o, std::ostream& os, std::ostream& err)
{
    if (o.material.rfind("table:", 0) != 0) throw ConfigError("material fit-drude needs --material table:<path>");
    std::vector<PermittivityTable> tables;
    for (const auto& path : split(o.material.substr(6), ',')) tables.push_back(load_permittivity_table(std::filesystem::path(path)));

    os << "# vacfric material fit-drude\n# material=" << o.material << "\n# window_eV="
       << (o.window.empty() ? "default" : o.window) << '\n';
    os << "label,orientation,nodes,sigma0_SI,sigma0_gaussian,residual_rms,flagged\n";
    for (const auto& t : tables) {
        double lo = t.min_frequency();
        double hi = 10.0 * lo;
        if (!o.window.empty()) {
            const auto parts = split(o.window, ':');
            if (parts.size() != 2) throw ConfigError("--window: expected lo:hi in eV");
            lo = photon_energy_to_angular_frequency(parse_positive(parts[0], "--window"));
            hi = photon_energy_to_angular_frequency(parse_positive(parts[1], "--window"));
        }
        const DrudeFit fit = fit_drude_sigma(t, lo, hi);
        if (fit.flagged) err << "warning msg=\"" << quote(t.label) << ": data is not Drude-like in the window\"\n";
        os << t.label << ',' << to_string(t.orientation) << ',' << fit.nodes << ','
           << fmt(conductivity_gaussian_to_si(fit.sigma0)) << ',' << fmt(fit.sigma0) << ',' << fmt(fit.residual_rms)
           << ',' << (fit.flagged ? "yes" : "no") << '\n';
    }
}

void add_common(CLI::App* app, Options& o)
{
    app->add_option("--material", o.material, "drude:<S/m> | drude-cm:<S/m> | table:<path>[,<path>]");
    app->add_option("--radius-nm", o.radius_nm, "Equatorial radius in nm");
    app->add_option("--eta", o.eta, "Aspect ratio c/a in (0, 1]");
    app->add_option("--density", o.density, "Mass density in g/cm^3");
    app->add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance");
    app->add_option("--cutoff-factor", o.cutoff_factor, "Integration cutoff in thermal frequencies");
    app->add_option("--above-grid", o.above_grid, "truncate | error for tabulated data");
    app->add_flag("--no-radiative-correction", o.no_radiative_correction, "Use quasistatic polarizabilities");
    app->add_flag("--seedless", o.seedless, "Accepted for compatibility; output is always deterministic");
    app->add_option("--out", o.out, "Output CSV path (default stdout)");
}

void emit_error(std::ostream& err, const char* kind, const std::string& msg)
{
    err << "error kind=" << kind << " msg=\"" << quote(msg) << "\"\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Vacuum friction on spinning nanoparticles"};
    app.require_subcommand(1);
    Options o;

    auto* obs = app.add_subcommand("observables", "Torque, radiated and absorbed power");
    add_common(obs, o);
    obs->add_option("--t0", o.t0, "Vacuum temperature in K");
    obs->add_option("--t1", o.t1, "Particle temperature in K, 'equal' or 'equilibrium'");
    obs->add_option("--omega", o.omega, "Rotation frequency in rad/s or x<f>theta0");
    obs->add_option("--omega-grid", o.omega_grid, "lo:hi:n[,log]");

    auto* spec = app.add_subcommand("spectrum", "Emission spectrum dP/domega");
    add_common(spec, o);
    spec->add_option("--t0", o.t0, "Vacuum temperature in K");
    spec->add_option("--t1", o.t1, "Particle temperature in K, 'equal' or 'equilibrium'");
    spec->add_option("--omega", o.omega, "Rotation frequency in rad/s or x<f>theta0");
    spec->add_flag("--peak", o.peak, "Append the spectral peak");

    auto* eq = app.add_subcommand("equilibrium", "Equilibrium particle temperature");
    add_common(eq, o);
    eq->add_option("--t0", o.t0, "Vacuum temperature in K");
    eq->add_option("--omega", o.omega, "Rotation frequency in rad/s or x<f>theta0");
    eq->add_option("--omega-grid", o.omega_grid, "lo:hi:n[,log]");

    auto* st = app.add_subcommand("stopping-time", "Rotational e-folding time");
    add_common(st, o);
    st->add_option("--t0", o.t0, "Vacuum temperature in K");
    st->add_option("--t0-grid", o.t0_grid, "lo:hi:n[,log] in K");
    st->add_option("--window", o.window, "Drude fit window lo:hi in eV (tabulated materials)");
    st->add_flag("--numeric", o.numeric, "Also compute tau from the full torque");

    auto* sd = app.add_subcommand("spindown", "Integrate Omega(t)");
    add_common(sd, o);
    sd->add_option("--t0", o.t0, "Vacuum temperature in K");
    sd->add_option("--t1", o.t1, "Particle temperature in K, 'equal' or 'equilibrium'");
    sd->add_option("--omega", o.omega, "Initial rotation frequency in rad/s or x<f>theta0");
    sd->add_option("--t-end", o.t_end, "End time in s or x<f>tau");

    auto* mat = app.add_subcommand("material", "Material data tools");
    mat->require_subcommand(1);
    auto* fit = mat->add_subcommand("fit-drude", "Fit sigma0 to the low-frequency part of a table");
    fit->add_option("--material", o.material, "table:<path>[,<path>]");
    fit->add_option("--window", o.window, "Fit window lo:hi in eV");
    fit->add_option("--out", o.out, "Output CSV path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "config", e.what());
        return config_error;
    }

    std::ostringstream buffer;
    try {
        if (obs->parsed()) cmd_observables(o, buffer, err);
        else if (spec->parsed()) cmd_spectrum(o, buffer, err);
        else if (eq->parsed()) cmd_equilibrium(o, buffer, err);
        else if (st->parsed()) cmd_stopping_time(o, buffer, err);
        else if (sd->parsed()) cmd_spindown(o, buffer, err);
        else if (fit->parsed()) cmd_fit_drude(o, buffer, err);
    } catch (const Error& e) {
        emit_error(err, e.is_numerical() ? "numerical" : "config", e.what());
        return e.is_numerical() ? numerical_error : config_error;
    } catch (const std::exception& e) {
        emit_error(err, "numerical", e.what());
        return numerical_error;
    }

    if (o.out.empty()) {
        out << buffer.str();
        return ok;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        emit_error(err, "config", "cannot open output file '" + o.out + "'");
        return config_error;
    }
    file << buffer.str();
    return ok;
}

} // namespace vacfric::cli
