#include "vacfric/material.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace vacfric {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string line_context(std::size_t line_no)
{
    return "line " + std::to_string(line_no) + ": ";
}

struct Row {
    double omega, re, im;
    std::size_t line;
};

} // namespace

DrudeModel::DrudeModel(double sigma0_gaussian) : sigma0(sigma0_gaussian)
{
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        throw DomainError("DrudeModel: sigma0 must be positive and finite");
}

std::string to_string(CrystalOrientation o)
{
    switch (o) {
    case CrystalOrientation::E_perp_c: return "Eperp";
    case CrystalOrientation::E_par_c: return "Epar";
    case CrystalOrientation::isotropic: return "iso";
    }
    return "iso";
}

CrystalOrientation parse_orientation(const std::string& s)
{
    const auto t = trim(s);
    if (t == "Eperp") return CrystalOrientation::E_perp_c;
    if (t == "Epar") return CrystalOrientation::E_par_c;
    if (t == "iso") return CrystalOrientation::isotropic;
    throw FormatError("unknown orientation '" + std::string(t) + "' (expected Eperp, Epar or iso)");
}

void PermittivityTable::validate() const
{
    if (grid.size() != eps_re.size() || grid.size() != eps_im.size())
        throw FormatError("permittivity table: column lengths differ");
    if (grid.size() < 4)
        throw FormatError("permittivity table: at least 4 rows required, got " + std::to_string(grid.size()));
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || !(grid[i] > 0.0))
            throw FormatError("permittivity table: non-positive or non-finite frequency");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw FormatError("permittivity table: grid is not strictly increasing");
        if (!std::isfinite(eps_re[i]) || !std::isfinite(eps_im[i]))
            throw FormatError("permittivity table: non-finite permittivity");
        if (eps_im[i] < 0.0)
            throw ValidationError("permittivity table: negative Im(eps) (active medium)");
    }
}

PermittivityTable load_permittivity_table(std::istream& in)
{
    PermittivityTable table;
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data = false;

    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;

        if (body.front() == '#') {
            auto meta = trim(body.substr(1));
            const auto colon = meta.find(':');
            if (colon == std::string_view::npos) continue;
            const auto key = trim(meta.substr(0, colon));
            const auto value = std::string(trim(meta.substr(colon + 1)));
            if (key == "material") {
                table.label = value;
            } else if (key == "orientation") {
                try {
                    table.orientation = parse_orientation(value);
                } catch (const FormatError& e) {
                    throw FormatError(line_context(line_no) + e.what());
                }
            } else if (key == "radius_nm") {
                const auto r = parse_double(value);
                if (!r || !(*r > 0.0))
                    throw FormatError(line_context(line_no) + "invalid radius_nm '" + value + "'");
                table.radius_nm = *r;
            }
            continue;
        }

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            fields.push_back(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 3)
            throw FormatError(line_context(line_no) + "expected 3 comma-separated fields");

        const auto e = parse_double(fields[0]);
        const auto re = parse_double(fields[1]);
        const auto im = parse_double(fields[2]);
        if (!e || !re || !im) {
            // A single column-name row before the data is tolerated.
            if (!seen_data && rows.empty() && !e) continue;
            throw FormatError(line_context(line_no) + "unparseable number");
        }
        seen_data = true;
        if (!std::isfinite(*e) || !(*e > 0.0))
            throw FormatError(line_context(line_no) + "photon energy must be positive");
        if (!std::isfinite(*re) || !std::isfinite(*im))
            throw FormatError(line_context(line_no) + "non-finite permittivity");
        if (*im < 0.0)
            throw ValidationError(line_context(line_no) + "negative Im(eps) violates passivity");
        rows.push_back({photon_energy_to_angular_frequency(*e), *re, *im, line_no});
    }

    if (rows.size() < 4)
        throw FormatError("permittivity table: at least 4 data rows required, got " + std::to_string(rows.size()));

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.omega < b.omega; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].omega > rows[i - 1].omega))
            throw FormatError(line_context(rows[i].line) + "duplicate photon energy");
    }

    const auto n = static_cast<Eigen::Index>(rows.size());
    table.grid.resize(n);
    table.eps_re.resize(n);
    table.eps_im.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        table.grid[i] = rows[i].omega;
        table.eps_re[i] = rows[i].re;
        table.eps_im[i] = rows[i].im;
    }
    table.validate();
    return table;
}

PermittivityTable load_permittivity_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open permittivity table '" + path.string() + "'");
    try {
        return load_permittivity_table(in);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_permittivity_table(std::ostream& out, const PermittivityTable& table)
{
    table.validate();
    if (!table.label.empty()) out << "# material: " << table.label << '\n';
    out << "# orientation: " << to_string(table.orientation) << '\n';
    char buf[96];
    if (table.radius_nm) {
        std::snprintf(buf, sizeof buf, "# radius_nm: %.17g\n", *table.radius_nm);
        out << buf;
    }
    for (Eigen::Index i = 0; i < table.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g, %.17g, %.17g\n",
                      angular_frequency_to_photon_energy(table.grid[i]), table.eps_re[i], table.eps_im[i]);
        out << buf;
    }
}

Complex interpolate_permittivity(const PermittivityTable& table, double omega)
{
    if (!(omega > 0.0)) throw DomainError("interpolate_permittivity: omega must be positive");
    const auto& g = table.grid;
    const Eigen::Index n = g.size();
    const double lo = g[0];
    const double hi = g[n - 1];

    if (omega > hi) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "interpolate_permittivity: omega = %.6e rad/s above tabulated maximum %.6e",
                      omega, hi);
        throw RangeError(buf);
    }
    if (omega < lo) return {table.eps_re[0], table.eps_im[0] * lo / omega};

    const auto it = std::upper_bound(g.data(), g.data() + n, omega);
    Eigen::Index j = static_cast<Eigen::Index>(it - g.data()); // first node > omega
    if (j == n) return {table.eps_re[n - 1], table.eps_im[n - 1]};
    const Eigen::Index i = j - 1;
    if (omega == g[i]) return {table.eps_re[i], table.eps_im[i]};

    const double t = std::log(omega / g[i]) / std::log(g[j] / g[i]);
    const double re = table.eps_re[i] + t * (table.eps_re[j] - table.eps_re[i]);
    double im;
    if (table.eps_im[i] > 0.0 && table.eps_im[j] > 0.0) {
        im = table.eps_im[i] * std::pow(table.eps_im[j] / table.eps_im[i], t);
    } else {
        im = table.eps_im[i] + t * (table.eps_im[j] - table.eps_im[i]);
    }
    return {re, im};
}

Complex table_permittivity(const PermittivityTable& table, double omega)
{
    if (omega == 0.0) throw SingularityError("table_permittivity: omega = 0");
    const Complex eps = interpolate_permittivity(table, std::abs(omega));
    return omega > 0.0 ? eps : std::conj(eps);
}

DrudeFit fit_drude_sigma(const PermittivityTable& table, double omega_lo, double omega_hi)
{
    if (!(omega_lo < omega_hi) || omega_lo < table.min_frequency() || omega_hi > table.max_frequency())
        throw RangeError("fit_drude_sigma: window must lie inside the tabulated grid");

    const auto& g = table.grid;
    const auto mask = (g >= omega_lo && g <= omega_hi);
    const auto count = static_cast<std::size_t>(mask.count());
    if (count < 3) throw RangeError("fit_drude_sigma: window contains fewer than 3 nodes");

    Eigen::ArrayXd samples(static_cast<Eigen::Index>(count));
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (mask[i]) samples[k++] = g[i] * table.eps_im[i] / (4.0 * Constants::pi);
    }
    // The least-squares constant through omega Im(eps) / 4 pi is the mean.
    const double sigma = samples.mean();
    const double rms = std::sqrt((samples - sigma).square().mean());
    const double rel = sigma != 0.0 ? rms / std::abs(sigma) : std::numeric_limits<double>::infinity();
    return {sigma, rel, rel > 1e-2, count};
}

std::vector<double> default_orientation_weights(const std::vector<PermittivityTable>& tables)
{
    if (tables.size() == 1) return {1.0};
    if (tables.size() == 2) {
        const auto o0 = tables[0].orientation;
        const auto o1 = tables[1].orientation;
        if (o0 == CrystalOrientation::E_perp_c && o1 == CrystalOrientation::E_par_c) return {2.0 / 3.0, 1.0 / 3.0};
        if (o0 == CrystalOrientation::E_par_c && o1 == CrystalOrientation::E_perp_c) return {1.0 / 3.0, 2.0 / 3.0};
    }
    return std::vector<double>(tables.size(), 1.0 / static_cast<double>(tables.size()));
}

MaterialModel MaterialModel::drude(double sigma0_gaussian)
{
    return MaterialModel(DrudeModel(sigma0_gaussian), {});
}

MaterialModel MaterialModel::tabulated(std::vector<PermittivityTable> tables, std::vector<double> weights,
                                       ExtrapolationPolicy policy)
{
    if (tables.empty()) throw ValidationError("tabulated material needs at least one table");
    for (const auto& t : tables) t.validate();
    if (weights.empty()) weights = default_orientation_weights(tables);
    if (weights.size() != tables.size())
        throw ValidationError("orientation weights: one weight per table required");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ValidationError("orientation weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("orientation weights must sum to 1");
    return MaterialModel(TabulatedMaterial{std::move(tables), std::move(weights)}, policy);
}

double MaterialModel::max_frequency() const
{
    if (const auto* tab = std::get_if<TabulatedMaterial>(&variant_)) {
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& t : tab->tables) hi = std::min(hi, t.max_frequency());
        return hi;
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace vacfric
