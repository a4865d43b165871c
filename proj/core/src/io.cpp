#include "spiked/io.hpp"

#include <cstdio>

#include "json.hpp"
#include "spiked/errors.hpp"

namespace spiked::io {

std::string format_double(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return buffer;
}

namespace {

std::string format_optional(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string{};
}

}  // namespace

void write_measure_csv(std::ostream& out, const WeightedSpectralMeasure& mu) {
    out << "index,eigenvalue,weight\n";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        out << i << ',' << format_double(mu.eigenvalues()[i]) << ','
            << format_double(mu.weights()[i]) << '\n';
    }
}

void write_atoms_csv(std::ostream& out, std::span<const Atom> atoms) {
    out << "location,weight\n";
    for (const Atom& atom : atoms) {
        out << format_double(atom.location) << ',' << format_double(atom.weight) << '\n';
    }
}

void write_density_csv(std::ostream& out, std::span<const double> grid,
                       const std::function<double(double)>& density) {
    out << "x,density\n";
    for (double x : grid) {
        out << format_double(x) << ',' << format_double(density(x)) << '\n';
    }
}

void write_xy_csv(std::ostream& out, const std::string& y_name, std::span<const double> grid,
                  const std::function<std::optional<double>(double)>& fn) {
    out << "x," << y_name << '\n';
    for (double x : grid) {
        const std::optional<double> y = fn(x);
        if (!y) continue;
        out << format_double(x) << ',' << format_double(*y) << '\n';
    }
}

void write_profile_csv(std::ostream& out, const OverlapProfile& profile) {
    out << "x,count,estimate,theory,abs_error\n";
    for (std::size_t j = 0; j < profile.grid.size(); ++j) {
        std::optional<double> abs_error;
        if (profile.estimates[j] && profile.theory[j]) {
            abs_error = std::abs(*profile.estimates[j] - *profile.theory[j]);
        }
        out << format_double(profile.grid[j]) << ',' << profile.counts[j] << ','
            << format_optional(profile.estimates[j]) << ',' << format_optional(profile.theory[j])
            << ',' << format_optional(abs_error) << '\n';
    }
}

void write_diagnostic_csv(std::ostream& out, const LocalLawDiagnostic& diagnostic) {
    out << "E,eta,abs_shat,psi,ratio\n";
    for (const auto& point : diagnostic.points) {
        out << format_double(point.E) << ',' << format_double(point.eta) << ','
            << format_double(point.abs_shat) << ',' << format_double(point.psi) << ','
            << format_double(point.ratio) << '\n';
    }
}

std::string measure_json(const WeightedSpectralMeasure& mu) {
    nlohmann::json j;
    j["eigenvalues"] = mu.eigenvalues();
    j["weights"] = mu.weights();
    return j.dump(2);
}

std::string profile_json(const OverlapProfile& profile) {
    nlohmann::json j;
    j["epsilon"] = profile.epsilon;
    j["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        nlohmann::json point;
        point["x"] = profile.grid[i];
        point["count"] = profile.counts[i];
        if (profile.estimates[i]) point["estimate"] = *profile.estimates[i];
        if (profile.theory[i]) point["theory"] = *profile.theory[i];
        j["points"].push_back(point);
    }
    return j.dump(2);
}

std::string diagnostic_json(const LocalLawDiagnostic& diagnostic) {
    nlohmann::json j;
    j["summary"] = diagnostic.summary;
    j["points"] = nlohmann::json::array();
    for (const auto& point : diagnostic.points) {
        j["points"].push_back({{"E", point.E},
                               {"eta", point.eta},
                               {"abs_shat", point.abs_shat},
                               {"psi", point.psi},
                               {"ratio", point.ratio}});
    }
    return j.dump(2);
}

std::string outlier_json(const OutlierReport& report) {
    nlohmann::json j;
    j["exists"] = report.exists;
    j["theta"] = report.theta;
    j["model"] = report.model == Model::additive ? "additive" : "multiplicative";
    if (report.exists) {
        j["location"] = report.location;
        j["mass"] = report.mass;
    }
    return j.dump(2);
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open output file: " + path.string());
    }
    return out;
}

}  // namespace spiked::io
