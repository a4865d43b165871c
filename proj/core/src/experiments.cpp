#include "spiked/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "spiked/closed_forms.hpp"
#include "spiked/eig.hpp"
#include "spiked/errors.hpp"
#include "spiked/io.hpp"
#include "spiked/overlap.hpp"

namespace spiked {

namespace {

// Sup-errors are taken on an interior sub-grid this far from every bulk edge:
// the ratio estimator's variance blows up where the density vanishes.
constexpr double kInteriorMarginAdditive = 0.2;
constexpr double kInteriorMarginMultiplicative = 0.4;
// Slack absorbing the support scan's grid quantization when testing interior
// membership.
constexpr double kInteriorSlop = 1.5e-3;
// Boundary height for density evaluations backing ratio_general.
constexpr double kBoundaryEta = 1e-4;

double interior_margin(Model model) {
    return model == Model::additive ? kInteriorMarginAdditive : kInteriorMarginMultiplicative;
}

}  // namespace

std::vector<double> GridSpec::points() const {
    if (!(step > 0.0)) throw ConfigError("grid step must be positive");
    if (hi < lo) throw ConfigError("grid range is empty");
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) grid.push_back(lo + j * step);
    return grid;
}

TheoryCurves theory_curves(const SpikedModelConfig& config) {
    TheoryCurves theory;
    const double theta = config.theta;
    if (config.model == Model::additive) {
        FreeAdditiveSolution bulk(config.base);
        theory.support = bulk.support();
        theory.predicted = find_outlier_additive(theta, bulk);
        const bool rank_one =
            config.base.size() == 1 && config.base.atoms().front().location == 0.0;
        if (rank_one) {
            RankOneLaw law = spiked_semicircle_law(theta);
            theory.density = law.density;
            theory.atoms = law.atoms;
            theory.profile = [theta](double x) -> std::optional<double> {
                if (std::abs(x) >= 2.0) return std::nullopt;
                return overlap_profile_additive(theta, x);
            };
        } else {
            auto spiked_density = [theta, bulk](double x) {
                return spiked_stieltjes_additive(theta, bulk, {x, kBoundaryEta}).imag() /
                       std::numbers::pi;
            };
            auto bulk_density = [bulk](double x) {
                return bulk({x, kBoundaryEta}).imag() / std::numbers::pi;
            };
            theory.density = spiked_density;
            theory.profile = [spiked_density, bulk_density](double x) -> std::optional<double> {
                try {
                    return ratio_general(spiked_density, bulk_density, x);
                } catch (const DivisionNearZeroError&) {
                    return std::nullopt;
                }
            };
            if (theory.predicted.exists) {
                theory.atoms = {{theory.predicted.location, theory.predicted.mass}};
            }
        }
    } else {
        const double alpha = static_cast<double>(sample_count(config)) / config.n;
        FreeMultiplicativeSolution bulk(config.base, alpha);
        theory.support = bulk.support();
        theory.predicted = find_outlier_multiplicative(theta, bulk);
        const bool rank_one =
            config.base.size() == 1 && config.base.atoms().front().location == 1.0;
        if (rank_one) {
            RankOneLaw law = spiked_mp_law(alpha, theta);
            theory.density = law.density;
            theory.atoms = law.atoms;
            const Interval edges = mp_edges(alpha);
            theory.profile = [alpha, theta, edges](double x) -> std::optional<double> {
                if (x <= edges.lo || x >= edges.hi) return std::nullopt;
                return overlap_profile_multiplicative(alpha, theta, x);
            };
        } else {
            auto spiked_density = [theta, bulk](double x) {
                return spiked_stieltjes_multiplicative(theta, bulk, {x, kBoundaryEta}).imag() /
                       std::numbers::pi;
            };
            auto bulk_density = [bulk](double x) {
                return bulk({x, kBoundaryEta}).imag() / std::numbers::pi;
            };
            theory.density = spiked_density;
            theory.profile = [spiked_density, bulk_density](double x) -> std::optional<double> {
                try {
                    return ratio_general(spiked_density, bulk_density, x);
                } catch (const DivisionNearZeroError&) {
                    return std::nullopt;
                }
            };
            if (theory.predicted.exists) {
                theory.atoms = {{theory.predicted.location, theory.predicted.mass}};
            }
        }
    }
    return theory;
}

StieltjesEvaluator spiked_theory_evaluator(const SpikedModelConfig& config) {
    const double theta = config.theta;
    if (config.model == Model::additive) {
        if (config.base.size() == 1 && config.base.atoms().front().location == 0.0) {
            return spiked_semicircle_evaluator(theta);
        }
        FreeAdditiveSolution bulk(config.base);
        const double guard = bulk.domain_guard();
        return StieltjesEvaluator(
            [theta, bulk](Complex z) { return spiked_stieltjes_additive(theta, bulk, z); },
            StieltjesEvaluator::Source::fixed_point, guard);
    }
    const double alpha = static_cast<double>(sample_count(config)) / config.n;
    if (config.base.size() == 1 && config.base.atoms().front().location == 1.0) {
        return spiked_mp_evaluator(alpha, theta);
    }
    FreeMultiplicativeSolution bulk(config.base, alpha);
    const double guard = bulk.domain_guard();
    return StieltjesEvaluator(
        [theta, bulk](Complex z) { return spiked_stieltjes_multiplicative(theta, bulk, z); },
        StieltjesEvaluator::Source::fixed_point, guard);
}

namespace {

bool interior_point(double x, const std::vector<Interval>& support, Model model) {
    const double margin = interior_margin(model);
    for (const Interval& interval : support) {
        if (x >= interval.lo + margin - kInteriorSlop && x <= interval.hi - margin + kInteriorSlop) {
            return true;
        }
    }
    return false;
}

std::string opt_text(const std::optional<double>& value) {
    return value ? io::format_double(*value) : std::string("-");
}

}  // namespace

ComparisonReport run_scenario(const Scenario& scenario,
                              const std::optional<std::filesystem::path>& out_dir) {
    if (scenario.seeds.empty()) throw ConfigError("scenario needs at least one seed");
    SpikedModelConfig config = scenario.config;
    validate(config);

    TheoryCurves theory = theory_curves(config);

    ComparisonReport report;
    report.scenario = scenario.name;
    report.model = config.model;
    report.predicted = theory.predicted;

    GridSpec grid_spec;
    if (scenario.grid) {
        grid_spec = *scenario.grid;
    } else {
        grid_spec.step = 0.05;
        grid_spec.lo = theory.support.front().lo + interior_margin(config.model);
        grid_spec.hi = theory.support.back().hi - interior_margin(config.model);
        if (grid_spec.hi < grid_spec.lo) {
            grid_spec.lo = theory.support.front().lo;
            grid_spec.hi = theory.support.back().hi;
        }
    }
    const std::vector<double> grid = grid_spec.points();

    std::vector<std::optional<double>> theory_values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) theory_values[j] = theory.profile(grid[j]);
    std::vector<char> interior(grid.size(), 0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        interior[j] = interior_point(grid[j], theory.support, config.model) ? 1 : 0;
    }

    const double n = static_cast<double>(config.n);
    const double epsilon = std::pow(n, scenario.window_exponent) / std::sqrt(n);

    const std::optional<std::filesystem::path> scenario_dir =
        out_dir ? std::optional(*out_dir / scenario.name) : std::nullopt;
    if (scenario_dir && scenario.emit_theory) {
        auto density_out = io::open_output(*scenario_dir / "theory_density.csv");
        io::write_density_csv(density_out, grid, theory.density);
        if (!theory.atoms.empty()) {
            auto atoms_out = io::open_output(*scenario_dir / "theory_atoms.csv");
            io::write_atoms_csv(atoms_out, theory.atoms);
        }
        auto outlier_out = io::open_output(*scenario_dir / "predicted_outlier.json");
        outlier_out << io::outlier_json(theory.predicted) << '\n';
    }

    std::vector<double> estimate_sum(grid.size(), 0.0);
    std::vector<int> estimate_count(grid.size(), 0);

    for (std::uint64_t seed : scenario.seeds) {
        SeedResult result;
        result.seed = seed;
        try {
            config.seed = seed;
            RealizedModel realized = sample(config);
            EigenDecomposition decomposition = sym_eig(realized.matrix);
            WeightedSpectralMeasure mu =
                spectral_measure_in_direction(decomposition, realized.spike_direction);
            result.max_weight = *std::max_element(mu.weights().begin(), mu.weights().end());

            OverlapProfile profile = windowed_profile(mu, grid, epsilon);
            profile.theory = theory_values;
            double sup = -1.0;
            for (std::size_t j = 0; j < grid.size(); ++j) {
                if (!profile.estimates[j]) continue;
                estimate_sum[j] += *profile.estimates[j];
                estimate_count[j] += 1;
                if (interior[j] && theory_values[j]) {
                    sup = std::max(sup, std::abs(*profile.estimates[j] - *theory_values[j]));
                }
            }
            if (sup >= 0.0) result.profile_sup_error = sup;

            auto clusters = extract_outliers(mu, theory.support, scenario.margin);
            result.cluster_count = static_cast<int>(clusters.size());

            bool low_side;
            if (theory.predicted.exists) {
                low_side = theory.predicted.location < theory.support.front().lo;
            } else if (config.model == Model::additive) {
                low_side = config.theta < 0.0;
            } else {
                low_side = config.theta < 1.0;
            }
            result.extreme_eigenvalue =
                low_side ? mu.eigenvalues().back() : mu.eigenvalues().front();
            if (!clusters.empty()) {
                const OutlierCluster& candidate = low_side ? clusters.back() : clusters.front();
                if (std::abs(candidate.eigenvalue - result.extreme_eigenvalue) <= 1e-5) {
                    result.outlier_location = candidate.eigenvalue;
                    result.outlier_mass = candidate.weight;
                }
            }

            if (scenario_dir) {
                const std::string stem = "seed" + std::to_string(seed);
                auto measure_out = io::open_output(*scenario_dir / (stem + "_measure.csv"));
                io::write_measure_csv(measure_out, mu);
                auto profile_out = io::open_output(*scenario_dir / (stem + "_profile.csv"));
                io::write_profile_csv(profile_out, profile);
            }
            result.ok = true;
        } catch (const std::exception& error) {
            result.error = error.what();
        }
        report.seeds.push_back(result);
    }

    // Seed-mean profile and its interior sup-error.
    OverlapProfile mean_profile;
    mean_profile.grid = grid;
    mean_profile.epsilon = epsilon;
    mean_profile.counts = estimate_count;
    mean_profile.estimates.resize(grid.size());
    mean_profile.theory = theory_values;
    double mean_sup = -1.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (estimate_count[j] == 0) continue;
        const double mean = estimate_sum[j] / estimate_count[j];
        mean_profile.estimates[j] = mean;
        if (interior[j] && theory_values[j]) {
            mean_sup = std::max(mean_sup, std::abs(mean - *theory_values[j]));
        }
    }
    if (mean_sup >= 0.0) report.mean_profile_sup_error = mean_sup;

    double location_sum = 0.0, mass_sum = 0.0;
    int found = 0;
    for (const SeedResult& result : report.seeds) {
        if (result.ok && result.outlier_location) {
            location_sum += *result.outlier_location;
            mass_sum += *result.outlier_mass;
            ++found;
        }
    }
    if (found > 0) {
        report.mean_outlier_location = location_sum / found;
        report.mean_outlier_mass = mass_sum / found;
    }

    const double inf = std::numeric_limits<double>::infinity();
    auto add_flag = [&report](const std::string& name, double bound, double observed) {
        report.flags.push_back({name, bound, observed, observed <= bound});
    };
    const Tolerances& tol = scenario.tolerances;
    if (theory.predicted.exists) {
        if (tol.outlier_location) {
            add_flag("outlier_location", *tol.outlier_location,
                     report.mean_outlier_location
                         ? std::abs(*report.mean_outlier_location - theory.predicted.location)
                         : inf);
        }
        if (tol.outlier_mass) {
            add_flag("outlier_mass", *tol.outlier_mass,
                     report.mean_outlier_mass
                         ? std::abs(*report.mean_outlier_mass - theory.predicted.mass)
                         : inf);
        }
    } else {
        int max_clusters = 0;
        for (const SeedResult& result : report.seeds) {
            if (result.ok) max_clusters = std::max(max_clusters, result.cluster_count);
        }
        add_flag("max_spurious_clusters", tol.max_spurious_clusters,
                 static_cast<double>(max_clusters));
    }
    if (tol.profile_sup_error && report.mean_profile_sup_error) {
        add_flag("profile_sup_error", *tol.profile_sup_error, *report.mean_profile_sup_error);
    }
    if (tol.max_weight) {
        double max_weight = 0.0;
        for (const SeedResult& result : report.seeds) {
            if (result.ok) max_weight = std::max(max_weight, result.max_weight);
        }
        add_flag("max_weight", *tol.max_weight, max_weight);
    }

    report.all_pass = true;
    for (const SeedResult& result : report.seeds) report.all_pass &= result.ok;
    for (const ToleranceFlag& flag : report.flags) report.all_pass &= flag.pass;

    if (scenario_dir) {
        auto mean_out = io::open_output(*scenario_dir / "mean_profile.csv");
        io::write_profile_csv(mean_out, mean_profile);
        auto report_out = io::open_output(*scenario_dir / "report.txt");
        report_out << report.text();
    }
    return report;
}

std::string ComparisonReport::text() const {
    std::ostringstream out;
    out << "scenario " << scenario << '\n';
    out << "model " << (model == Model::additive ? "additive" : "multiplicative") << '\n';
    if (predicted.exists) {
        out << "predicted_outlier location " << io::format_double(predicted.location) << " mass "
            << io::format_double(predicted.mass) << '\n';
    } else {
        out << "predicted_outlier none\n";
    }
    for (const SeedResult& seed : seeds) {
        out << "seed " << seed.seed;
        if (!seed.ok) {
            out << " failed " << seed.error << '\n';
            continue;
        }
        out << " extreme " << io::format_double(seed.extreme_eigenvalue) << " max_weight "
            << io::format_double(seed.max_weight) << " outlier " << opt_text(seed.outlier_location)
            << " mass " << opt_text(seed.outlier_mass) << " sup_error "
            << opt_text(seed.profile_sup_error) << " clusters " << seed.cluster_count << '\n';
    }
    out << "mean outlier_location " << opt_text(mean_outlier_location) << " outlier_mass "
        << opt_text(mean_outlier_mass) << " profile_sup_error " << opt_text(mean_profile_sup_error)
        << '\n';
    for (const ToleranceFlag& flag : flags) {
        out << "flag " << flag.name << " observed " << io::format_double(flag.observed)
            << " bound " << io::format_double(flag.bound) << (flag.pass ? " pass" : " fail")
            << '\n';
    }
    out << "result " << (all_pass ? "pass" : "fail") << '\n';
    return out.str();
}

std::vector<Scenario> figure_scenarios() {
    std::vector<Scenario> scenarios;

    Scenario fig1a;
    fig1a.name = "fig1a";
    fig1a.config.model = Model::additive;
    fig1a.config.n = 3000;
    fig1a.config.theta = 2.0;
    fig1a.seeds = {1};
    fig1a.grid = GridSpec{-1.95, 1.95, 0.05};
    scenarios.push_back(fig1a);

    Scenario fig1b = fig1a;
    fig1b.name = "fig1b";
    fig1b.config.theta = -4.0;
    scenarios.push_back(fig1b);

    Scenario fig2a;
    fig2a.name = "fig2a";
    fig2a.config.model = Model::multiplicative;
    fig2a.config.n = 2000;
    fig2a.config.m = 8000;
    fig2a.config.theta = 2.0;
    fig2a.config.base = AtomicMeasure::point(1.0);
    fig2a.seeds = {1};
    fig2a.grid = GridSpec{1.1, 8.9, 0.05};
    scenarios.push_back(fig2a);

    Scenario fig2b = fig2a;
    fig2b.name = "fig2b";
    fig2b.config.m = 4000;
    fig2b.grid = GridSpec{0.3, 5.7, 0.05};
    scenarios.push_back(fig2b);

    Scenario fig3a = fig2a;
    fig3a.name = "fig3a";
    fig3a.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    fig3a.window_exponent = 0.3;
    scenarios.push_back(fig3a);

    Scenario fig3b = fig3a;
    fig3b.name = "fig3b";
    fig3b.config.n = 3000;
    fig3b.config.m = 12000;
    fig3b.window_exponent = 0.2;
    scenarios.push_back(fig3b);

    return scenarios;
}

// --- config parsing ---------------------------------------------------------

namespace {

std::string trim(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    std::size_t end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw ConfigError("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number '" + text + "' for " + what);
    }
}

}  // namespace

bool ConfigMap::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

std::string ConfigMap::get(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it != sections_.end()) {
        auto jt = it->second.find(key);
        if (jt != it->second.end()) return jt->second;
    }
    throw ConfigError("missing config key [" + section + "] " + key);
}

std::string ConfigMap::get_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double ConfigMap::get_double(const std::string& section, const std::string& key) const {
    return parse_double(get(section, key), "[" + section + "] " + key);
}

double ConfigMap::get_double_or(const std::string& section, const std::string& key,
                                double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int ConfigMap::get_int(const std::string& section, const std::string& key) const {
    const double value = get_double(section, key);
    const int result = static_cast<int>(std::llround(value));
    if (std::abs(value - result) > 1e-9) {
        throw ConfigError("expected an integer for [" + section + "] " + key);
    }
    return result;
}

std::vector<std::string> ConfigMap::sections() const {
    std::vector<std::string> names;
    names.reserve(sections_.size());
    for (const auto& [name, _] : sections_) names.push_back(name);
    return names;
}

void ConfigMap::set(const std::string& section, const std::string& key,
                    const std::string& value) {
    sections_[section][key] = value;
}

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap config;
    std::istringstream stream(text);
    std::string line;
    std::string section;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("unterminated section header at line " +
                                  std::to_string(line_number));
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError("empty section name at line " + std::to_string(line_number));
            }
            continue;
        }
        const std::size_t equals = line.find('=');
        if (equals == std::string::npos) {
            throw ConfigError("expected key = value at line " + std::to_string(line_number));
        }
        const std::string key = trim(line.substr(0, equals));
        const std::string value = trim(line.substr(equals + 1));
        if (key.empty()) {
            throw ConfigError("empty key at line " + std::to_string(line_number));
        }
        config.set(section, key, value);
    }
    return config;
}

ConfigMap parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<Atom> parse_atoms(const std::string& text) {
    std::vector<Atom> atoms;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("atom entries use location:weight, got '" + item + "'");
        }
        atoms.push_back({parse_double(trim(item.substr(0, colon)), "atom location"),
                         parse_double(trim(item.substr(colon + 1)), "atom weight")});
    }
    if (atoms.empty()) throw ConfigError("empty atom list");
    return atoms;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            seeds.push_back(std::stoull(item, &used));
            if (used != item.size()) throw ConfigError("trailing characters");
        } catch (const std::exception&) {
            throw ConfigError("cannot parse seed '" + item + "'");
        }
    }
    if (seeds.empty()) throw ConfigError("empty seed list");
    return seeds;
}

SpikedModelConfig model_from_config(const ConfigMap& config, const std::string& section) {
    SpikedModelConfig model;
    const std::string kind = config.get_or(section, "model", "additive");
    if (kind == "additive") {
        model.model = Model::additive;
    } else if (kind == "multiplicative") {
        model.model = Model::multiplicative;
    } else {
        throw ConfigError("unknown model '" + kind + "'");
    }
    model.n = config.get_int(section, "n");
    if (config.has(section, "m")) model.m = config.get_int(section, "m");
    if (config.has(section, "alpha")) model.alpha = config.get_double(section, "alpha");
    model.theta = config.get_double(section, "theta");
    if (config.has(section, "base")) {
        model.base = AtomicMeasure(parse_atoms(config.get(section, "base")));
    } else if (model.model == Model::multiplicative) {
        model.base = AtomicMeasure::point(1.0);
    }
    const std::string law = config.get_or(section, "entry_law", "gaussian");
    if (law == "gaussian") {
        model.entry_law = EntryLaw::gaussian;
    } else if (law == "rademacher") {
        model.entry_law = EntryLaw::rademacher;
    } else if (law == "uniform") {
        model.entry_law = EntryLaw::uniform;
    } else {
        throw ConfigError("unknown entry law '" + law + "'");
    }
    if (config.has(section, "seed")) {
        model.seed = parse_seeds(config.get(section, "seed")).front();
    }
    return model;
}

namespace {

std::optional<double> optional_tolerance(const ConfigMap& config, const std::string& section,
                                         const std::string& key,
                                         std::optional<double> fallback) {
    if (!config.has(section, key)) return fallback;
    const std::string value = config.get(section, key);
    if (value == "off") return std::nullopt;
    return parse_double(value, "[" + section + "] " + key);
}

}  // namespace

Scenario scenario_from_config(const ConfigMap& config, const std::string& section) {
    Scenario scenario;
    scenario.name = config.get_or(section, "name", section);
    scenario.config = model_from_config(config, section);
    scenario.seeds = parse_seeds(config.get_or(section, "seeds", "1"));
    const bool has_lo = config.has(section, "grid_lo");
    const bool has_hi = config.has(section, "grid_hi");
    const bool has_step = config.has(section, "grid_step");
    if (has_lo != has_hi || has_lo != has_step) {
        throw ConfigError("grid_lo, grid_hi, grid_step must be given together");
    }
    if (has_lo) {
        scenario.grid = GridSpec{config.get_double(section, "grid_lo"),
                                 config.get_double(section, "grid_hi"),
                                 config.get_double(section, "grid_step")};
    }
    scenario.window_exponent = config.get_double_or(section, "window_exponent", 0.1);
    scenario.margin = config.get_double_or(section, "margin", 0.1);
    const std::string emit = config.get_or(section, "emit_theory", "true");
    scenario.emit_theory = emit == "true" || emit == "1";
    Tolerances& tol = scenario.tolerances;
    tol.outlier_location =
        optional_tolerance(config, section, "tol_outlier_location", tol.outlier_location);
    tol.outlier_mass = optional_tolerance(config, section, "tol_outlier_mass", tol.outlier_mass);
    tol.profile_sup_error =
        optional_tolerance(config, section, "tol_profile_sup_error", tol.profile_sup_error);
    tol.max_spurious_clusters =
        config.get_double_or(section, "tol_max_spurious_clusters", tol.max_spurious_clusters);
    tol.max_weight = optional_tolerance(config, section, "tol_max_weight", tol.max_weight);
    return scenario;
}

}  // namespace spiked
