// Command-line front end: theory curves, single simulations, overlap
// profiles, outlier comparisons, local-law diagnostics, figure data sets, and
// the acceptance suite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spiked/acceptance.hpp"
#include "spiked/analytic.hpp"
#include "spiked/closed_forms.hpp"
#include "spiked/eig.hpp"
#include "spiked/errors.hpp"
#include "spiked/experiments.hpp"
#include "spiked/io.hpp"
#include "spiked/overlap.hpp"
#include "spiked/sampler.hpp"

namespace {

namespace fs = std::filesystem;
using namespace spiked;

struct GlobalArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::string format = "csv";
};

struct ModelArgs {
    std::string model = "additive";
    int n = 1000;
    std::optional<int> m;
    std::optional<double> alpha;
    double theta = 2.0;
    std::string base;
    std::string entry_law = "gaussian";
    std::string section = "model";
};

void add_model_flags(CLI::App* cmd, ModelArgs& args) {
    cmd->add_option("--model", args.model, "additive | multiplicative")
        ->check(CLI::IsMember({"additive", "multiplicative"}));
    cmd->add_option("--n", args.n, "matrix size");
    cmd->add_option("--m", args.m, "sample count (multiplicative)");
    cmd->add_option("--alpha", args.alpha, "aspect ratio m/n (multiplicative)");
    cmd->add_option("--theta", args.theta, "spike strength");
    cmd->add_option("--base", args.base, "base measure atoms, e.g. -1:0.5,1:0.5");
    cmd->add_option("--entry-law", args.entry_law, "gaussian | rademacher | uniform")
        ->check(CLI::IsMember({"gaussian", "rademacher", "uniform"}));
    cmd->add_option("--section", args.section, "config section to read (with --config)");
}

SpikedModelConfig resolve_model(const GlobalArgs& global, const ModelArgs& args) {
    if (!global.config_path.empty()) {
        const ConfigMap config = parse_config_file(global.config_path);
        SpikedModelConfig model = model_from_config(config, args.section);
        if (!config.has(args.section, "seed")) model.seed = global.seed;
        return model;
    }
    SpikedModelConfig model;
    model.model = args.model == "additive" ? Model::additive : Model::multiplicative;
    model.n = args.n;
    model.m = args.m;
    model.alpha = args.alpha;
    model.theta = args.theta;
    if (!args.base.empty()) {
        model.base = AtomicMeasure(parse_atoms(args.base));
    } else if (model.model == Model::multiplicative) {
        model.base = AtomicMeasure::point(1.0);
    }
    if (args.entry_law == "rademacher") {
        model.entry_law = EntryLaw::rademacher;
    } else if (args.entry_law == "uniform") {
        model.entry_law = EntryLaw::uniform;
    }
    model.seed = global.seed;
    return model;
}

struct GridArgs {
    std::optional<double> lo;
    std::optional<double> hi;
    double step = 0.05;
};

void add_grid_flags(CLI::App* cmd, GridArgs& args) {
    cmd->add_option("--grid-lo", args.lo, "grid lower end");
    cmd->add_option("--grid-hi", args.hi, "grid upper end");
    cmd->add_option("--grid-step", args.step, "grid step");
}

std::vector<double> resolve_grid(const GridArgs& args, const TheoryCurves& theory,
                                 double default_pad) {
    GridSpec spec;
    spec.lo = args.lo ? *args.lo : theory.support.front().lo + default_pad;
    spec.hi = args.hi ? *args.hi : theory.support.back().hi - default_pad;
    spec.step = args.step;
    return spec.points();
}

std::string support_text(const std::vector<Interval>& support) {
    std::string text = "support:";
    for (const Interval& interval : support) {
        text += " [" + io::format_double(interval.lo) + ", " + io::format_double(interval.hi) + "]";
    }
    return text;
}

std::string outlier_text(const OutlierReport& report) {
    if (!report.exists) return "outlier: none";
    return "outlier: location " + io::format_double(report.location) + " mass " +
           io::format_double(report.mass);
}

int run_analytic(const GlobalArgs& global, const ModelArgs& margs, const GridArgs& gargs) {
    SpikedModelConfig config = resolve_model(global, margs);
    validate(config);
    const TheoryCurves theory = theory_curves(config);
    const std::vector<double> grid = resolve_grid(gargs, theory, 0.0);

    const fs::path dir = fs::path(global.out_dir) / "analytic";
    {
        auto out = io::open_output(dir / "density.csv");
        io::write_density_csv(out, grid, theory.density);
    }
    if (!theory.atoms.empty()) {
        auto out = io::open_output(dir / "atoms.csv");
        io::write_atoms_csv(out, theory.atoms);
    }
    {
        auto out = io::open_output(dir / "profile.csv");
        io::write_xy_csv(out, "ratio", grid, theory.profile);
    }
    {
        auto out = io::open_output(dir / "outlier.json");
        out << io::outlier_json(theory.predicted) << '\n';
    }
    std::cout << support_text(theory.support) << '\n'
              << outlier_text(theory.predicted) << '\n'
              << "wrote " << (dir / "density.csv").string() << '\n';
    return 0;
}

WeightedSpectralMeasure simulate_measure(const SpikedModelConfig& config) {
    const RealizedModel realized = sample(config);
    const EigenDecomposition decomposition = sym_eig(realized.matrix);
    return spectral_measure_in_direction(decomposition, realized.spike_direction);
}

int run_simulate(const GlobalArgs& global, const ModelArgs& margs) {
    SpikedModelConfig config = resolve_model(global, margs);
    validate(config);
    const WeightedSpectralMeasure mu = simulate_measure(config);

    const fs::path dir = fs::path(global.out_dir) / "simulate";
    fs::path path;
    if (global.format == "json") {
        path = dir / "measure.json";
        auto out = io::open_output(path);
        out << io::measure_json(mu) << '\n';
    } else {
        path = dir / "measure.csv";
        auto out = io::open_output(path);
        io::write_measure_csv(out, mu);
    }
    double max_weight = 0.0;
    for (double w : mu.weights()) max_weight = std::max(max_weight, w);
    std::cout << "n " << mu.size() << " lambda_max " << io::format_double(mu.eigenvalues().front())
              << " lambda_min " << io::format_double(mu.eigenvalues().back()) << " max_weight "
              << io::format_double(max_weight) << '\n'
              << "wrote " << path.string() << '\n';
    return 0;
}

int run_profile(const GlobalArgs& global, const ModelArgs& margs, const GridArgs& gargs,
                double window_exponent) {
    SpikedModelConfig config = resolve_model(global, margs);
    validate(config);
    const TheoryCurves theory = theory_curves(config);
    const std::vector<double> grid = resolve_grid(gargs, theory, 0.05);
    const WeightedSpectralMeasure mu = simulate_measure(config);

    const double epsilon =
        std::pow(static_cast<double>(config.n), window_exponent) / std::sqrt(config.n);
    OverlapProfile profile = windowed_profile(mu, grid, epsilon);
    for (std::size_t j = 0; j < grid.size(); ++j) profile.theory[j] = theory.profile(grid[j]);

    const fs::path dir = fs::path(global.out_dir) / "profile";
    fs::path path;
    if (global.format == "json") {
        path = dir / "profile.json";
        auto out = io::open_output(path);
        out << io::profile_json(profile) << '\n';
    } else {
        path = dir / "profile.csv";
        auto out = io::open_output(path);
        io::write_profile_csv(out, profile);
    }
    double sup = -1.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (profile.estimates[j] && profile.theory[j]) {
            sup = std::max(sup, std::abs(*profile.estimates[j] - *profile.theory[j]));
        }
    }
    std::cout << "epsilon " << io::format_double(epsilon) << " grid_points " << grid.size()
              << " sup_error "
              << (sup >= 0.0 ? io::format_double(sup) : std::string("-")) << '\n'
              << "wrote " << path.string() << '\n';
    return 0;
}

int run_outlier(const GlobalArgs& global, const ModelArgs& margs, const std::string& seeds,
                double margin) {
    Scenario scenario;
    scenario.name = "outlier";
    scenario.config = resolve_model(global, margs);
    scenario.seeds = parse_seeds(seeds);
    scenario.margin = margin;
    scenario.tolerances.profile_sup_error = std::nullopt;
    const ComparisonReport report = run_scenario(scenario, fs::path(global.out_dir));
    std::cout << report.text();
    return report.all_pass ? 0 : 1;
}

int run_diagnose(const GlobalArgs& global, const ModelArgs& margs, const GridArgs& gargs,
                 const std::string& etas_text, double tau, double max_ratio) {
    SpikedModelConfig config = resolve_model(global, margs);
    validate(config);
    const TheoryCurves theory = theory_curves(config);
    const StieltjesEvaluator theory_transform = spiked_theory_evaluator(config);
    const WeightedSpectralMeasure mu = simulate_measure(config);
    const StieltjesEvaluator empirical = make_evaluator(mu);

    std::vector<double> etas;
    {
        std::string item;
        std::istringstream stream(etas_text);
        while (std::getline(stream, item, ',')) {
            if (!item.empty()) etas.push_back(std::stod(item));
        }
    }
    if (etas.empty()) throw ConfigError("empty eta list");

    GridArgs energy = gargs;
    if (!energy.lo) energy.lo = theory.support.front().lo + 0.2;
    if (!energy.hi) energy.hi = theory.support.back().hi - 0.2;
    GridSpec spec{*energy.lo, *energy.hi, energy.step};
    const std::vector<double> energies = spec.points();

    std::vector<Complex> grid;
    grid.reserve(etas.size() * energies.size());
    for (double eta : etas) {
        for (double E : energies) grid.push_back({E, eta});
    }
    const LocalLawDiagnostic diagnostic =
        local_law_diagnostic(empirical, theory_transform, grid, config.n, tau);

    const fs::path dir = fs::path(global.out_dir) / "diagnose";
    fs::path path;
    if (global.format == "json") {
        path = dir / "diagnostic.json";
        auto out = io::open_output(path);
        out << io::diagnostic_json(diagnostic) << '\n';
    } else {
        path = dir / "diagnostic.csv";
        auto out = io::open_output(path);
        io::write_diagnostic_csv(out, diagnostic);
    }
    std::cout << "max_ratio " << io::format_double(diagnostic.summary) << " bound "
              << io::format_double(max_ratio) << '\n'
              << "wrote " << path.string() << '\n';
    return diagnostic.summary <= max_ratio ? 0 : 1;
}

int run_figures(const GlobalArgs& global, const std::string& which) {
    const fs::path dir = fs::path(global.out_dir) / "figures";
    bool all_pass = true;
    bool any = false;
    for (const Scenario& scenario : figure_scenarios()) {
        if (!which.empty() && scenario.name.find(which) == std::string::npos) continue;
        any = true;
        const ComparisonReport report = run_scenario(scenario, dir);
        std::cout << report.text() << '\n';
        all_pass &= report.all_pass;
    }
    if (!any) {
        std::cerr << "no figure scenario matches '" << which << "'\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}

int run_accept(const GlobalArgs& global, const std::vector<std::string>& only,
               bool no_determinism) {
    AcceptanceOptions options;
    options.out_dir = fs::path(global.out_dir) / "acceptance";
    options.only = only;
    options.check_determinism = !no_determinism;
    options.progress = &std::cerr;
    const AcceptanceReport report = run_acceptance(options);
    std::cout << report.canonical_text();
    return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spiked random matrix simulations and analytic checks"};
    app.require_subcommand(1);
    // Let global flags (--seed, --out, ...) appear after the subcommand name.
    app.fallthrough();

    GlobalArgs global;
    app.add_option("--config", global.config_path, "INI config file");
    app.add_option("--out", global.out_dir, "output directory");
    app.add_option("--seed", global.seed, "RNG seed");
    app.add_option("--format", global.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    ModelArgs margs;
    GridArgs gargs;
    double window_exponent = 0.1;
    std::string seeds = "1,2,3,4,5";
    double margin = 0.1;
    std::string etas = "0.2,0.1,0.05";
    double tau = 0.3;
    double max_ratio = 5.0;
    std::string which;
    std::vector<std::string> only;
    bool no_determinism = false;

    CLI::App* analytic = app.add_subcommand("analytic", "emit theory curves and outliers");
    add_model_flags(analytic, margs);
    add_grid_flags(analytic, gargs);

    CLI::App* simulate = app.add_subcommand("simulate", "one realization's spectral measure");
    add_model_flags(simulate, margs);

    CLI::App* profile = app.add_subcommand("profile", "windowed overlap profile vs theory");
    add_model_flags(profile, margs);
    add_grid_flags(profile, gargs);
    profile->add_option("--window-exponent", window_exponent,
                        "window half-width n^e / sqrt(n)");

    CLI::App* outlier = app.add_subcommand("outlier", "outlier theory vs samples");
    add_model_flags(outlier, margs);
    outlier->add_option("--seeds", seeds, "comma-separated seeds");
    outlier->add_option("--margin", margin, "distance from bulk that counts as outlying");

    CLI::App* diagnose = app.add_subcommand("diagnose", "local-law error diagnostic");
    add_model_flags(diagnose, margs);
    add_grid_flags(diagnose, gargs);
    diagnose->add_option("--etas", etas, "comma-separated spectral scales");
    diagnose->add_option("--tau", tau, "domain parameter: n^(tau-1) <= eta <= 1/tau");
    diagnose->add_option("--max-ratio", max_ratio, "pass bound on |s_hat|/psi");

    CLI::App* figures = app.add_subcommand("figures", "reproduce the figure data sets");
    figures->add_option("--which", which, "substring filter, e.g. fig2");

    CLI::App* accept = app.add_subcommand("accept", "run the acceptance suite");
    accept->add_option("--only", only, "criterion ids to run (C1..C8)");
    accept->add_flag("--no-determinism", no_determinism, "skip the double-run comparison");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analytic->parsed()) return run_analytic(global, margs, gargs);
        if (simulate->parsed()) return run_simulate(global, margs);
        if (profile->parsed()) return run_profile(global, margs, gargs, window_exponent);
        if (outlier->parsed()) return run_outlier(global, margs, seeds, margin);
        if (diagnose->parsed()) return run_diagnose(global, margs, gargs, etas, tau, max_ratio);
        if (figures->parsed()) return run_figures(global, which);
        if (accept->parsed()) return run_accept(global, only, no_determinism);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    }
    return 2;
}
