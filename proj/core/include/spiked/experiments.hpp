#pragma once

// Scenario plumbing: INI-style config parsing, the built-in figure scenarios,
// and the sample-vs-theory comparison runner.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spiked/analytic.hpp"
#include "spiked/sampler.hpp"

namespace spiked {

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;  // must be > 0

    std::vector<double> points() const;  // lo, lo+step, ..., <= hi (+ rounding slack)
};

// Named bounds referenced by the report's pass/fail flags. Optional bounds
// can be disabled (config value "off").
struct Tolerances {
    std::optional<double> outlier_location = 0.1;
    std::optional<double> outlier_mass = 0.05;
    std::optional<double> profile_sup_error = 0.15;
    double max_spurious_clusters = 0.0;     // applies when theory predicts no outlier
    std::optional<double> max_weight;       // subcritical delocalization bound
};

struct Scenario {
    std::string name;
    SpikedModelConfig config;               // per-seed; config.seed is overridden
    std::vector<std::uint64_t> seeds;       // must be nonempty
    std::optional<GridSpec> grid;           // profile grid; derived from support when absent
    double window_exponent = 0.1;           // epsilon = n^exponent / sqrt(n)
    double margin = 0.1;                    // outlier extraction margin
    bool emit_theory = true;                // write theory density/atom CSVs
    Tolerances tolerances;
};

struct SeedResult {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;                          // set when !ok
    double extreme_eigenvalue = 0.0;            // candidate outlier side
    double max_weight = 0.0;                    // max_i w_i
    std::optional<double> outlier_location;     // cluster holding the extreme eigenvalue
    std::optional<double> outlier_mass;
    std::optional<double> profile_sup_error;    // this seed, interior grid
    int cluster_count = 0;
};

struct ToleranceFlag {
    std::string name;        // which Tolerances field
    double bound = 0.0;
    double observed = 0.0;
    bool pass = false;
};

// Everything the analytic side predicts for one model configuration: bulk
// support, the outlier (if any), the overlap profile x -> lim n E w(x), and
// the spiked law's continuous density and atoms. Closed forms when the base
// is the rank-one default (delta_0 additive / delta_1 multiplicative),
// fixed-point solutions otherwise.
struct TheoryCurves {
    std::vector<Interval> support;
    OutlierReport predicted;
    std::function<std::optional<double>(double)> profile;  // absent where undefined
    std::function<double(double)> density;                 // spiked continuous density
    std::vector<Atom> atoms;                               // spiked law atoms
};

TheoryCurves theory_curves(const SpikedModelConfig& config);

// The spiked Stieltjes transform for the same configuration (closed form when
// rank-one, fixed-point otherwise).
StieltjesEvaluator spiked_theory_evaluator(const SpikedModelConfig& config);

struct ComparisonReport {
    std::string scenario;
    Model model = Model::additive;
    OutlierReport predicted;                        // exists=false when subcritical
    std::vector<SeedResult> seeds;
    std::optional<double> mean_outlier_location;    // over seeds that found one
    std::optional<double> mean_outlier_mass;
    std::optional<double> mean_profile_sup_error;   // sup error of the seed-mean profile
    std::vector<ToleranceFlag> flags;
    bool all_pass = false;

    std::string text() const;  // canonical rendering, byte-stable per run
};

// Samples every seed, decomposes, compares profiles and outliers against the
// analytic predictions, and (when out_dir is given) writes per-seed CSVs plus
// the theory curves and the report. ConfigError on an empty seed list; a seed
// whose simulation throws is recorded as failed, not fatal.
ComparisonReport run_scenario(const Scenario& scenario,
                              const std::optional<std::filesystem::path>& out_dir = {});

// The six built-in figure scenarios: fig1a/fig1b (additive, n=3000,
// theta=2/-4), fig2a/fig2b (multiplicative, alpha=4/2), fig3a/fig3b
// (multiplicative window-size studies, 10 seeds each).
std::vector<Scenario> figure_scenarios();

// INI-style config: [section] headers, key = value lines, '#' or ';'
// comments. Keys are unique per section (last write wins).
class ConfigMap {
  public:
    bool has(const std::string& section, const std::string& key) const;
    // ConfigError when the key is missing.
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;

    std::vector<std::string> sections() const;
    void set(const std::string& section, const std::string& key, const std::string& value);

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::filesystem::path& path);

// Parses "loc:weight,loc:weight,..." into atoms.
std::vector<Atom> parse_atoms(const std::string& text);
// Parses "1,2,3" into seeds.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

// Builds a model config / full scenario from one config section. Unset keys
// fall back to the defaults documented in the README.
SpikedModelConfig model_from_config(const ConfigMap& config, const std::string& section);
Scenario scenario_from_config(const ConfigMap& config, const std::string& section);

}  // namespace spiked
