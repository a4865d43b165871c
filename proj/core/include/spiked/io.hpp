#pragma once

// Artifact writers. Every floating-point number is rendered through
// format_double (snprintf "%.12g"), so a given run's outputs are
// byte-for-byte reproducible.

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <span>
#include <string>

#include "spiked/analytic.hpp"
#include "spiked/measures.hpp"
#include "spiked/overlap.hpp"

namespace spiked::io {

std::string format_double(double x);

// CSV writers; each emits its header line.
//   measure:     index,eigenvalue,weight
//   atoms:       location,weight
//   density:     x,density
//   profile:     x,count,estimate,theory,abs_error   (empty cells when absent)
//   diagnostic:  E,eta,abs_shat,psi,ratio
void write_measure_csv(std::ostream& out, const WeightedSpectralMeasure& mu);
void write_atoms_csv(std::ostream& out, std::span<const Atom> atoms);
void write_density_csv(std::ostream& out, std::span<const double> grid,
                       const std::function<double(double)>& density);
// Generic x,<name> column pair; rows where fn returns no value are skipped.
void write_xy_csv(std::ostream& out, const std::string& y_name, std::span<const double> grid,
                  const std::function<std::optional<double>(double)>& fn);
void write_profile_csv(std::ostream& out, const OverlapProfile& profile);
void write_diagnostic_csv(std::ostream& out, const LocalLawDiagnostic& diagnostic);

// JSON renderings of the same artifacts (sorted keys, 2-space indent).
std::string measure_json(const WeightedSpectralMeasure& mu);
std::string profile_json(const OverlapProfile& profile);
std::string diagnostic_json(const LocalLawDiagnostic& diagnostic);
std::string outlier_json(const OutlierReport& report);

// Opens a file for writing, creating parent directories as needed.
// ConfigError when the file cannot be opened.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace spiked::io
