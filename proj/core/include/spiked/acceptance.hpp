#pragma once

// The acceptance gate: every numbered criterion the project promises, run at
// pinned sizes, seeds, and tolerances. Failures are report entries, never
// exceptions.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace spiked {

struct AcceptanceOptions {
    std::optional<std::filesystem::path> out_dir;  // artifact dump (CSVs, reports)
    std::vector<std::string> only;                 // criterion ids ("C3"); empty = all
    bool check_determinism = true;  // C8: recompute everything, byte-compare reports
    std::ostream* progress = nullptr;  // timing chatter; never part of the report
};

struct CriterionResult {
    std::string id;       // "C1".."C8"
    std::string name;
    bool pass = false;
    std::string detail;   // canonical, deterministic
    double seconds = 0.0;  // wall time; excluded from canonical_text
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;
    bool all_pass = false;

    // One line per criterion plus an overall verdict; identical bytes for
    // identical configurations.
    std::string canonical_text() const;
};

AcceptanceReport run_acceptance(const AcceptanceOptions& options = {});

}  // namespace spiked
