#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace debranges {

/// Structured result of one identity/inequality check.  `pass` is decided
/// only by comparing `measured` against `bound` under `tolerances`, so every
/// verdict can be re-checked from the record itself.
struct DiagnosticReport {
    std::string name;
    std::map<std::string, double> measured;
    std::map<std::string, double> bound;
    std::map<std::string, double> tolerances;
    bool pass = false;
    std::map<std::string, std::string> context;

    // Optional sweep block for plot-ready CSV emission (x, value, bound).
    std::vector<std::string> sweep_columns;
    std::vector<std::array<double, 3>> sweep;
};

} // namespace debranges
