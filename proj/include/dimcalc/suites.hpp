// dimcalc/suites.hpp - cross-theorem property suites over generated pairs
#pragma once

#include <string>
#include <vector>

#include "dimcalc/generator.hpp"

namespace dimcalc {

struct PropertyResult {
    std::string name;
    int checked = 0;
    int failures = 0;
    std::string counterexample;  // rendered shrunk pair, empty when clean
};

struct EligibilityCounts {
    int pairs = 0;
    int f4 = 0;            // Thm 1.9-eligible pairs
    int v1 = 0;            // Thm 2.3-eligible pairs
    int j1 = 0;            // Thm 3.1-eligible pairs (unique maximals)
    int f2_and_f4 = 0;     // pairs where Wadsworth and Thm 1.9 both apply
    int d_supported = 0;   // terms D(s, d, .) accepts for s > 0
};

struct SuiteReport {
    GeneratorConfig config;
    std::vector<PropertyResult> properties;
    EligibilityCounts eligible;

    bool all_passed() const;
};

/// Pre-generates config.count pairs sequentially (seed-deterministic), then
/// checks properties P1..P7 plus rule-concordance and trace integrity.
SuiteReport run_suites(const GeneratorConfig& config);

std::string render_text(const SuiteReport& report);
std::string render_json(const SuiteReport& report);

}  // namespace dimcalc
