#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satmat/pattern.hpp"
#include "satmat/saturation.hpp"

namespace satmat {

enum class Growth { bounded, linear };
const char* growth_name(Growth g);

// Semisaturation growth in both dimensions; zero patterns are rejected.
Growth ssat_class(const Pattern& p);
// Semisaturation growth with the row count held fixed.
Growth ssat_fixed_class(const Pattern& p);
// One line per condition, used by --explain.
std::vector<std::string> explain_ssat(const Pattern& p);

// Single-orientation recognizers.
bool is_q1_like_raw(const Pattern& p);
bool is_q2_like_raw(const Pattern& p);
bool is_q3_like_raw(const Pattern& p);

// Closed under the eight symmetries.
bool is_q1_like(const Pattern& p);
bool is_q2_like(const Pattern& p);
bool is_q3_like(const Pattern& p);

enum class SatStatus { bounded, linear, unknown };
const char* status_name(SatStatus s);

struct Verdict {
    SatStatus status = SatStatus::unknown;
    // ssat-linear | decomposable | permutation-indecomposable | q1-like | q2-like |
    // corpus-witness | q3-like-fixed-dim | none
    std::string reason = "none";
    std::string rule;
    std::vector<std::string> notes;
    std::optional<Decomposition> decomposition;
    std::optional<WitnessCertificate> certificate;
    std::string corpus_entry;
};

Verdict sat_verdict(const Pattern& p);

}  // namespace satmat
