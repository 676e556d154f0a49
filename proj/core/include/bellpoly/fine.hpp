#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellpoly/direction.hpp"
#include "bellpoly/inequalities.hpp"
#include "bellpoly/ldm.hpp"

namespace bellpoly::fine {

/// Local hidden-variable model with detection inefficiency. The hidden
/// variable is a unit vector lambda, uniform on the sphere. Outcomes and
/// detection probabilities on a wing depend only on (lambda, own setting);
/// that is the locality of the construction.
struct FineModel {
    std::function<bool(const Direction& lambda, const Direction& a)> left_up;
    std::function<bool(const Direction& lambda, const Direction& b)> right_up;
    std::function<double(const Direction& lambda, const Direction& a)> left_detect;
    std::function<double(const Direction& lambda, const Direction& b)> right_detect;
};

/// The shipped construction: the left wing always detects and reports up
/// iff lambda . a >= 0; the right wing reports up iff lambda . b < 0 and
/// detects with probability |lambda . b|. Post-selected on coincidences
/// this reproduces the singlet joint probability at every angle (verified
/// against the trace rule by the test suite's Monte Carlo and quadrature
/// oracles).
FineModel default_model();

/// Same outcome functions with both detectors perfect; no post-selection
/// bias, so Bell-CH holds for its coincidence statistics.
FineModel full_detection_model();

/// Tallies of one (a, b) run.
struct CoincidenceStats {
    std::uint64_t pairs = 0;  // emitted
    std::uint64_t left_detected = 0, right_detected = 0, coincidences = 0;
    std::uint64_t left_up_detected = 0, right_up_detected = 0;
    // Among coincidences, outcome counts indexed [left][right], 0 = up.
    std::array<std::array<std::uint64_t, 2>, 2> outcomes{};

    double coincidence_rate() const {
        return pairs ? static_cast<double>(coincidences) / static_cast<double>(pairs) : 0.0;
    }
    /// Post-selected probability (denominator: coincidences). Undefined
    /// when the run produced no coincidences.
    std::optional<double> post_probability(int left_outcome, int right_outcome) const;
    /// Raw probability of a joint outcome (denominator: all emitted pairs).
    double raw_probability(int left_outcome, int right_outcome) const;
};

/// Samples `pairs` emissions at settings (a, b). lambda sampling and the
/// two detection decisions use separate substreams per trial block, so
/// toggling a detection variant does not disturb the lambda sequence.
CoincidenceStats run(const FineModel& m, const Direction& a, const Direction& b,
                     std::uint64_t pairs, std::uint64_t seed);

struct AngleScanPoint {
    double angle_deg = 0.0;
    std::uint64_t pairs = 0, coincidences = 0;
    std::optional<double> post_up_up;
    double coincidence_rate = 0.0;
};

/// Post-selected up-up probability across a grid of angles between the
/// settings, one run per angle.
std::vector<AngleScanPoint> angle_scan(const FineModel& m,
                                       std::span<const double> angles_deg,
                                       std::uint64_t pairs, std::uint64_t seed);

std::string angle_scan_csv(std::span<const AngleScanPoint> points);

/// Runs all four setting pairs of a geometry and contrasts the raw
/// ensemble (denominator: all emitted pairs; non-detections count as a
/// null outcome, so this is an honest LDM world) with the post-selected
/// ensemble (denominator: coincidences, the Eq-style biased ensemble).
struct LoopholeReport {
    std::array<Direction, 4> geometry;
    std::uint64_t pairs_per_setting = 0;
    std::array<std::array<CoincidenceStats, 2>, 2> runs;  // [i][j]

    EprConditionalTable raw_table;
    ldm::ConditionalTable post_table;  // cells undefined on zero coincidences

    ineq::InequalityReport raw_bell_ch;
    std::optional<ineq::InequalityReport> post_bell_ch;  // when fully defined

    double mean_coincidence_rate = 0.0;
};

LoopholeReport loophole_report(const FineModel& m,
                               const std::array<Direction, 4>& geometry,
                               std::uint64_t pairs_per_setting, std::uint64_t seed);

}  // namespace bellpoly::fine
