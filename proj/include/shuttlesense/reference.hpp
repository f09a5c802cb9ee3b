#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shuttlesense/strokes.hpp"
#include "shuttlesense/types.hpp"

namespace shuttlesense::reference {

using strokes::kPhaseSamples;

struct EnvelopeBand {
    std::array<double, kPhaseSamples> lo{};
    std::array<double, kPhaseSamples> hi{};
    int support_count = 0;
};

struct ExcludedPair {
    StrokeClass cls;
    std::string angle_name;
    int support_count = 0;
};

// Optional hard legality limits per angle, intersected with the statistical
// band when present.
struct HardLimit {
    double min_deg = 0.0;
    double max_deg = 180.0;
};

struct EnvelopeModel {
    double p_lo = 10.0;
    double p_hi = 90.0;
    int n_min = 5;
    // Keyed (class, angle name); keys sorted by class name then angle name.
    std::map<std::pair<std::string, std::string>, EnvelopeBand> bands;
    std::vector<ExcludedPair> excluded;

    const EnvelopeBand* find(StrokeClass cls, const std::string& angle) const;
    bool has_class(StrokeClass cls) const;
};

// Linear-interpolation percentile of the sorted values, p in [0, 100].
double percentile_linear(std::span<const double> sorted_values, double p);

EnvelopeModel build_envelope(
    std::span<const strokes::StrokeFeatures> reference_strokes, double p_lo,
    double p_hi, int n_min,
    const std::map<std::string, HardLimit>& hard_limits = {});

enum class Direction { Above, Below };

struct AngleDeviation {
    std::array<double, kPhaseSamples> dev{}; // degrees outside the band
    double mean_dev = 0.0;
    double max_dev = 0.0;
    std::pair<double, double> worst_phase_span{0.0, 0.0};
    Direction direction = Direction::Above;
    double above_sum = 0.0; // total excess over hi, for direction dominance
    double below_sum = 0.0; // total shortfall under lo
};

struct DeviationProfile {
    std::map<std::string, AngleDeviation> angles;
    double mean_dev = 0.0; // over all present angles and phases
    std::vector<std::string> skipped_angles;
};

struct ScoredStroke {
    StrokeClass cls = StrokeClass::Drive;
    DeviationProfile profile;
    double accuracy = 0.0; // [0, 100]
};

// dev[i] = max(0, lo-v, v-hi); accuracy = 100 * max(0, 1 - mean_dev/d_norm).
// Throws UnknownClass when the model has no band at all for the class.
ScoredStroke score_stroke(const strokes::StrokeFeatures& features,
                          const EnvelopeModel& model, double d_norm);

struct Fault {
    std::string angle_name;
    StrokeClass cls = StrokeClass::Drive;
    double severity = 0.0; // mean of per-stroke mean deviations, degrees
    Direction direction = Direction::Above;
    std::pair<double, double> phase_span{0.0, 0.0};
    int stroke_count = 0;
};

// Aggregates per (angle, class), sorted by severity descending; ties broken
// by (class, angle) lexicographically. Zero-severity pairs are dropped.
std::vector<Fault> rank_faults(std::span<const ScoredStroke> scored);

struct PlayAccuracy {
    std::vector<double> per_stroke;
    double session = 0.0; // unweighted mean
    std::map<std::string, double> per_class;
};

PlayAccuracy play_accuracy(std::span<const ScoredStroke> scored);

void save_envelope(const std::filesystem::path& path,
                   const EnvelopeModel& model);
EnvelopeModel load_envelope(const std::filesystem::path& path);

} // namespace shuttlesense::reference
