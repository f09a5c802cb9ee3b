#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shuttlesense/canonical_json.hpp"
#include "shuttlesense/reference.hpp"
#include "shuttlesense/strokes.hpp"

namespace shuttlesense::report {

struct StrokeRow {
    int index = 0;
    int start_frame = 0, peak_frame = 0, end_frame = 0;
    std::string cls;
    double accuracy = 0.0;
    double peak_wrist_speed = 0.0;
    std::optional<double> outgoing_angle_deg;
    std::optional<strokes::SwingMetrics> swing;
};

struct HeatmapRef {
    int origin_zone = 0;
    std::string cls;
    std::string path; // relative to the report
    int most_probable_zone = 0;
};

struct SwingSummary {
    int strokes_with_imu = 0;
    double mean_head_speed = 0.0;
    double peak_head_speed = 0.0;
    double mean_force = 0.0;
    double total_radian = 0.0;
    double total_calories = 0.0;
};

struct AssessmentReport {
    std::string session_id;
    double overall_accuracy = 0.0;
    std::map<std::string, double> per_class_accuracy;
    std::vector<reference::Fault> faults; // full ranked list
    std::vector<StrokeRow> strokes;
    SwingSummary swing;
    std::vector<HeatmapRef> heatmaps;
    int strokes_without_landing = 0;
    std::vector<std::string> validation_warnings;
    canon::Object config_echo;
};

struct AssembleInputs {
    std::string session_id;
    std::span<const reference::ScoredStroke> scored;
    std::span<const strokes::StrokeFeatures> features; // parallel to scored
    std::span<const std::optional<strokes::SwingMetrics>> swing;
    std::vector<HeatmapRef> heatmaps;
    int strokes_without_landing = 0;
    std::vector<std::string> validation_warnings;
    canon::Object config_echo;
};

// Deterministic: accuracy aggregation, fault ranking, swing summary.
AssessmentReport assemble_report(AssembleInputs in);

// Canonical form: sorted keys, %.9g numbers. serialize(parse(s)) == s.
std::string to_canonical_json(const AssessmentReport& report);
AssessmentReport parse_report_json(const std::string& text);

// Human-readable document. Faults below fault_threshold_deg are left to the
// serialized form; top_k caps the rendered table.
std::string render_markdown(const AssessmentReport& report,
                            double fault_threshold_deg, int top_k);

struct ProgressEntry {
    std::string session_id;
    double timestamp = 0.0; // caller-supplied, non-decreasing
    double overall_accuracy = 0.0;
    std::map<std::string, double> per_class_accuracy;
};

struct ProgressSummary {
    std::vector<ProgressEntry> entries;
    std::vector<double> deltas; // entry i+1 minus entry i
    std::string best_session;
    bool monotonic_improvement = false;
};

ProgressSummary compare_sessions(std::span<const ProgressEntry> track);

std::string progress_to_json(const ProgressSummary& summary);
std::string progress_markdown(const ProgressSummary& summary);

} // namespace shuttlesense::report
