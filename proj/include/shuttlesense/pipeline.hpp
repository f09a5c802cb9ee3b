#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "shuttlesense/config.hpp"
#include "shuttlesense/court.hpp"
#include "shuttlesense/ingest.hpp"
#include "shuttlesense/reference.hpp"
#include "shuttlesense/report.hpp"
#include "shuttlesense/strokes.hpp"

namespace shuttlesense::pipeline {

struct SessionData {
    SessionManifest manifest;
    std::filesystem::path base_dir;
    std::vector<std::vector<SkeletonFrame>> frames_per_view;
    std::optional<TrajectoryTrack> trajectory; // primary view
    std::optional<ImuTrace> imu;               // primary view
};

SessionData load_session(const std::filesystem::path& manifest_path,
                         const Config& cfg);

ingest::ValidationReport validate(const SessionData& session,
                                  const Config& cfg);

struct ExtractedStrokes {
    std::vector<strokes::StrokeFeatures> features;
    std::vector<std::optional<strokes::SwingMetrics>> swing; // per stroke
    std::vector<std::optional<court::LandingObservation>> landings;
    double torso_scale_px = 0.0; // median torso length, pixels
};

// Pose frames -> normalized skeletons -> angle series -> segmentation ->
// classification and per-stroke features. Uses the primary (first) view.
ExtractedStrokes extract_strokes(const SessionData& session,
                                 const Config& cfg);

reference::EnvelopeModel build_reference(
    std::span<const std::filesystem::path> manifest_paths, const Config& cfg);

struct AnalysisResult {
    report::AssessmentReport assessment;
    std::map<court::HeatmapKey, court::LandingHeatmap> heatmaps;
    ingest::ValidationReport validation;
};

// Full scoring pipeline for one trainee session. Throws Error on data
// problems; a failed validation is reported through `validation` with an
// empty assessment.
AnalysisResult analyze(const std::filesystem::path& manifest_path,
                       const reference::EnvelopeModel& model,
                       const Config& cfg);

// Writes report.json / report.md plus heatmap files under out_dir and
// patches the heatmap references into the returned copy of the report.
report::AssessmentReport write_analysis_outputs(
    const AnalysisResult& result, const std::filesystem::path& out_dir,
    const Config& cfg, const std::string& format /* json|md|both */);

std::map<court::HeatmapKey, court::LandingHeatmap> landing_heatmaps(
    std::span<const std::filesystem::path> manifest_paths, const Config& cfg,
    int* skipped = nullptr);

} // namespace shuttlesense::pipeline
