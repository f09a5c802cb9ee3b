#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shuttlesense/types.hpp"

namespace shuttlesense::fixture {

struct InjectedFault {
    std::string angle_name; // one of the tracked angle names
    StrokeClass cls = StrokeClass::Clear;
    double phase_lo = 0.0;
    double phase_hi = 1.0;
    double offset_deg = 0.0;
};

// Synthetic session recipe. Either per-class counts or a probability mix
// (summing to 1) with a total count.
struct FixtureSpec {
    std::uint64_t seed = 0;
    double fps = 30.0;
    int views = 1; // 1..3, cameras 120 degrees apart
    std::map<std::string, int> strokes_per_class;
    std::optional<std::map<std::string, double>> class_mix;
    int total_strokes = 0; // used with class_mix
    std::vector<InjectedFault> faults;
    double landing_scatter_m = 0.4;
    double profile_jitter_deg = 1.2;
    double keypoint_noise_px = 0.4;
    std::string session_id = "fixture";
    std::string subject_id = "subjectA";
    SubjectRole role = SubjectRole::Trainee;
};

FixtureSpec load_fixture_spec(const std::filesystem::path& path);

struct GroundTruthStroke {
    int index = 0;
    StrokeClass cls = StrokeClass::Drive;
    int start_frame = 0;
    int contact_frame = 0;
    int end_frame = 0;
    Point2 origin;  // court meters
    Point2 landing; // court meters
};

struct GroundTruth {
    std::vector<GroundTruthStroke> strokes;
    std::vector<InjectedFault> faults;
};

// Writes manifest.json, per-view pose frames, trajectory and IMU traces,
// and ground_truth.json into out_dir. Deterministic for a given spec.
GroundTruth generate_fixture_session(const FixtureSpec& spec,
                                     const std::filesystem::path& out_dir);

GroundTruth load_ground_truth(const std::filesystem::path& session_dir);

} // namespace shuttlesense::fixture
