#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "shuttlesense/types.hpp"

namespace shuttlesense::ingest {

enum class CheckStatus { Pass, Warn, Fail };

struct ValidationCheck {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool has_failure() const;
    std::vector<std::string> warnings() const;
    std::string to_text() const;
};

// Reads every "<prefix>_<frameidx>_keypoints.json" file in dir, ordered by
// the numeric frame index embedded in the filename. Keypoints below
// confidence_floor (and the upstream (0,0,0) convention) are marked missing.
// When a file holds several people the one with the largest keypoint
// bounding-box area is kept.
std::vector<SkeletonFrame> parse_pose_frames(const std::filesystem::path& dir,
                                             double confidence_floor);

SkeletonFrame parse_pose_file(const std::filesystem::path& file,
                              double confidence_floor, int frame_index,
                              const std::string& view_id = {});

// CSV with header "Frame,Visibility,X,Y". Visibility-0 rows are retained.
TrajectoryTrack parse_trajectory(const std::filesystem::path& path);

// CSV with header "t,ax,ay,az,gx,gy,gz"; t strictly increasing, SI units.
ImuTrace parse_imu(const std::filesystem::path& path);

SessionManifest parse_manifest(const std::filesystem::path& path);

// Session-level data criteria. Pure: never throws, always returns a report;
// a Fail entry blocks downstream analysis in the CLI.
ValidationReport validate_session(
    const SessionManifest& manifest,
    std::span<const std::vector<SkeletonFrame>> frames_per_view,
    double v_min, std::span<const int> tracked_joints);

// Emitters for the same formats (used by the fixture generator and the
// round-trip tests). Confidence is written as 1 for present keypoints and
// the (0,0,0) convention is used for missing ones.
void write_pose_frame(const std::filesystem::path& file,
                      const SkeletonFrame& frame);
void write_trajectory(const std::filesystem::path& path,
                      const TrajectoryTrack& track);
void write_imu(const std::filesystem::path& path, const ImuTrace& trace);
void write_manifest(const std::filesystem::path& path,
                    const SessionManifest& manifest);

} // namespace shuttlesense::ingest
