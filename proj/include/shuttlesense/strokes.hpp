#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shuttlesense/kinematics.hpp"
#include "shuttlesense/types.hpp"

namespace shuttlesense::strokes {

// Number of phase samples every stroke window is resampled to.
inline constexpr int kPhaseSamples = 64;

struct StrokeSegment {
    int start_frame = 0;
    int peak_frame = 0;
    int end_frame = 0;
    std::string view_id;
    Handedness handedness = Handedness::Right;
};

struct AnglePhaseSeries {
    std::string angle_name;
    // nullopt when the window had a gap longer than max_gap or fewer than
    // 3 present samples for this angle.
    std::optional<std::array<double, kPhaseSamples>> values;
};

struct StrokeFeatures {
    StrokeClass cls = StrokeClass::Drive;
    bool contact_overhead = false;
    double peak_wrist_speed = 0.0; // torso-lengths / second
    std::optional<double> outgoing_angle_deg; // +up / -down, from trajectory
    std::vector<AnglePhaseSeries> angle_phase;
    StrokeSegment segment;
};

struct SwingMetrics {
    double head_speed = 0.0; // m/s
    double force = 0.0;      // N
    double radian = 0.0;     // swing arc, rad
    double calories = 0.0;   // kcal
};

struct SpeedTiers {
    double fast = 6.0; // torso-lengths/s
    double slow = 2.5;
};

// Racket-hand wrist speed in torso-lengths/s from normalized frames.
// Central difference where both neighbors are present, one-sided next to a
// gap, missing where the wrist itself is missing.
std::vector<std::optional<double>> wrist_speed_series(
    std::span<const SkeletonFrame> normalized_frames, Handedness handedness,
    double fps);

// Maximal runs with speed >= s_trigger, expanded to the surrounding local
// minima; runs whose peaks are closer than min_gap_s are merged. Segments
// shorter than 3 frames are dropped.
std::vector<StrokeSegment> segment_strokes(
    std::span<const std::optional<double>> speed, double fps, double s_trigger,
    double min_gap_s);

// Ordered decision table, first match wins; missing outgoing angle is
// treated as flat.
StrokeClass classify_from_descriptors(bool contact_overhead,
                                      std::optional<double> outgoing_angle_deg,
                                      double peak_wrist_speed,
                                      const SpeedTiers& tiers = {});

// Outgoing shuttle elevation from the track displacement over the 5 frames
// after the stroke peak. Pixel tracks use image convention (up = -y);
// court-space tracks carry no vertical information, so nullopt.
std::optional<double> outgoing_angle(const StrokeSegment& segment,
                                     const TrajectoryTrack& track);

// True when the racket wrist sits above the neck at the peak frame
// (image convention: smaller y).
bool contact_overhead(const StrokeSegment& segment,
                      std::span<const SkeletonFrame> frames);

double peak_wrist_speed(const StrokeSegment& segment,
                        std::span<const std::optional<double>> speed);

StrokeClass classify_stroke(const StrokeSegment& segment,
                            std::span<const SkeletonFrame> normalized_frames,
                            std::span<const std::optional<double>> speed,
                            const TrajectoryTrack* track,
                            const SpeedTiers& tiers = {});

// Resamples each tracked angle over [start, end] to kPhaseSamples by linear
// interpolation. Angles whose window holds a missing run longer than max_gap
// (or fewer than 3 present samples) come back without values; if that holds
// for every angle the stroke is EmptyStroke.
StrokeFeatures extract_features(
    const StrokeSegment& segment,
    std::span<const SkeletonFrame> normalized_frames,
    std::span<const kinematics::JointAngleSeries> angle_series,
    std::span<const std::optional<double>> speed, const TrajectoryTrack* track,
    double fps, int max_gap, const SpeedTiers& tiers = {});

// IMU-derived swing metrics over [t0, t1]:
//   head_speed = r_eff * peak |gyro|
//   force      = racket_mass * peak |accel|
//   radian     = trapezoidal integral of |gyro|
//   calories   = (0.5 * racket_mass * head_speed^2 / eta) / 4184
SwingMetrics swing_metrics(const ImuTrace& trace, double t0, double t1,
                           double racket_mass, double r_eff, double eta);

// CSV dump: "start,peak,end,class,peak_wrist_speed,outgoing_angle".
std::string stroke_csv(std::span<const StrokeFeatures> features);

} // namespace shuttlesense::strokes
