#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shuttlesense {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// BODY-25 keypoint order as emitted by OpenPose.
enum BodyPart : int {
    Nose = 0,
    Neck = 1,
    RShoulder = 2,
    RElbow = 3,
    RWrist = 4,
    LShoulder = 5,
    LElbow = 6,
    LWrist = 7,
    MidHip = 8,
    RHip = 9,
    RKnee = 10,
    RAnkle = 11,
    LHip = 12,
    LKnee = 13,
    LAnkle = 14,
    REye = 15,
    LEye = 16,
    REar = 17,
    LEar = 18,
    LBigToe = 19,
    LSmallToe = 20,
    LHeel = 21,
    RBigToe = 22,
    RSmallToe = 23,
    RHeel = 24,
};

inline constexpr int kBodyKeypoints = 25;

struct Keypoint {
    double x = 0.0;
    double y = 0.0;
    bool present = false;
};

// One frame of 2-D pose observations. Pixel coordinates are image-style
// (y grows downward); normalized coordinates keep the same orientation.
struct SkeletonFrame {
    int frame_index = 0;
    std::string view_id;
    std::array<Keypoint, kBodyKeypoints> keypoints{};

    const Keypoint& at(BodyPart p) const { return keypoints[static_cast<int>(p)]; }
    Keypoint& at(BodyPart p) { return keypoints[static_cast<int>(p)]; }
};

enum class TrackSpace { Pixel, Court };

struct TrajectorySample {
    int frame_index = 0;
    bool visible = false;
    double x = 0.0;
    double y = 0.0;
};

struct TrajectoryTrack {
    std::vector<TrajectorySample> samples;
    TrackSpace space = TrackSpace::Pixel;
};

struct ImuSample {
    double t = 0.0;                      // seconds
    double ax = 0.0, ay = 0.0, az = 0.0; // m/s^2
    double gx = 0.0, gy = 0.0, gz = 0.0; // rad/s
};

struct ImuTrace {
    std::vector<ImuSample> samples;
};

enum class SubjectRole { Reference, Trainee };
enum class Handedness { Right, Left };

// Row-major 3x3 projective map, pixel -> court meters. Identity by default
// so synthetic court-space tracks pass through unchanged.
struct Homography {
    std::array<double, 9> m = {1, 0, 0, 0, 1, 0, 0, 0, 1};

    Point2 apply(Point2 p) const {
        const double w = m[6] * p.x + m[7] * p.y + m[8];
        return {(m[0] * p.x + m[1] * p.y + m[2]) / w,
                (m[3] * p.x + m[4] * p.y + m[5]) / w};
    }
    bool is_identity() const {
        const std::array<double, 9> id = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        return m == id;
    }
};

struct ViewEntry {
    std::string view_id;
    double camera_angle_deg = 0.0;
    std::string pose_dir;
    std::optional<std::string> trajectory_path;
    std::optional<std::string> imu_path;
    TrackSpace trajectory_space = TrackSpace::Pixel;
    Homography homography;        // pixel -> court, used for landing analysis
    double imu_t0_offset_s = 0.0; // IMU timestamp of video frame 0
};

struct SessionManifest {
    std::string session_id;
    std::string subject_id;
    SubjectRole role = SubjectRole::Trainee;
    Handedness handedness = Handedness::Right;
    std::vector<ViewEntry> views;
    double fps = 0.0;
};

enum class StrokeClass { Smash, Lift, Clear, Block, Slice, Drive };

inline constexpr std::array<StrokeClass, 6> kAllStrokeClasses = {
    StrokeClass::Smash, StrokeClass::Lift,  StrokeClass::Clear,
    StrokeClass::Block, StrokeClass::Slice, StrokeClass::Drive,
};

std::string to_string(StrokeClass c);
StrokeClass stroke_class_from_string(const std::string& name);

std::string to_string(SubjectRole r);
SubjectRole role_from_string(const std::string& name);

std::string to_string(Handedness h);
Handedness handedness_from_string(const std::string& name);

} // namespace shuttlesense
