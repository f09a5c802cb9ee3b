#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shuttlesense/types.hpp"

namespace shuttlesense::kinematics {

// Interior angle measured at keypoint b between rays b->a and b->c.
struct AngleDefinition {
    std::string name;
    int a = 0;
    int b = 0;
    int c = 0;
};

// Per-frame angle values in degrees; nullopt marks frames where any of the
// defining keypoints was missing.
struct JointAngleSeries {
    std::string angle_name;
    std::vector<std::optional<double>> values;
    double fps = 0.0;
};

// The canonical tracked set: elbows, shoulders, knees, hips (8 angles).
const std::vector<AngleDefinition>& default_angle_set();

// Angle in [0, 180] degrees. Throws DegenerateJoint when either ray is
// shorter than 1e-9.
double angle_at_joint(Point2 a, Point2 b, Point2 c);

std::vector<JointAngleSeries> compute_angle_series(
    std::span<const SkeletonFrame> frames,
    std::span<const AngleDefinition> defs, double fps);

// Linearly interpolates interior missing runs of length <= max_gap.
// Boundary runs and longer runs are left missing.
JointAngleSeries fill_gaps(const JointAngleSeries& series, int max_gap);

// Centered moving average over the present values inside the window.
// Missing entries stay missing. Throws BadWindow unless window is odd, >= 1.
JointAngleSeries smooth(const JointAngleSeries& series, int window);

// MidHip to origin, coordinates divided by |Neck - MidHip|. Angles are
// preserved (similarity transform). Throws MissingTorso when Neck or MidHip
// is absent or they coincide.
SkeletonFrame normalize_skeleton(const SkeletonFrame& frame);

// CSV dump: header "frame,<name>,...", empty cells for missing values.
std::string angle_series_csv(std::span<const JointAngleSeries> series);

} // namespace shuttlesense::kinematics
