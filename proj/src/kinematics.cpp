#include "shuttlesense/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shuttlesense/errors.hpp"

namespace shuttlesense::kinematics {

namespace {
constexpr double kRayEpsilon = 1e-9; // px
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
} // namespace

const std::vector<AngleDefinition>& default_angle_set() {
    static const std::vector<AngleDefinition> defs = {
        {"relbow", RShoulder, RElbow, RWrist},
        {"lelbow", LShoulder, LElbow, LWrist},
        {"rshoulder", Neck, RShoulder, RElbow},
        {"lshoulder", Neck, LShoulder, LElbow},
        {"rknee", RHip, RKnee, RAnkle},
        {"lknee", LHip, LKnee, LAnkle},
        {"rhip", Neck, RHip, RKnee},
        {"lhip", Neck, LHip, LKnee},
    };
    return defs;
}

double angle_at_joint(Point2 a, Point2 b, Point2 c) {
    const double ux = a.x - b.x, uy = a.y - b.y;
    const double vx = c.x - b.x, vy = c.y - b.y;
    const double nu = std::hypot(ux, uy);
    const double nv = std::hypot(vx, vy);
    if (nu <= kRayEpsilon || nv <= kRayEpsilon)
        throw DegenerateJoint("ray length below epsilon at joint");
    const double cosang = std::clamp((ux * vx + uy * vy) / (nu * nv), -1.0, 1.0);
    return std::acos(cosang) * kRadToDeg;
}

std::vector<JointAngleSeries> compute_angle_series(
    std::span<const SkeletonFrame> frames,
    std::span<const AngleDefinition> defs, double fps) {
    std::vector<JointAngleSeries> out;
    out.reserve(defs.size());
    for (const AngleDefinition& def : defs) {
        JointAngleSeries series;
        series.angle_name = def.name;
        series.fps = fps;
        series.values.reserve(frames.size());
        for (const SkeletonFrame& f : frames) {
            const Keypoint& a = f.keypoints[def.a];
            const Keypoint& b = f.keypoints[def.b];
            const Keypoint& c = f.keypoints[def.c];
            if (!a.present || !b.present || !c.present) {
                series.values.push_back(std::nullopt);
                continue;
            }
            try {
                series.values.push_back(
                    angle_at_joint({a.x, a.y}, {b.x, b.y}, {c.x, c.y}));
            } catch (const DegenerateJoint&) {
                series.values.push_back(std::nullopt);
            }
        }
        out.push_back(std::move(series));
    }
    return out;
}

JointAngleSeries fill_gaps(const JointAngleSeries& series, int max_gap) {
    JointAngleSeries out = series;
    const auto n = static_cast<int>(out.values.size());
    int i = 0;
    while (i < n) {
        if (out.values[i].has_value()) {
            ++i;
            continue;
        }
        int run_end = i;
        while (run_end < n && !out.values[run_end].has_value()) ++run_end;
        const int run_len = run_end - i;
        const bool interior = i > 0 && run_end < n;
        if (interior && run_len <= max_gap) {
            const double left = *out.values[i - 1];
            const double right = *out.values[run_end];
            for (int k = 0; k < run_len; ++k) {
                const double t = static_cast<double>(k + 1) / (run_len + 1);
                out.values[i + k] = left + t * (right - left);
            }
        }
        i = run_end;
    }
    return out;
}

JointAngleSeries smooth(const JointAngleSeries& series, int window) {
    if (window < 1 || window % 2 == 0)
        throw BadWindow("smoothing window must be odd and >= 1");
    if (window == 1) return series;
    JointAngleSeries out = series;
    const auto n = static_cast<int>(series.values.size());
    const int half = window / 2;
    for (int i = 0; i < n; ++i) {
        if (!series.values[i].has_value()) continue;
        double sum = 0.0;
        int count = 0;
        for (int j = std::max(0, i - half); j <= std::min(n - 1, i + half); ++j) {
            if (series.values[j].has_value()) {
                sum += *series.values[j];
                ++count;
            }
        }
        out.values[i] = sum / count;
    }
    return out;
}

SkeletonFrame normalize_skeleton(const SkeletonFrame& frame) {
    const Keypoint& neck = frame.at(Neck);
    const Keypoint& hip = frame.at(MidHip);
    if (!neck.present || !hip.present)
        throw MissingTorso("Neck or MidHip missing in frame " +
                           std::to_string(frame.frame_index));
    const double torso = std::hypot(neck.x - hip.x, neck.y - hip.y);
    if (torso <= kRayEpsilon)
        throw MissingTorso("degenerate torso in frame " +
                           std::to_string(frame.frame_index));
    SkeletonFrame out = frame;
    for (Keypoint& kp : out.keypoints) {
        if (!kp.present) continue;
        kp.x = (kp.x - hip.x) / torso;
        kp.y = (kp.y - hip.y) / torso;
    }
    return out;
}

std::string angle_series_csv(std::span<const JointAngleSeries> series) {
    std::ostringstream os;
    os << "frame";
    std::size_t n = 0;
    for (const JointAngleSeries& s : series) {
        os << ',' << s.angle_name;
        n = std::max(n, s.values.size());
    }
    os << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        os << i;
        for (const JointAngleSeries& s : series) {
            os << ',';
            if (i < s.values.size() && s.values[i].has_value())
                os << *s.values[i];
        }
        os << '\n';
    }
    return os.str();
}

} // namespace shuttlesense::kinematics
