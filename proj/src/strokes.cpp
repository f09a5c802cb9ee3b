#include "shuttlesense/strokes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shuttlesense/errors.hpp"

namespace shuttlesense::strokes {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr int kMinSegmentFrames = 3;
constexpr int kOutgoingHorizonFrames = 5;

BodyPart wrist_of(Handedness h) {
    return h == Handedness::Right ? RWrist : LWrist;
}

std::optional<Point2> wrist_pos(const SkeletonFrame& f, Handedness h) {
    const Keypoint& kp = f.at(wrist_of(h));
    if (!kp.present) return std::nullopt;
    return Point2{kp.x, kp.y};
}

} // namespace

std::vector<std::optional<double>> wrist_speed_series(
    std::span<const SkeletonFrame> frames, Handedness handedness, double fps) {
    const auto n = static_cast<int>(frames.size());
    std::vector<std::optional<double>> speed(n);
    if (n < 2) return speed;
    for (int i = 0; i < n; ++i) {
        const auto here = wrist_pos(frames[i], handedness);
        if (!here) continue; // missing wrist -> missing speed
        const auto prev = i > 0 ? wrist_pos(frames[i - 1], handedness)
                                : std::nullopt;
        const auto next = i + 1 < n ? wrist_pos(frames[i + 1], handedness)
                                    : std::nullopt;
        if (prev && next) {
            speed[i] = std::hypot(next->x - prev->x, next->y - prev->y) / 2.0 * fps;
        } else if (next) {
            speed[i] = std::hypot(next->x - here->x, next->y - here->y) * fps;
        } else if (prev) {
            speed[i] = std::hypot(here->x - prev->x, here->y - prev->y) * fps;
        }
    }
    return speed;
}

std::vector<StrokeSegment> segment_strokes(
    std::span<const std::optional<double>> speed, double fps, double s_trigger,
    double min_gap_s) {
    const auto n = static_cast<int>(speed.size());
    const auto value = [&](int i) { return speed[i].value_or(0.0); };

    struct Run {
        int start, end, peak; // inclusive
        double peak_value;
    };
    std::vector<Run> runs;
    int i = 0;
    while (i < n) {
        if (value(i) < s_trigger) {
            ++i;
            continue;
        }
        int run_end = i;
        int peak = i;
        while (run_end < n && value(run_end) >= s_trigger) {
            if (value(run_end) > value(peak)) peak = run_end; // ties -> earliest
            ++run_end;
        }
        runs.push_back({i, run_end - 1, peak, value(peak)});
        i = run_end;
    }

    // Merge runs whose peaks are closer than min_gap_s.
    const int min_gap_frames = static_cast<int>(std::lround(min_gap_s * fps));
    std::vector<Run> merged;
    for (const Run& r : runs) {
        if (!merged.empty() && r.peak - merged.back().peak < min_gap_frames) {
            Run& m = merged.back();
            m.end = r.end;
            if (r.peak_value > m.peak_value) {
                m.peak = r.peak;
                m.peak_value = r.peak_value;
            }
        } else {
            merged.push_back(r);
        }
    }

    // Expand each run downhill to the surrounding local minima.
    std::vector<StrokeSegment> segments;
    for (const Run& r : merged) {
        int lo = r.start;
        while (lo > 0 && speed[lo - 1].has_value() && value(lo - 1) < value(lo))
            --lo;
        int hi = r.end;
        while (hi + 1 < n && speed[hi + 1].has_value() &&
               value(hi + 1) < value(hi))
            ++hi;
        if (!segments.empty() && lo <= segments.back().end_frame)
            lo = segments.back().end_frame + 1;
        if (hi - lo < kMinSegmentFrames) continue;
        StrokeSegment seg;
        seg.start_frame = lo;
        seg.peak_frame = r.peak;
        seg.end_frame = hi;
        segments.push_back(seg);
    }
    return segments;
}

StrokeClass classify_from_descriptors(bool contact_overhead,
                                      std::optional<double> outgoing_angle_deg,
                                      double peak_wrist_speed,
                                      const SpeedTiers& tiers) {
    const double out = outgoing_angle_deg.value_or(0.0); // missing -> flat
    const bool fast = peak_wrist_speed >= tiers.fast;
    const bool slow = peak_wrist_speed < tiers.slow;
    if (contact_overhead && out < -20.0 && fast) return StrokeClass::Smash;
    if (contact_overhead && out > 20.0) return StrokeClass::Clear;
    if (contact_overhead && out < -20.0) return StrokeClass::Slice;
    if (!contact_overhead && out > 20.0) return StrokeClass::Lift;
    if (slow) return StrokeClass::Block;
    return StrokeClass::Drive;
}

std::optional<double> outgoing_angle(const StrokeSegment& segment,
                                     const TrajectoryTrack& track) {
    // Court-space tracks are ground-plane projections; they carry no
    // vertical information, so the elevation is unknowable.
    if (track.space == TrackSpace::Court) return std::nullopt;
    const TrajectorySample* first = nullptr;
    const TrajectorySample* last = nullptr;
    for (const TrajectorySample& s : track.samples) {
        if (!s.visible) continue;
        if (s.frame_index < segment.peak_frame) continue;
        if (s.frame_index > segment.peak_frame + kOutgoingHorizonFrames) break;
        if (!first) first = &s;
        last = &s;
    }
    if (!first || first == last) return std::nullopt;
    const double dx = last->x - first->x;
    const double dy = last->y - first->y; // image y grows downward
    if (dx == 0.0 && dy == 0.0) return std::nullopt;
    return std::atan2(-dy, std::abs(dx)) * kRadToDeg;
}

bool contact_overhead(const StrokeSegment& segment,
                      std::span<const SkeletonFrame> frames) {
    if (segment.peak_frame < 0 ||
        segment.peak_frame >= static_cast<int>(frames.size()))
        return false;
    const SkeletonFrame& f = frames[segment.peak_frame];
    const Keypoint& wrist = f.at(wrist_of(segment.handedness));
    const Keypoint& neck = f.at(Neck);
    if (!wrist.present || !neck.present) return false;
    return wrist.y < neck.y; // image convention: above means smaller y
}

double peak_wrist_speed(const StrokeSegment& segment,
                        std::span<const std::optional<double>> speed) {
    double peak = 0.0;
    const int hi = std::min(segment.end_frame,
                            static_cast<int>(speed.size()) - 1);
    for (int i = std::max(0, segment.start_frame); i <= hi; ++i)
        if (speed[i].has_value()) peak = std::max(peak, *speed[i]);
    return peak;
}

StrokeClass classify_stroke(const StrokeSegment& segment,
                            std::span<const SkeletonFrame> normalized_frames,
                            std::span<const std::optional<double>> speed,
                            const TrajectoryTrack* track,
                            const SpeedTiers& tiers) {
    const bool overhead = contact_overhead(segment, normalized_frames);
    const std::optional<double> out =
        track ? outgoing_angle(segment, *track) : std::nullopt;
    return classify_from_descriptors(overhead, out,
                                     peak_wrist_speed(segment, speed), tiers);
}

namespace {

// Window values with interior gaps <= max_gap interpolated and edge gaps
// extended from the nearest present value; nullopt when the angle is
// unusable for this stroke.
std::optional<std::vector<double>> usable_window(
    std::span<const std::optional<double>> values, int start, int end,
    int max_gap) {
    std::vector<std::optional<double>> window(values.begin() + start,
                                              values.begin() + end + 1);
    const auto n = static_cast<int>(window.size());
    int present = 0;
    int longest_gap = 0;
    int run = 0;
    for (const auto& v : window) {
        if (v.has_value()) {
            ++present;
            run = 0;
        } else {
            longest_gap = std::max(longest_gap, ++run);
        }
    }
    if (present < 3 || longest_gap > max_gap) return std::nullopt;

    std::vector<double> out(n);
    int i = 0;
    while (i < n) {
        if (window[i].has_value()) {
            out[i] = *window[i];
            ++i;
            continue;
        }
        int run_end = i;
        while (run_end < n && !window[run_end].has_value()) ++run_end;
        if (i == 0) {
            for (int k = i; k < run_end; ++k) out[k] = *window[run_end];
        } else if (run_end == n) {
            for (int k = i; k < run_end; ++k) out[k] = *window[i - 1];
        } else {
            const double left = *window[i - 1];
            const double right = *window[run_end];
            const int len = run_end - i;
            for (int k = 0; k < len; ++k)
                out[i + k] = left + (right - left) * (k + 1) / (len + 1);
        }
        i = run_end;
    }
    return out;
}

std::array<double, kPhaseSamples> resample_to_phase(
    std::span<const double> window) {
    std::array<double, kPhaseSamples> out{};
    const auto n = static_cast<int>(window.size());
    if (n == 1) {
        out.fill(window[0]);
        return out;
    }
    for (int i = 0; i < kPhaseSamples; ++i) {
        const double pos =
            static_cast<double>(i) / (kPhaseSamples - 1) * (n - 1);
        const int lo = std::min(static_cast<int>(pos), n - 2);
        const double frac = pos - lo;
        out[i] = window[lo] + frac * (window[lo + 1] - window[lo]);
    }
    return out;
}

} // namespace

StrokeFeatures extract_features(
    const StrokeSegment& segment,
    std::span<const SkeletonFrame> normalized_frames,
    std::span<const kinematics::JointAngleSeries> angle_series,
    std::span<const std::optional<double>> speed, const TrajectoryTrack* track,
    double fps, int max_gap, const SpeedTiers& tiers) {
    const auto frame_count = static_cast<int>(normalized_frames.size());
    if (segment.start_frame < 0 || segment.end_frame >= frame_count ||
        segment.start_frame > segment.end_frame)
        throw Error("stroke segment outside frame range");

    StrokeFeatures feat;
    feat.segment = segment;
    feat.contact_overhead = contact_overhead(segment, normalized_frames);
    feat.peak_wrist_speed = peak_wrist_speed(segment, speed);
    if (track) feat.outgoing_angle_deg = outgoing_angle(segment, *track);
    feat.cls = classify_from_descriptors(feat.contact_overhead,
                                         feat.outgoing_angle_deg,
                                         feat.peak_wrist_speed, tiers);

    bool any_present = false;
    for (const kinematics::JointAngleSeries& series : angle_series) {
        AnglePhaseSeries phase;
        phase.angle_name = series.angle_name;
        if (segment.end_frame < static_cast<int>(series.values.size())) {
            const auto window = usable_window(series.values, segment.start_frame,
                                              segment.end_frame, max_gap);
            if (window) {
                phase.values = resample_to_phase(*window);
                any_present = true;
            }
        }
        feat.angle_phase.push_back(std::move(phase));
    }
    if (!any_present)
        throw EmptyStroke("fewer than 3 present samples for every angle in [" +
                          std::to_string(segment.start_frame) + ", " +
                          std::to_string(segment.end_frame) + "]");
    return feat;
}

SwingMetrics swing_metrics(const ImuTrace& trace, double t0, double t1,
                           double racket_mass, double r_eff, double eta) {
    std::vector<const ImuSample*> in_window;
    for (const ImuSample& s : trace.samples)
        if (s.t >= t0 && s.t <= t1) in_window.push_back(&s);
    if (in_window.empty())
        throw EmptyWindow("no IMU samples in window");

    double omega_peak = 0.0;
    double accel_peak = 0.0;
    for (const ImuSample* s : in_window) {
        omega_peak = std::max(omega_peak, std::sqrt(s->gx * s->gx +
                                                    s->gy * s->gy +
                                                    s->gz * s->gz));
        accel_peak = std::max(accel_peak, std::sqrt(s->ax * s->ax +
                                                    s->ay * s->ay +
                                                    s->az * s->az));
    }
    double radian = 0.0;
    for (std::size_t i = 1; i < in_window.size(); ++i) {
        const ImuSample* a = in_window[i - 1];
        const ImuSample* b = in_window[i];
        const double wa = std::sqrt(a->gx * a->gx + a->gy * a->gy + a->gz * a->gz);
        const double wb = std::sqrt(b->gx * b->gx + b->gy * b->gy + b->gz * b->gz);
        radian += 0.5 * (wa + wb) * (b->t - a->t);
    }

    SwingMetrics m;
    m.head_speed = omega_peak * r_eff;
    m.force = racket_mass * accel_peak;
    m.radian = radian;
    m.calories = (0.5 * racket_mass * m.head_speed * m.head_speed / eta) / 4184.0;
    return m;
}

std::string stroke_csv(std::span<const StrokeFeatures> features) {
    std::ostringstream os;
    os << "start,peak,end,class,peak_wrist_speed,outgoing_angle\n";
    for (const StrokeFeatures& f : features) {
        os << f.segment.start_frame << ',' << f.segment.peak_frame << ','
           << f.segment.end_frame << ',' << to_string(f.cls) << ','
           << f.peak_wrist_speed << ',';
        if (f.outgoing_angle_deg) os << *f.outgoing_angle_deg;
        os << '\n';
    }
    return os.str();
}

} // namespace shuttlesense::strokes
