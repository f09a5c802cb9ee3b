#include "shuttlesense/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <json.hpp>

#include "shuttlesense/errors.hpp"
#include "shuttlesense/ingest.hpp"
#include "shuttlesense/shuttlesim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace shuttlesense::fixture {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// ---- deterministic substreams ------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

enum StreamTag : std::uint64_t {
    kStreamOrder = 1,
    kStreamStroke = 2,
    kStreamFrameNoise = 3,
};

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag,
                          std::uint64_t index) {
    return std::mt19937_64(
        splitmix64(seed ^ splitmix64(tag ^ splitmix64(index))));
}

double clamped_normal(std::mt19937_64& rng, double sigma) {
    if (sigma <= 0.0) return 0.0;
    std::normal_distribution<double> dist(0.0, sigma);
    return std::clamp(dist(rng), -2.0 * sigma, 2.0 * sigma);
}

// ---- synthetic camera ---------------------------------------------------
// Oblique fixed camera: court length runs along image x, across-court
// position gives a small vertical depth cue, height moves the image point
// up. The floor (z = 0) restriction is affine and invertible, which is
// what the manifest homography carries.

constexpr double kCamX0 = 100.0;  // px
constexpr double kCamY0 = 500.0;  // px
constexpr double kCamLen = 80.0;  // px per meter along the court
constexpr double kCamDepth = 25.0; // px per meter across the court
constexpr double kCamHeight = 80.0; // px per meter of height

Point2 project(double court_x, double court_y, double z) {
    return {kCamX0 + kCamLen * court_y,
            kCamY0 + kCamDepth * court_x - kCamHeight * z};
}

Homography floor_homography() {
    Homography h;
    h.m = {0.0, 1.0 / kCamDepth, -kCamY0 / kCamDepth,
           1.0 / kCamLen, 0.0, -kCamX0 / kCamLen,
           0.0, 0.0, 1.0};
    return h;
}

// ---- swing curves --------------------------------------------------------

struct Key {
    double phase;
    double value;
};

// Catmull-Rom through the keyframes, endpoint tangents zero so strokes
// start and end at rest.
double sample_curve(const std::vector<Key>& keys, double phase) {
    phase = std::clamp(phase, 0.0, 1.0);
    const auto n = static_cast<int>(keys.size());
    if (phase <= keys.front().phase) return keys.front().value;
    if (phase >= keys.back().phase) return keys.back().value;
    int i = 0;
    while (i + 2 < n && keys[i + 1].phase <= phase) ++i;
    const Key& a = keys[i];
    const Key& b = keys[i + 1];
    const double h = b.phase - a.phase;
    const double t = (phase - a.phase) / h;

    const auto tangent = [&](int k) {
        if (k <= 0 || k >= n - 1) return 0.0;
        return (keys[k + 1].value - keys[k - 1].value) /
               (keys[k + 1].phase - keys[k - 1].phase);
    };
    const double m0 = tangent(i) * h;
    const double m1 = tangent(i + 1) * h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * a.value + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * b.value + (t3 - t2) * m1;
}

struct ClassParams {
    double duration_s;
    double contact_z;       // meters
    double launch_vy;       // m/s toward the far court
    double launch_vz;       // m/s up
    double omega_peak;      // rad/s, IMU gyro bump
    double accel_peak;      // m/s^2, IMU accel bump
    std::vector<Key> arm_dir;    // racket upper-arm direction, degrees
    std::vector<Key> elbow_deg;  // elbow interior angle, degrees
};

// Overhead strokes share one arc shape; timing and launch differ.
const std::vector<Key> kOverheadArmDir = {
    {0.0, 70}, {0.30, -20}, {0.45, -65}, {0.58, -95}, {0.72, -50}, {1.0, 70}};
const std::vector<Key> kOverheadElbow = {
    {0.0, 150}, {0.30, 118}, {0.45, 135}, {0.58, 176}, {0.74, 148}, {1.0, 150}};

const ClassParams& class_params(StrokeClass cls) {
    static const std::map<StrokeClass, ClassParams> table = {
        {StrokeClass::Smash,
         {0.55, 2.55, 14.0, -6.5, 38.0, 35.0, kOverheadArmDir, kOverheadElbow}},
        {StrokeClass::Clear,
         {1.00, 2.55, 10.5, 7.5, 24.0, 20.0, kOverheadArmDir, kOverheadElbow}},
        {StrokeClass::Slice,
         {1.00, 2.55, 9.0, -4.0, 22.0, 18.0, kOverheadArmDir, kOverheadElbow}},
        {StrokeClass::Lift,
         {1.00, 0.90, 8.5, 8.5, 22.0, 18.0,
          {{0.0, 70}, {0.30, 100}, {0.45, 55}, {0.55, 14}, {0.70, 45}, {1.0, 70}},
          {{0.0, 150}, {0.30, 135}, {0.55, 174}, {0.72, 150}, {1.0, 150}}}},
        {StrokeClass::Drive,
         {0.90, 1.50, 12.0, 0.8, 26.0, 22.0,
          {{0.0, 70}, {0.35, 45}, {0.52, 2}, {0.68, 38}, {1.0, 70}},
          {{0.0, 150}, {0.35, 140}, {0.52, 172}, {0.68, 150}, {1.0, 150}}}},
        {StrokeClass::Block,
         {1.10, 1.35, 7.0, 1.8, 12.0, 8.0,
          {{0.0, 70}, {0.5, 38}, {1.0, 70}},
          {{0.0, 150}, {0.5, 166}, {1.0, 150}}}},
    };
    return table.at(cls);
}

// ---- skeleton ------------------------------------------------------------

constexpr double kPlayerCourtX = 3.05;
constexpr double kPlayerCourtY = 4.40; // near half, 2.3 m from the net
constexpr double kUpperArmPx = 48.0;
constexpr double kForearmPx = 44.0;
constexpr double kThighPx = 73.0;
constexpr double kShinPx = 75.0;

Point2 polar(Point2 from, double len, double dir_deg) {
    return {from.x + len * std::cos(dir_deg * kDegToRad),
            from.y + len * std::sin(dir_deg * kDegToRad)};
}

struct PoseCurves {
    double right_arm_dir, right_elbow;
    double left_arm_dir, left_elbow;
    double right_knee, left_knee;
};

PoseCurves idle_curves() {
    return {70.0, 150.0, 110.0, 155.0, 172.0, 172.0};
}

std::array<Point2, kBodyKeypoints> build_skeleton(Point2 base,
                                                  const PoseCurves& c) {
    std::array<Point2, kBodyKeypoints> p{};
    const Point2 midhip{base.x, base.y - 145.0};
    const Point2 neck{base.x, base.y - 255.0}; // torso = 110 px

    p[MidHip] = midhip;
    p[Neck] = neck;
    p[Nose] = {neck.x + 4, neck.y - 35};
    p[REye] = {neck.x + 9, neck.y - 41};
    p[LEye] = {neck.x - 1, neck.y - 41};
    p[REar] = {neck.x + 14, neck.y - 37};
    p[LEar] = {neck.x - 6, neck.y - 37};

    p[RShoulder] = {neck.x + 20, neck.y + 6};
    p[LShoulder] = {neck.x - 20, neck.y + 6};
    p[RHip] = {midhip.x + 12, midhip.y + 2};
    p[LHip] = {midhip.x - 12, midhip.y + 2};

    // arms: forearm direction = upper arm direction + (180 - elbow angle)
    p[RElbow] = polar(p[RShoulder], kUpperArmPx, c.right_arm_dir);
    p[RWrist] = polar(p[RElbow], kForearmPx,
                      c.right_arm_dir + (180.0 - c.right_elbow));
    p[LElbow] = polar(p[LShoulder], kUpperArmPx, c.left_arm_dir);
    p[LWrist] = polar(p[LElbow], kForearmPx,
                      c.left_arm_dir - (180.0 - c.left_elbow));

    // legs: thigh straight down, shin bends backward by the knee angle
    p[RKnee] = polar(p[RHip], kThighPx, 90.0);
    p[RAnkle] = polar(p[RKnee], kShinPx, 90.0 + (180.0 - c.right_knee));
    p[LKnee] = polar(p[LHip], kThighPx, 90.0);
    p[LAnkle] = polar(p[LKnee], kShinPx, 90.0 - (180.0 - c.left_knee));

    p[RBigToe] = {p[RAnkle].x + 7, p[RAnkle].y + 6};
    p[RSmallToe] = {p[RAnkle].x + 10, p[RAnkle].y + 5};
    p[RHeel] = {p[RAnkle].x - 5, p[RAnkle].y + 5};
    p[LBigToe] = {p[LAnkle].x - 7, p[LAnkle].y + 6};
    p[LSmallToe] = {p[LAnkle].x - 10, p[LAnkle].y + 5};
    p[LHeel] = {p[LAnkle].x + 5, p[LAnkle].y + 5};
    return p;
}

// Which generator curve an injected fault perturbs.
enum class CurveTarget { RightElbow, LeftElbow, RightArmDir, LeftArmDir,
                         RightKnee, LeftKnee };

CurveTarget curve_target(const std::string& angle_name) {
    if (angle_name == "relbow") return CurveTarget::RightElbow;
    if (angle_name == "lelbow") return CurveTarget::LeftElbow;
    if (angle_name == "rshoulder") return CurveTarget::RightArmDir;
    if (angle_name == "lshoulder") return CurveTarget::LeftArmDir;
    if (angle_name == "rknee") return CurveTarget::RightKnee;
    if (angle_name == "lknee") return CurveTarget::LeftKnee;
    throw BadSpec("fixture cannot inject a fault on angle \"" + angle_name +
                  "\" (hip angles are not profile-driven)");
}

// Smooth plateau over [lo, hi]: cosine ramps at the edges, full offset in
// between, so the wrist path never jumps between adjacent frames.
double fault_window(double phase, double lo, double hi) {
    if (phase <= lo || phase >= hi) return 0.0;
    const double ramp = std::min(0.04, (hi - lo) / 4.0);
    if (phase < lo + ramp)
        return 0.5 * (1.0 - std::cos(std::numbers::pi * (phase - lo) / ramp));
    if (phase > hi - ramp)
        return 0.5 * (1.0 - std::cos(std::numbers::pi * (hi - phase) / ramp));
    return 1.0;
}

struct StrokePlan {
    StrokeClass cls;
    double start_s;
    double duration_s;
    double contact_s;
    sim::ShuttleState launch;
    double arm_jitter_deg;
    double elbow_jitter_deg;
};

} // namespace

FixtureSpec load_fixture_spec(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw BadSpec("cannot open fixture spec " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw BadSpec(std::string("fixture spec parse error: ") + e.what());
    }

    FixtureSpec spec;
    try {
        spec.seed = doc.value("seed", 0ULL);
        spec.fps = doc.value("fps", 30.0);
        spec.views = doc.value("views", 1);
        spec.landing_scatter_m = doc.value("landing_scatter_m", 0.4);
        spec.profile_jitter_deg = doc.value("profile_jitter_deg", 1.2);
        spec.keypoint_noise_px = doc.value("keypoint_noise_px", 0.4);
        spec.session_id = doc.value("session_id", std::string("fixture"));
        spec.subject_id = doc.value("subject_id", std::string("subjectA"));
        if (doc.contains("role"))
            spec.role = role_from_string(doc["role"].get<std::string>());
        const json& strokes = doc.at("strokes");
        if (strokes.contains("per_class")) {
            for (const auto& [name, count] : strokes["per_class"].items()) {
                stroke_class_from_string(name); // validates
                spec.strokes_per_class[name] = count.get<int>();
            }
        }
        if (strokes.contains("mix")) {
            std::map<std::string, double> mix;
            for (const auto& [name, p] : strokes["mix"].items()) {
                stroke_class_from_string(name);
                mix[name] = p.get<double>();
            }
            spec.class_mix = mix;
            spec.total_strokes = strokes.at("total").get<int>();
        }
        if (doc.contains("faults")) {
            for (const json& f : doc["faults"]) {
                InjectedFault fault;
                fault.angle_name = f.at("angle").get<std::string>();
                fault.cls = stroke_class_from_string(f.at("class").get<std::string>());
                fault.phase_lo = f.at("phase").at(0).get<double>();
                fault.phase_hi = f.at("phase").at(1).get<double>();
                fault.offset_deg = f.at("offset_deg").get<double>();
                spec.faults.push_back(fault);
            }
        }
    } catch (const json::exception& e) {
        throw BadSpec(std::string("fixture spec: ") + e.what());
    }
    return spec;
}

namespace {

void validate_spec(const FixtureSpec& spec) {
    if (spec.fps <= 0.0) throw BadSpec("fps must be positive");
    if (spec.views < 1 || spec.views > 3) throw BadSpec("views must be 1..3");
    for (const auto& [name, count] : spec.strokes_per_class) {
        stroke_class_from_string(name);
        if (count < 0) throw BadSpec("negative stroke count for " + name);
    }
    if (spec.class_mix) {
        double sum = 0.0;
        for (const auto& [name, p] : *spec.class_mix) {
            stroke_class_from_string(name);
            if (p < 0.0) throw BadSpec("negative mix probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw BadSpec("class mix probabilities must sum to 1");
        if (spec.total_strokes < 0) throw BadSpec("negative total_strokes");
    }
    for (const InjectedFault& f : spec.faults) {
        curve_target(f.angle_name); // validates the name
        if (!(f.phase_lo >= 0.0 && f.phase_lo < f.phase_hi && f.phase_hi <= 1.0))
            throw BadSpec("fault phase span must satisfy 0 <= lo < hi <= 1");
        if (!std::isfinite(f.offset_deg)) throw BadSpec("fault offset not finite");
    }
    if (spec.landing_scatter_m < 0.0 || spec.profile_jitter_deg < 0.0 ||
        spec.keypoint_noise_px < 0.0)
        throw BadSpec("scatter and jitter must be non-negative");
}

std::vector<StrokeClass> stroke_order(const FixtureSpec& spec) {
    std::vector<StrokeClass> order;
    if (spec.class_mix) {
        // inverse-CDF sampling, per-stroke substream
        std::vector<std::pair<StrokeClass, double>> cdf;
        double acc = 0.0;
        for (StrokeClass c : kAllStrokeClasses) {
            const auto it = spec.class_mix->find(to_string(c));
            if (it == spec.class_mix->end()) continue;
            acc += it->second;
            cdf.emplace_back(c, acc);
        }
        for (int i = 0; i < spec.total_strokes; ++i) {
            auto rng = substream(spec.seed, kStreamOrder, i);
            const double u =
                std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            StrokeClass pick = cdf.back().first;
            for (const auto& [c, edge] : cdf)
                if (u <= edge) {
                    pick = c;
                    break;
                }
            order.push_back(pick);
        }
        return order;
    }
    for (StrokeClass c : kAllStrokeClasses) {
        const auto it = spec.strokes_per_class.find(to_string(c));
        if (it == spec.strokes_per_class.end()) continue;
        order.insert(order.end(), it->second, c);
    }
    // deterministic shuffle so classes interleave
    auto rng = substream(spec.seed, kStreamOrder, 0x5151);
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) {
        std::uniform_int_distribution<int> dist(0, i);
        std::swap(order[i], order[dist(rng)]);
    }
    return order;
}

} // namespace

GroundTruth generate_fixture_session(const FixtureSpec& spec,
                                     const fs::path& out_dir) {
    validate_spec(spec);
    fs::create_directories(out_dir);

    const double fps = spec.fps;
    const double lead_s = 1.0;
    const double rest_s = 1.3; // long enough for every flight to land
    const double tail_s = 1.0;

    // -- plan strokes -------------------------------------------------------
    const std::vector<StrokeClass> order = stroke_order(spec);
    std::vector<StrokePlan> plans;
    double cursor = lead_s;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const ClassParams& cp = class_params(order[i]);
        auto rng = substream(spec.seed, kStreamStroke, i);
        StrokePlan plan;
        plan.cls = order[i];
        plan.start_s = cursor;
        plan.duration_s = cp.duration_s * (1.0 + clamped_normal(rng, 0.02));
        plan.contact_s = plan.start_s + 0.5 * plan.duration_s;
        plan.arm_jitter_deg = clamped_normal(rng, spec.profile_jitter_deg);
        plan.elbow_jitter_deg = clamped_normal(rng, spec.profile_jitter_deg);
        plan.launch.x = kPlayerCourtX + clamped_normal(rng, 0.05);
        plan.launch.y = kPlayerCourtY + 0.25;
        plan.launch.z = cp.contact_z;
        plan.launch.vx = clamped_normal(rng, spec.landing_scatter_m);
        plan.launch.vy = cp.launch_vy + clamped_normal(rng, spec.landing_scatter_m);
        plan.launch.vz = cp.launch_vz +
                         clamped_normal(rng, 0.5 * spec.landing_scatter_m);
        plans.push_back(plan);
        cursor += plan.duration_s + rest_s;
    }
    const double session_s = cursor + tail_s;
    const int frame_count = static_cast<int>(std::ceil(session_s * fps));

    // -- simulate flights ---------------------------------------------------
    const sim::DragParams drag;
    const double sim_dt = 0.001;
    struct Flight {
        int contact_frame;
        std::vector<Point2> airborne_px; // one per frame after contact
        int landing_frame;
        Point2 landing_court;
        double flight_time;
    };
    std::vector<Flight> flights;
    GroundTruth truth;
    truth.faults = spec.faults;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        const StrokePlan& plan = plans[i];
        const auto landing =
            sim::simulate_to_landing(plan.launch, drag, sim_dt, 10.0);
        Flight fl;
        fl.contact_frame = static_cast<int>(std::lround(plan.contact_s * fps));
        fl.flight_time = landing.flight_time;
        fl.landing_court = landing.point;
        fl.landing_frame =
            fl.contact_frame +
            static_cast<int>(std::floor(landing.flight_time * fps)) + 1;
        sim::ShuttleState s = plan.launch;
        const double frame_dt = 1.0 / fps;
        const int sub = std::max(1, static_cast<int>(std::ceil(frame_dt / sim_dt)));
        for (double t = 0.0; t + frame_dt <= landing.flight_time;) {
            for (int k = 0; k < sub; ++k)
                s = sim::step_rk4(s, drag, frame_dt / sub);
            t += frame_dt;
            fl.airborne_px.push_back(project(s.x, s.y, std::max(0.0, s.z)));
        }
        flights.push_back(fl);

        GroundTruthStroke gt;
        gt.index = static_cast<int>(i);
        gt.cls = plan.cls;
        gt.start_frame = static_cast<int>(std::lround(plan.start_s * fps));
        gt.contact_frame = fl.contact_frame;
        gt.end_frame =
            static_cast<int>(std::lround((plan.start_s + plan.duration_s) * fps));
        gt.origin = {kPlayerCourtX, kPlayerCourtY};
        gt.landing = landing.point;
        truth.strokes.push_back(gt);
    }

    // -- pose frames per view ------------------------------------------------
    const Point2 base_px = project(kPlayerCourtX, kPlayerCourtY, 0.0);

    SessionManifest manifest;
    manifest.session_id = spec.session_id;
    manifest.subject_id = spec.subject_id;
    manifest.role = spec.role;
    manifest.handedness = Handedness::Right;
    manifest.fps = fps;

    for (int view = 0; view < spec.views; ++view) {
        const std::string view_id = "view" + std::to_string(view);
        const fs::path pose_dir = out_dir / "poses" / view_id;
        fs::create_directories(pose_dir);

        // secondary cameras: mild affine change, pose only
        const double scale = std::pow(0.92, view);
        const double off_x = 30.0 * view;
        const double off_y = 12.0 * view;

        for (int f = 0; f < frame_count; ++f) {
            const double t = f / fps;
            PoseCurves curves = idle_curves();
            for (std::size_t i = 0; i < plans.size(); ++i) {
                const StrokePlan& plan = plans[i];
                if (t < plan.start_s || t > plan.start_s + plan.duration_s)
                    continue;
                const double phase = (t - plan.start_s) / plan.duration_s;
                const ClassParams& cp = class_params(plan.cls);
                curves.right_arm_dir =
                    sample_curve(cp.arm_dir, phase) + plan.arm_jitter_deg;
                curves.right_elbow =
                    sample_curve(cp.elbow_deg, phase) + plan.elbow_jitter_deg;
                curves.right_knee = sample_curve(
                    {{0.0, 172}, {0.5, 158}, {1.0, 172}}, phase);
                curves.left_knee = curves.right_knee;
                for (const InjectedFault& fault : spec.faults) {
                    if (fault.cls != plan.cls) continue;
                    const double w =
                        fault.offset_deg *
                        fault_window(phase, fault.phase_lo, fault.phase_hi);
                    switch (curve_target(fault.angle_name)) {
                        case CurveTarget::RightElbow: curves.right_elbow += w; break;
                        case CurveTarget::LeftElbow: curves.left_elbow += w; break;
                        case CurveTarget::RightArmDir: curves.right_arm_dir += w; break;
                        case CurveTarget::LeftArmDir: curves.left_arm_dir += w; break;
                        case CurveTarget::RightKnee: curves.right_knee += w; break;
                        case CurveTarget::LeftKnee: curves.left_knee += w; break;
                    }
                }
                break;
            }

            auto points = build_skeleton(base_px, curves);
            auto noise = substream(spec.seed, kStreamFrameNoise, f);
            SkeletonFrame frame;
            frame.frame_index = f;
            frame.view_id = view_id;
            for (int k = 0; k < kBodyKeypoints; ++k) {
                const double nx = clamped_normal(noise, spec.keypoint_noise_px);
                const double ny = clamped_normal(noise, spec.keypoint_noise_px);
                frame.keypoints[k] = {scale * (points[k].x + nx) + off_x,
                                      scale * (points[k].y + ny) + off_y, true};
            }
            char name[64];
            std::snprintf(name, sizeof(name), "frame_%06d_keypoints.json", f);
            ingest::write_pose_frame(pose_dir / name, frame);
        }

        ViewEntry entry;
        entry.view_id = view_id;
        entry.camera_angle_deg = 120.0 * view;
        entry.pose_dir = "poses/" + view_id;
        if (view == 0) {
            entry.trajectory_path = "trajectory_view0.csv";
            entry.imu_path = "imu_view0.csv";
            entry.trajectory_space = TrackSpace::Pixel;
            entry.homography = floor_homography();
            entry.imu_t0_offset_s = 0.0;
        }
        manifest.views.push_back(entry);
    }

    // -- trajectory (view 0), one row per frame ------------------------------
    TrajectoryTrack track;
    track.space = TrackSpace::Pixel;
    track.samples.resize(frame_count);
    for (int f = 0; f < frame_count; ++f)
        track.samples[f] = {f, false, 0.0, 0.0};
    for (const Flight& fl : flights) {
        for (std::size_t k = 0; k < fl.airborne_px.size(); ++k) {
            const int f = fl.contact_frame + 1 + static_cast<int>(k);
            if (f < 0 || f >= frame_count) continue;
            track.samples[f] = {f, true, fl.airborne_px[k].x,
                                fl.airborne_px[k].y};
        }
        // grounded sample exactly at the landing point so the homography
        // recovers it without a height error
        if (fl.landing_frame >= 0 && fl.landing_frame < frame_count) {
            const Point2 px =
                project(fl.landing_court.x, fl.landing_court.y, 0.0);
            track.samples[fl.landing_frame] = {fl.landing_frame, true, px.x, px.y};
        }
    }
    ingest::write_trajectory(out_dir / "trajectory_view0.csv", track);

    // -- IMU (view 0), 100 Hz -------------------------------------------------
    ImuTrace imu;
    const double imu_rate = 100.0;
    const int imu_samples = static_cast<int>(std::ceil(session_s * imu_rate));
    for (int i = 0; i < imu_samples; ++i) {
        const double t = i / imu_rate;
        ImuSample s;
        s.t = t;
        s.az = 9.81;
        for (const StrokePlan& plan : plans) {
            if (t < plan.start_s || t > plan.start_s + plan.duration_s) continue;
            const double phase = (t - plan.start_s) / plan.duration_s;
            const ClassParams& cp = class_params(plan.cls);
            const double bump = std::sin(std::numbers::pi * phase);
            s.gz = cp.omega_peak * bump * bump;
            s.az = 9.81 + cp.accel_peak * bump * bump;
            break;
        }
        imu.samples.push_back(s);
    }
    ingest::write_imu(out_dir / "imu_view0.csv", imu);

    ingest::write_manifest(out_dir / "manifest.json", manifest);

    // -- ground truth sidecar --------------------------------------------------
    json strokes_json = json::array();
    for (const GroundTruthStroke& gt : truth.strokes)
        strokes_json.push_back({{"index", gt.index},
                                {"class", to_string(gt.cls)},
                                {"start_frame", gt.start_frame},
                                {"contact_frame", gt.contact_frame},
                                {"end_frame", gt.end_frame},
                                {"origin", {gt.origin.x, gt.origin.y}},
                                {"landing", {gt.landing.x, gt.landing.y}}});
    json faults_json = json::array();
    for (const InjectedFault& f : spec.faults)
        faults_json.push_back({{"angle", f.angle_name},
                               {"class", to_string(f.cls)},
                               {"phase", {f.phase_lo, f.phase_hi}},
                               {"offset_deg", f.offset_deg}});
    json sidecar = {{"seed", spec.seed},
                    {"fps", fps},
                    {"strokes", strokes_json},
                    {"faults", faults_json}};
    std::ofstream out(out_dir / "ground_truth.json", std::ios::binary);
    if (!out) throw Error("cannot write ground_truth.json");
    out << sidecar.dump(2) << '\n';

    return truth;
}

GroundTruth load_ground_truth(const fs::path& session_dir) {
    std::ifstream in(session_dir / "ground_truth.json");
    if (!in) throw Error("cannot open ground_truth.json in " +
                         session_dir.string());
    json doc;
    in >> doc;
    GroundTruth truth;
    for (const json& s : doc.at("strokes")) {
        GroundTruthStroke gt;
        gt.index = s.at("index").get<int>();
        gt.cls = stroke_class_from_string(s.at("class").get<std::string>());
        gt.start_frame = s.at("start_frame").get<int>();
        gt.contact_frame = s.at("contact_frame").get<int>();
        gt.end_frame = s.at("end_frame").get<int>();
        gt.origin = {s.at("origin")[0].get<double>(), s.at("origin")[1].get<double>()};
        gt.landing = {s.at("landing")[0].get<double>(), s.at("landing")[1].get<double>()};
        truth.strokes.push_back(gt);
    }
    for (const json& f : doc.at("faults")) {
        InjectedFault fault;
        fault.angle_name = f.at("angle").get<std::string>();
        fault.cls = stroke_class_from_string(f.at("class").get<std::string>());
        fault.phase_lo = f.at("phase")[0].get<double>();
        fault.phase_hi = f.at("phase")[1].get<double>();
        fault.offset_deg = f.at("offset_deg").get<double>();
        truth.faults.push_back(fault);
    }
    return truth;
}

} // namespace shuttlesense::fixture
