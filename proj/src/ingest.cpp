#include "shuttlesense/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "shuttlesense/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace shuttlesense::ingest {

namespace {

constexpr const char* kPoseSuffix = "_keypoints.json";

// "<prefix>_<frameidx>_keypoints.json" -> frame index, or nullopt when the
// name does not follow the convention.
std::optional<int> frame_index_from_name(const std::string& name) {
    if (name.size() <= std::string(kPoseSuffix).size()) return std::nullopt;
    if (!name.ends_with(kPoseSuffix)) return std::nullopt;
    const std::string stem =
        name.substr(0, name.size() - std::string(kPoseSuffix).size());
    const auto sep = stem.find_last_of('_');
    if (sep == std::string::npos || sep + 1 >= stem.size()) return std::nullopt;
    const std::string digits = stem.substr(sep + 1);
    if (!std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
        return std::nullopt;
    try {
        return std::stoi(digits);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

double bbox_area(const std::vector<double>& kp) {
    double minx = std::numeric_limits<double>::infinity(), maxx = -minx;
    double miny = minx, maxy = -minx;
    bool any = false;
    for (std::size_t i = 0; i + 2 < kp.size(); i += 3) {
        if (kp[i + 2] <= 0.0) continue;
        minx = std::min(minx, kp[i]);
        maxx = std::max(maxx, kp[i]);
        miny = std::min(miny, kp[i + 1]);
        maxy = std::max(maxy, kp[i + 1]);
        any = true;
    }
    return any ? (maxx - minx) * (maxy - miny) : 0.0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

bool ValidationReport::has_failure() const {
    return std::any_of(checks.begin(), checks.end(), [](const auto& c) {
        return c.status == CheckStatus::Fail;
    });
}

std::vector<std::string> ValidationReport::warnings() const {
    std::vector<std::string> out;
    for (const ValidationCheck& c : checks)
        if (c.status == CheckStatus::Warn) out.push_back(c.message);
    return out;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const ValidationCheck& c : checks) {
        const char* tag = c.status == CheckStatus::Pass   ? "pass"
                          : c.status == CheckStatus::Warn ? "warn"
                                                          : "fail";
        os << tag << "  " << c.name;
        if (!c.message.empty()) os << ": " << c.message;
        os << '\n';
    }
    return os.str();
}

SkeletonFrame parse_pose_file(const fs::path& file, double confidence_floor,
                              int frame_index, const std::string& view_id) {
    std::ifstream in(file);
    if (!in) throw MalformedFile(file.string(), "cannot open");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw MalformedFile(file.string(), e.what());
    }
    if (!doc.is_object() || !doc.contains("people") || !doc["people"].is_array())
        throw MalformedFile(file.string(), "missing \"people\" array");

    SkeletonFrame frame;
    frame.frame_index = frame_index;
    frame.view_id = view_id;

    const json& people = doc["people"];
    if (people.empty()) return frame; // nobody detected: all missing

    // Largest keypoint bounding box wins when several people are present.
    const json* chosen = nullptr;
    double best_area = -1.0;
    for (const json& person : people) {
        if (!person.contains("pose_keypoints_2d") ||
            !person["pose_keypoints_2d"].is_array())
            throw MalformedFile(file.string(), "missing pose_keypoints_2d");
        const auto& kp = person["pose_keypoints_2d"];
        if (kp.size() != static_cast<std::size_t>(kBodyKeypoints * 3))
            throw BadKeypointCount(file.string() + ": expected " +
                                   std::to_string(kBodyKeypoints * 3) +
                                   " values, got " + std::to_string(kp.size()));
        std::vector<double> vals;
        vals.reserve(kp.size());
        for (const json& v : kp) {
            if (!v.is_number())
                throw MalformedFile(file.string(), "non-numeric keypoint");
            vals.push_back(v.get<double>());
        }
        const double area = bbox_area(vals);
        if (area > best_area) {
            best_area = area;
            chosen = &person;
        }
    }

    const auto& kp = (*chosen)["pose_keypoints_2d"];
    for (int i = 0; i < kBodyKeypoints; ++i) {
        const double x = kp[3 * i].get<double>();
        const double y = kp[3 * i + 1].get<double>();
        const double c = kp[3 * i + 2].get<double>();
        // (0,0,0) is the upstream "not detected" convention.
        const bool detected = !(x == 0.0 && y == 0.0 && c == 0.0);
        frame.keypoints[i] =
            Keypoint{x, y, detected && c >= confidence_floor};
    }
    return frame;
}

std::vector<SkeletonFrame> parse_pose_frames(const fs::path& dir,
                                             double confidence_floor) {
    if (!fs::is_directory(dir))
        throw MalformedFile(dir.string(), "not a directory");
    std::map<int, fs::path> by_index;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        const auto idx = frame_index_from_name(name);
        if (!idx) {
            if (name.ends_with(".json"))
                throw MalformedFile(entry.path().string(),
                                    "filename does not embed a frame index");
            continue;
        }
        if (!by_index.emplace(*idx, entry.path()).second)
            throw MalformedFile(entry.path().string(),
                                "duplicate frame index " + std::to_string(*idx));
    }
    if (by_index.empty()) throw EmptySession("no pose frames in " + dir.string());

    std::vector<SkeletonFrame> frames;
    frames.reserve(by_index.size());
    for (const auto& [idx, path] : by_index)
        frames.push_back(parse_pose_file(path, confidence_floor, idx));
    return frames;
}

TrajectoryTrack parse_trajectory(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile(path.string(), "cannot open");
    TrajectoryTrack track;
    std::string line;
    int line_no = 0;
    int last_frame = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (line_no == 1) {
            if (!line.starts_with("Frame,Visibility,X,Y"))
                throw MalformedFile(path.string(), "bad trajectory header");
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) throw MalformedRow(path.string(), line_no);
        TrajectorySample s;
        try {
            s.frame_index = std::stoi(fields[0]);
            const int vis = std::stoi(fields[1]);
            if (vis != 0 && vis != 1) throw MalformedRow(path.string(), line_no);
            s.visible = vis == 1;
            s.x = std::stod(fields[2]);
            s.y = std::stod(fields[3]);
        } catch (const MalformedRow&) {
            throw;
        } catch (const std::exception&) {
            throw MalformedRow(path.string(), line_no);
        }
        if (s.frame_index <= last_frame)
            throw NonMonotoneFrames(path.string() + ": frame " +
                                    std::to_string(s.frame_index) + " after " +
                                    std::to_string(last_frame));
        last_frame = s.frame_index;
        track.samples.push_back(s);
    }
    return track;
}

ImuTrace parse_imu(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile(path.string(), "cannot open");
    ImuTrace trace;
    std::string line;
    int line_no = 0;
    double last_t = -std::numeric_limits<double>::infinity();
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (line_no == 1) {
            if (!line.starts_with("t,ax,ay,az,gx,gy,gz"))
                throw MalformedFile(path.string(), "bad IMU header");
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 7) throw MalformedRow(path.string(), line_no);
        ImuSample s;
        double* dst[7] = {&s.t, &s.ax, &s.ay, &s.az, &s.gx, &s.gy, &s.gz};
        try {
            for (int i = 0; i < 7; ++i) *dst[i] = std::stod(fields[i]);
        } catch (const std::exception&) {
            throw MalformedRow(path.string(), line_no);
        }
        for (int i = 0; i < 7; ++i)
            if (!std::isfinite(*dst[i])) throw MalformedRow(path.string(), line_no);
        if (s.t <= last_t)
            throw NonMonotoneFrames(path.string() + ": t not increasing at line " +
                                    std::to_string(line_no));
        last_t = s.t;
        trace.samples.push_back(s);
    }
    return trace;
}

SessionManifest parse_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile(path.string(), "cannot open");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw MalformedFile(path.string(), e.what());
    }
    SessionManifest m;
    try {
        m.session_id = doc.at("session_id").get<std::string>();
        m.subject_id = doc.at("subject_id").get<std::string>();
        m.role = role_from_string(doc.at("role").get<std::string>());
        if (doc.contains("handedness"))
            m.handedness =
                handedness_from_string(doc["handedness"].get<std::string>());
        m.fps = doc.value("fps", 0.0);
        for (const json& v : doc.at("views")) {
            ViewEntry view;
            view.view_id = v.at("view_id").get<std::string>();
            view.camera_angle_deg = v.at("camera_angle_deg").get<double>();
            view.pose_dir = v.at("pose_dir").get<std::string>();
            if (v.contains("trajectory_path") && !v["trajectory_path"].is_null())
                view.trajectory_path = v["trajectory_path"].get<std::string>();
            if (v.contains("imu_path") && !v["imu_path"].is_null())
                view.imu_path = v["imu_path"].get<std::string>();
            if (v.contains("trajectory_space")) {
                const std::string space = v["trajectory_space"].get<std::string>();
                if (space == "pixel") view.trajectory_space = TrackSpace::Pixel;
                else if (space == "court") view.trajectory_space = TrackSpace::Court;
                else throw MalformedFile(path.string(),
                                         "bad trajectory_space: " + space);
            }
            if (v.contains("homography")) {
                const auto& h = v["homography"];
                if (!h.is_array() || h.size() != 9)
                    throw MalformedFile(path.string(), "homography must be 9 numbers");
                for (int i = 0; i < 9; ++i) view.homography.m[i] = h[i].get<double>();
            }
            view.imu_t0_offset_s = v.value("imu_t0_offset_s", 0.0);
            m.views.push_back(std::move(view));
        }
    } catch (const json::exception& e) {
        throw MalformedFile(path.string(), e.what());
    }
    if (m.views.empty() || m.views.size() > 3)
        throw MalformedFile(path.string(), "manifest needs 1..3 views");
    for (std::size_t i = 0; i < m.views.size(); ++i)
        for (std::size_t j = i + 1; j < m.views.size(); ++j)
            if (m.views[i].camera_angle_deg == m.views[j].camera_angle_deg)
                throw MalformedFile(path.string(), "duplicate camera angles");
    return m;
}

ValidationReport validate_session(
    const SessionManifest& manifest,
    std::span<const std::vector<SkeletonFrame>> frames_per_view, double v_min,
    std::span<const int> tracked_joints) {
    ValidationReport report;

    // (a) three views, mutually 120 degrees apart
    if (manifest.views.size() == 3) {
        std::vector<double> angles;
        for (const ViewEntry& v : manifest.views)
            angles.push_back(std::fmod(std::fmod(v.camera_angle_deg, 360.0) + 360.0, 360.0));
        std::sort(angles.begin(), angles.end());
        const double tol = 5.0;
        const bool mutual =
            std::abs(angles[1] - angles[0] - 120.0) <= tol &&
            std::abs(angles[2] - angles[1] - 120.0) <= tol;
        if (mutual)
            report.checks.push_back({"views", CheckStatus::Pass,
                                     "3 views at mutual 120 degrees"});
        else
            report.checks.push_back({"views", CheckStatus::Warn,
                                     "3 views but not at mutual 120 degrees"});
    } else {
        report.checks.push_back(
            {"views", CheckStatus::Warn,
             manifest.views.size() == 1
                 ? "single-view session"
                 : std::to_string(manifest.views.size()) + "-view session"});
    }

    // (b) per-view visibility of the tracked joints
    for (std::size_t vi = 0; vi < frames_per_view.size(); ++vi) {
        const auto& frames = frames_per_view[vi];
        const std::string view_id =
            vi < manifest.views.size() ? manifest.views[vi].view_id
                                       : std::to_string(vi);
        if (frames.empty()) {
            report.checks.push_back({"visibility/" + view_id, CheckStatus::Fail,
                                     "no frames"});
            continue;
        }
        std::string worst_joint;
        double worst_ratio = 1.0;
        for (int joint : tracked_joints) {
            int present = 0;
            for (const SkeletonFrame& f : frames)
                if (f.keypoints[joint].present) ++present;
            const double ratio = static_cast<double>(present) / frames.size();
            if (ratio < worst_ratio) {
                worst_ratio = ratio;
                worst_joint = std::to_string(joint);
            }
        }
        std::ostringstream msg;
        msg.precision(3);
        if (worst_ratio >= v_min) {
            msg << "all tracked joints visible >= " << v_min;
            report.checks.push_back(
                {"visibility/" + view_id, CheckStatus::Pass, msg.str()});
        } else {
            msg << "joint " << worst_joint << " visible in " << worst_ratio * 100
                << "% of frames (need " << v_min * 100 << "%)";
            report.checks.push_back(
                {"visibility/" + view_id, CheckStatus::Fail, msg.str()});
        }
    }

    // (c) frame rate declared
    if (manifest.fps > 0.0)
        report.checks.push_back({"fps", CheckStatus::Pass,
                                 "declared " + std::to_string(manifest.fps)});
    else
        report.checks.push_back({"fps", CheckStatus::Fail, "fps not declared"});

    return report;
}

void write_pose_frame(const fs::path& file, const SkeletonFrame& frame) {
    json kp = json::array();
    for (const Keypoint& k : frame.keypoints) {
        if (k.present) {
            kp.push_back(k.x);
            kp.push_back(k.y);
            kp.push_back(1.0);
        } else {
            kp.push_back(0.0);
            kp.push_back(0.0);
            kp.push_back(0.0);
        }
    }
    json doc = {{"version", 1.3},
                {"people", json::array({{{"pose_keypoints_2d", kp}}})}};
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error("cannot write " + file.string());
    out << doc.dump() << '\n';
}

void write_trajectory(const fs::path& path, const TrajectoryTrack& track) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "Frame,Visibility,X,Y\n";
    char buf[128];
    for (const TrajectorySample& s : track.samples) {
        if (s.visible)
            std::snprintf(buf, sizeof(buf), "%d,1,%.9g,%.9g\n", s.frame_index,
                          s.x, s.y);
        else
            std::snprintf(buf, sizeof(buf), "%d,0,0,0\n", s.frame_index);
        out << buf;
    }
}

void write_imu(const fs::path& path, const ImuTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "t,ax,ay,az,gx,gy,gz\n";
    char buf[256];
    for (const ImuSample& s : trace.samples) {
        std::snprintf(buf, sizeof(buf),
                      "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", s.t, s.ax, s.ay,
                      s.az, s.gx, s.gy, s.gz);
        out << buf;
    }
}

void write_manifest(const fs::path& path, const SessionManifest& manifest) {
    json views = json::array();
    for (const ViewEntry& v : manifest.views) {
        json view = {{"view_id", v.view_id},
                     {"camera_angle_deg", v.camera_angle_deg},
                     {"pose_dir", v.pose_dir}};
        if (v.trajectory_path) view["trajectory_path"] = *v.trajectory_path;
        if (v.imu_path) view["imu_path"] = *v.imu_path;
        view["trajectory_space"] =
            v.trajectory_space == TrackSpace::Pixel ? "pixel" : "court";
        if (!v.homography.is_identity())
            view["homography"] = v.homography.m;
        if (v.imu_t0_offset_s != 0.0) view["imu_t0_offset_s"] = v.imu_t0_offset_s;
        views.push_back(view);
    }
    json doc = {{"session_id", manifest.session_id},
                {"subject_id", manifest.subject_id},
                {"role", to_string(manifest.role)},
                {"handedness", to_string(manifest.handedness)},
                {"fps", manifest.fps},
                {"views", views}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

} // namespace shuttlesense::ingest
