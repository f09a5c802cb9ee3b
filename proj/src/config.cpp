#include "shuttlesense/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "shuttlesense/errors.hpp"

using nlohmann::json;

namespace shuttlesense {

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!known.contains(key))
            throw BadConfig("unknown config key \"" + key + "\" in " + where);
}

double get_in_range(const json& obj, const std::string& key, double fallback,
                    double lo, double hi) {
    const double v = obj.value(key, fallback);
    if (!(v >= lo && v <= hi))
        throw BadConfig("config key \"" + key + "\" out of range [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

} // namespace

int Config::max_gap_frames(double fps) const {
    return static_cast<int>(std::lround(kinematics.max_gap_s * fps));
}

int Config::smooth_window_frames(double fps) const {
    const int w = static_cast<int>(std::lround(kinematics.smooth_window_s * fps));
    if (w <= 1) return 1;
    return w % 2 == 1 ? w : w + 1;
}

Config Config::defaults() {
    Config cfg;
    cfg.kinematics.angles = shuttlesense::kinematics::default_angle_set();
    return cfg;
}

Config Config::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw BadConfig(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw BadConfig("config root must be an object");

    Config cfg = defaults();
    reject_unknown(doc,
                   {"ingest", "kinematics", "strokes", "reference", "court",
                    "sim", "report"},
                   "config root");

    if (doc.contains("ingest")) {
        const json& j = doc["ingest"];
        reject_unknown(j, {"confidence_floor", "v_min"}, "ingest");
        cfg.ingest.confidence_floor =
            get_in_range(j, "confidence_floor", cfg.ingest.confidence_floor, 0, 1);
        cfg.ingest.v_min = get_in_range(j, "v_min", cfg.ingest.v_min, 0, 1);
    }
    if (doc.contains("kinematics")) {
        const json& j = doc["kinematics"];
        reject_unknown(j, {"max_gap_s", "smooth_window_s", "angles"},
                       "kinematics");
        cfg.kinematics.max_gap_s =
            get_in_range(j, "max_gap_s", cfg.kinematics.max_gap_s, 0, 10);
        cfg.kinematics.smooth_window_s = get_in_range(
            j, "smooth_window_s", cfg.kinematics.smooth_window_s, 0, 10);
        if (j.contains("angles")) {
            cfg.kinematics.angles.clear();
            for (const json& a : j["angles"]) {
                reject_unknown(a, {"name", "a", "b", "c"}, "kinematics.angles");
                shuttlesense::kinematics::AngleDefinition def;
                def.name = a.at("name").get<std::string>();
                def.a = a.at("a").get<int>();
                def.b = a.at("b").get<int>();
                def.c = a.at("c").get<int>();
                const auto in_range = [](int v) { return v >= 0 && v < kBodyKeypoints; };
                if (!in_range(def.a) || !in_range(def.b) || !in_range(def.c) ||
                    def.a == def.b || def.b == def.c || def.a == def.c)
                    throw BadConfig("angle definition \"" + def.name +
                                    "\" needs three distinct keypoints in 0..24");
                cfg.kinematics.angles.push_back(def);
            }
            if (cfg.kinematics.angles.empty())
                throw BadConfig("angle set must not be empty");
        }
    }
    if (doc.contains("strokes")) {
        const json& j = doc["strokes"];
        reject_unknown(j,
                       {"s_trigger", "min_gap_s", "speed_fast", "speed_slow",
                        "r_eff", "racket_mass", "eta"},
                       "strokes");
        cfg.strokes.s_trigger =
            get_in_range(j, "s_trigger", cfg.strokes.s_trigger, 1e-9, 1e9);
        cfg.strokes.min_gap_s =
            get_in_range(j, "min_gap_s", cfg.strokes.min_gap_s, 0, 60);
        cfg.strokes.speed_fast =
            get_in_range(j, "speed_fast", cfg.strokes.speed_fast, 0, 1e9);
        cfg.strokes.speed_slow =
            get_in_range(j, "speed_slow", cfg.strokes.speed_slow, 0, 1e9);
        if (cfg.strokes.speed_slow > cfg.strokes.speed_fast)
            throw BadConfig("speed_slow must not exceed speed_fast");
        cfg.strokes.r_eff = get_in_range(j, "r_eff", cfg.strokes.r_eff, 1e-9, 10);
        cfg.strokes.racket_mass =
            get_in_range(j, "racket_mass", cfg.strokes.racket_mass, 1e-9, 10);
        cfg.strokes.eta = get_in_range(j, "eta", cfg.strokes.eta, 1e-9, 1);
    }
    if (doc.contains("reference")) {
        const json& j = doc["reference"];
        reject_unknown(j, {"p_lo", "p_hi", "n_min", "d_norm", "hard_limits"},
                       "reference");
        cfg.reference.p_lo = get_in_range(j, "p_lo", cfg.reference.p_lo, 0, 100);
        cfg.reference.p_hi = get_in_range(j, "p_hi", cfg.reference.p_hi, 0, 100);
        if (cfg.reference.p_lo >= cfg.reference.p_hi)
            throw BadConfig("p_lo must be below p_hi");
        cfg.reference.n_min =
            static_cast<int>(get_in_range(j, "n_min", cfg.reference.n_min, 1, 1e9));
        cfg.reference.d_norm =
            get_in_range(j, "d_norm", cfg.reference.d_norm, 1e-9, 180);
        if (j.contains("hard_limits")) {
            for (const auto& [angle, lim] : j["hard_limits"].items()) {
                reject_unknown(lim, {"min_deg", "max_deg"}, "hard_limits");
                reference::HardLimit hl;
                hl.min_deg = lim.value("min_deg", 0.0);
                hl.max_deg = lim.value("max_deg", 180.0);
                if (hl.min_deg > hl.max_deg)
                    throw BadConfig("hard limit min above max for " + angle);
                cfg.reference.hard_limits[angle] = hl;
            }
        }
    }
    if (doc.contains("court")) {
        const json& j = doc["court"];
        reject_unknown(
            j, {"sigma", "amplitude", "resolution", "grid_rows", "grid_cols"},
            "court");
        cfg.court.sigma = get_in_range(j, "sigma", cfg.court.sigma, 1e-9, 100);
        cfg.court.amplitude =
            get_in_range(j, "amplitude", cfg.court.amplitude, 1e-9, 1e9);
        cfg.court.resolution =
            get_in_range(j, "resolution", cfg.court.resolution, 1e-4, 10);
        cfg.court.grid_rows =
            static_cast<int>(get_in_range(j, "grid_rows", cfg.court.grid_rows, 1, 100));
        cfg.court.grid_cols =
            static_cast<int>(get_in_range(j, "grid_cols", cfg.court.grid_cols, 1, 100));
    }
    if (doc.contains("sim")) {
        const json& j = doc["sim"];
        reject_unknown(j, {"v_t", "g", "dt", "t_max"}, "sim");
        cfg.sim.v_t = get_in_range(j, "v_t", cfg.sim.v_t, 1e-9, 1e3);
        cfg.sim.g = get_in_range(j, "g", cfg.sim.g, 1e-9, 1e3);
        cfg.sim.dt = get_in_range(j, "dt", cfg.sim.dt, 1e-9, 1);
        cfg.sim.t_max = get_in_range(j, "t_max", cfg.sim.t_max, 1e-9, 1e6);
    }
    if (doc.contains("report")) {
        const json& j = doc["report"];
        reject_unknown(j, {"top_k", "fault_threshold_deg"}, "report");
        cfg.report.top_k =
            static_cast<int>(get_in_range(j, "top_k", cfg.report.top_k, 0, 1e6));
        cfg.report.fault_threshold_deg = get_in_range(
            j, "fault_threshold_deg", cfg.report.fault_threshold_deg, 0, 180);
    }
    return cfg;
}

Config Config::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw BadConfig("cannot open config " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_json_text(text);
}

canon::Object Config::echo() const {
    canon::Object ingest_o{{"confidence_floor", ingest.confidence_floor},
                           {"v_min", ingest.v_min}};
    canon::Array angle_arr;
    for (const auto& a : kinematics.angles)
        angle_arr.push_back(canon::Object{
            {"name", a.name}, {"a", a.a}, {"b", a.b}, {"c", a.c}});
    canon::Object kin_o{{"max_gap_s", kinematics.max_gap_s},
                        {"smooth_window_s", kinematics.smooth_window_s},
                        {"angles", std::move(angle_arr)}};
    canon::Object strokes_o{
        {"s_trigger", strokes.s_trigger},   {"min_gap_s", strokes.min_gap_s},
        {"speed_fast", strokes.speed_fast}, {"speed_slow", strokes.speed_slow},
        {"r_eff", strokes.r_eff},           {"racket_mass", strokes.racket_mass},
        {"eta", strokes.eta}};
    canon::Object hard;
    for (const auto& [angle, hl] : reference.hard_limits)
        hard.emplace(angle, canon::Object{{"min_deg", hl.min_deg},
                                          {"max_deg", hl.max_deg}});
    canon::Object ref_o{{"p_lo", reference.p_lo},
                        {"p_hi", reference.p_hi},
                        {"n_min", reference.n_min},
                        {"d_norm", reference.d_norm},
                        {"hard_limits", std::move(hard)}};
    canon::Object court_o{{"sigma", court.sigma},
                          {"amplitude", court.amplitude},
                          {"resolution", court.resolution},
                          {"grid_rows", court.grid_rows},
                          {"grid_cols", court.grid_cols}};
    canon::Object sim_o{{"v_t", sim.v_t},
                        {"g", sim.g},
                        {"dt", sim.dt},
                        {"t_max", sim.t_max}};
    canon::Object report_o{{"top_k", report.top_k},
                           {"fault_threshold_deg", report.fault_threshold_deg}};
    return canon::Object{{"ingest", std::move(ingest_o)},
                         {"kinematics", std::move(kin_o)},
                         {"strokes", std::move(strokes_o)},
                         {"reference", std::move(ref_o)},
                         {"court", std::move(court_o)},
                         {"sim", std::move(sim_o)},
                         {"report", std::move(report_o)}};
}

} // namespace shuttlesense
