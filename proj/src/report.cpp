#include "shuttlesense/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "shuttlesense/errors.hpp"

using nlohmann::json;

namespace shuttlesense::report {

namespace {

canon::Value to_canon(const json& j) {
    switch (j.type()) {
        case json::value_t::object: {
            canon::Object o;
            for (const auto& [k, v] : j.items()) o.emplace(k, to_canon(v));
            return o;
        }
        case json::value_t::array: {
            canon::Array a;
            for (const json& v : j) a.push_back(to_canon(v));
            return a;
        }
        case json::value_t::string:
            return j.get<std::string>();
        case json::value_t::boolean:
            return j.get<bool>();
        case json::value_t::number_integer:
        case json::value_t::number_unsigned:
        case json::value_t::number_float:
            return j.get<double>();
        default:
            return nullptr;
    }
}

std::string direction_name(reference::Direction d) {
    return d == reference::Direction::Above ? "above" : "below";
}

reference::Direction direction_from_name(const std::string& s) {
    return s == "below" ? reference::Direction::Below
                        : reference::Direction::Above;
}

std::string fmt(double v) { return canon::format_number(v); }

} // namespace

AssessmentReport assemble_report(AssembleInputs in) {
    AssessmentReport r;
    r.session_id = std::move(in.session_id);
    r.heatmaps = std::move(in.heatmaps);
    r.strokes_without_landing = in.strokes_without_landing;
    r.validation_warnings = std::move(in.validation_warnings);
    r.config_echo = std::move(in.config_echo);

    const reference::PlayAccuracy acc = reference::play_accuracy(in.scored);
    r.overall_accuracy = acc.session;
    r.per_class_accuracy = acc.per_class;
    r.faults = reference::rank_faults(in.scored);

    for (std::size_t i = 0; i < in.scored.size(); ++i) {
        StrokeRow row;
        row.index = static_cast<int>(i);
        if (i < in.features.size()) {
            const strokes::StrokeFeatures& f = in.features[i];
            row.start_frame = f.segment.start_frame;
            row.peak_frame = f.segment.peak_frame;
            row.end_frame = f.segment.end_frame;
            row.peak_wrist_speed = f.peak_wrist_speed;
            row.outgoing_angle_deg = f.outgoing_angle_deg;
        }
        row.cls = to_string(in.scored[i].cls);
        row.accuracy = in.scored[i].accuracy;
        if (i < in.swing.size()) row.swing = in.swing[i];
        r.strokes.push_back(std::move(row));
    }

    for (const auto& swing : in.swing) {
        if (!swing) continue;
        r.swing.strokes_with_imu += 1;
        r.swing.mean_head_speed += swing->head_speed;
        r.swing.peak_head_speed = std::max(r.swing.peak_head_speed,
                                           swing->head_speed);
        r.swing.mean_force += swing->force;
        r.swing.total_radian += swing->radian;
        r.swing.total_calories += swing->calories;
    }
    if (r.swing.strokes_with_imu > 0) {
        r.swing.mean_head_speed /= r.swing.strokes_with_imu;
        r.swing.mean_force /= r.swing.strokes_with_imu;
    }
    return r;
}

std::string to_canonical_json(const AssessmentReport& report) {
    canon::Array faults;
    for (const reference::Fault& f : report.faults)
        faults.push_back(canon::Object{
            {"angle", f.angle_name},
            {"class", to_string(f.cls)},
            {"severity", f.severity},
            {"direction", direction_name(f.direction)},
            {"phase_span", canon::Array{f.phase_span.first, f.phase_span.second}},
            {"stroke_count", f.stroke_count}});

    canon::Array strokes;
    for (const StrokeRow& s : report.strokes) {
        canon::Object row{{"index", s.index},
                          {"start_frame", s.start_frame},
                          {"peak_frame", s.peak_frame},
                          {"end_frame", s.end_frame},
                          {"class", s.cls},
                          {"accuracy", s.accuracy},
                          {"peak_wrist_speed", s.peak_wrist_speed}};
        row.emplace("outgoing_angle_deg",
                    s.outgoing_angle_deg ? canon::Value(*s.outgoing_angle_deg)
                                         : canon::Value(nullptr));
        if (s.swing)
            row.emplace("swing", canon::Object{{"head_speed", s.swing->head_speed},
                                               {"force", s.swing->force},
                                               {"radian", s.swing->radian},
                                               {"calories", s.swing->calories}});
        else
            row.emplace("swing", nullptr);
        strokes.push_back(std::move(row));
    }

    canon::Array heatmaps;
    for (const HeatmapRef& h : report.heatmaps)
        heatmaps.push_back(canon::Object{{"origin_zone", h.origin_zone},
                                         {"class", h.cls},
                                         {"path", h.path},
                                         {"most_probable_zone",
                                          h.most_probable_zone}});

    canon::Object per_class;
    for (const auto& [cls, acc] : report.per_class_accuracy)
        per_class.emplace(cls, acc);

    canon::Array warnings;
    for (const std::string& w : report.validation_warnings)
        warnings.push_back(w);

    canon::Object doc{
        {"format", "shuttlesense-report"},
        {"format_version", 1},
        {"session_id", report.session_id},
        {"overall_accuracy", report.overall_accuracy},
        {"per_class_accuracy", std::move(per_class)},
        {"faults", std::move(faults)},
        {"strokes", std::move(strokes)},
        {"swing_summary",
         canon::Object{{"strokes_with_imu", report.swing.strokes_with_imu},
                       {"mean_head_speed", report.swing.mean_head_speed},
                       {"peak_head_speed", report.swing.peak_head_speed},
                       {"mean_force", report.swing.mean_force},
                       {"total_radian", report.swing.total_radian},
                       {"total_calories", report.swing.total_calories}}},
        {"heatmaps", std::move(heatmaps)},
        {"strokes_without_landing", report.strokes_without_landing},
        {"validation_warnings", std::move(warnings)},
        {"config", report.config_echo}};
    return canon::Value(std::move(doc)).dump() + "\n";
}

AssessmentReport parse_report_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("report parse error: ") + e.what());
    }
    if (doc.value("format", "") != "shuttlesense-report")
        throw Error("not a shuttlesense report");

    AssessmentReport r;
    r.session_id = doc.at("session_id").get<std::string>();
    r.overall_accuracy = doc.at("overall_accuracy").get<double>();
    for (const auto& [cls, acc] : doc.at("per_class_accuracy").items())
        r.per_class_accuracy[cls] = acc.get<double>();
    for (const json& f : doc.at("faults")) {
        reference::Fault fault;
        fault.angle_name = f.at("angle").get<std::string>();
        fault.cls = stroke_class_from_string(f.at("class").get<std::string>());
        fault.severity = f.at("severity").get<double>();
        fault.direction = direction_from_name(f.at("direction").get<std::string>());
        fault.phase_span = {f.at("phase_span")[0].get<double>(),
                            f.at("phase_span")[1].get<double>()};
        fault.stroke_count = f.at("stroke_count").get<int>();
        r.faults.push_back(fault);
    }
    for (const json& s : doc.at("strokes")) {
        StrokeRow row;
        row.index = s.at("index").get<int>();
        row.start_frame = s.at("start_frame").get<int>();
        row.peak_frame = s.at("peak_frame").get<int>();
        row.end_frame = s.at("end_frame").get<int>();
        row.cls = s.at("class").get<std::string>();
        row.accuracy = s.at("accuracy").get<double>();
        row.peak_wrist_speed = s.at("peak_wrist_speed").get<double>();
        if (!s.at("outgoing_angle_deg").is_null())
            row.outgoing_angle_deg = s["outgoing_angle_deg"].get<double>();
        if (!s.at("swing").is_null()) {
            strokes::SwingMetrics m;
            m.head_speed = s["swing"].at("head_speed").get<double>();
            m.force = s["swing"].at("force").get<double>();
            m.radian = s["swing"].at("radian").get<double>();
            m.calories = s["swing"].at("calories").get<double>();
            row.swing = m;
        }
        r.strokes.push_back(row);
    }
    const json& sw = doc.at("swing_summary");
    r.swing.strokes_with_imu = sw.at("strokes_with_imu").get<int>();
    r.swing.mean_head_speed = sw.at("mean_head_speed").get<double>();
    r.swing.peak_head_speed = sw.at("peak_head_speed").get<double>();
    r.swing.mean_force = sw.at("mean_force").get<double>();
    r.swing.total_radian = sw.at("total_radian").get<double>();
    r.swing.total_calories = sw.at("total_calories").get<double>();
    for (const json& h : doc.at("heatmaps")) {
        HeatmapRef ref;
        ref.origin_zone = h.at("origin_zone").get<int>();
        ref.cls = h.at("class").get<std::string>();
        ref.path = h.at("path").get<std::string>();
        ref.most_probable_zone = h.at("most_probable_zone").get<int>();
        r.heatmaps.push_back(ref);
    }
    r.strokes_without_landing = doc.at("strokes_without_landing").get<int>();
    for (const json& w : doc.at("validation_warnings"))
        r.validation_warnings.push_back(w.get<std::string>());
    canon::Object cfg;
    for (const auto& [k, v] : doc.at("config").items())
        cfg.emplace(k, to_canon(v));
    r.config_echo = std::move(cfg);
    return r;
}

std::string render_markdown(const AssessmentReport& report,
                            double fault_threshold_deg, int top_k) {
    std::ostringstream os;
    os << "# Coaching assessment: " << report.session_id << "\n\n";

    os << "## Session summary\n\n";
    os << "| metric | value |\n|---|---|\n";
    os << "| overall accuracy | " << fmt(report.overall_accuracy) << " |\n";
    os << "| strokes analyzed | " << report.strokes.size() << " |\n";
    for (const auto& [cls, acc] : report.per_class_accuracy)
        os << "| " << cls << " accuracy | " << fmt(acc) << " |\n";
    if (report.strokes_without_landing > 0)
        os << "| strokes without landing | " << report.strokes_without_landing
           << " |\n";
    os << '\n';

    os << "## Ranked faults\n\n";
    std::vector<const reference::Fault*> shown;
    for (const reference::Fault& f : report.faults) {
        if (f.severity < fault_threshold_deg) continue;
        if (static_cast<int>(shown.size()) >= top_k) break;
        shown.push_back(&f);
    }
    if (shown.empty()) {
        os << "No faults above threshold.\n\n";
    } else {
        os << "| rank | angle | stroke | severity (deg) | direction | phase span |\n";
        os << "|---|---|---|---|---|---|\n";
        int rank = 1;
        for (const reference::Fault* f : shown) {
            os << "| " << rank++ << " | " << f->angle_name << " | "
               << to_string(f->cls) << " | " << fmt(f->severity) << " | "
               << direction_name(f->direction) << " envelope | ["
               << fmt(f->phase_span.first) << ", " << fmt(f->phase_span.second)
               << "] |\n";
        }
        os << '\n';
    }

    os << "## Swing metrics\n\n";
    if (report.swing.strokes_with_imu == 0) {
        os << "No IMU trace supplied.\n\n";
    } else {
        os << "| metric | value |\n|---|---|\n";
        os << "| strokes with IMU | " << report.swing.strokes_with_imu << " |\n";
        os << "| mean head speed (m/s) | " << fmt(report.swing.mean_head_speed)
           << " |\n";
        os << "| peak head speed (m/s) | " << fmt(report.swing.peak_head_speed)
           << " |\n";
        os << "| mean force (N) | " << fmt(report.swing.mean_force) << " |\n";
        os << "| total swing arc (rad) | " << fmt(report.swing.total_radian)
           << " |\n";
        os << "| total calories (kcal) | " << fmt(report.swing.total_calories)
           << " |\n\n";
    }

    os << "## Landing heatmaps\n\n";
    if (report.heatmaps.empty()) {
        os << "No landing data.\n";
    } else {
        os << "| origin zone | stroke | most probable zone | file |\n";
        os << "|---|---|---|---|\n";
        for (const HeatmapRef& h : report.heatmaps)
            os << "| " << h.origin_zone << " | " << h.cls << " | "
               << h.most_probable_zone << " | " << h.path << " |\n";
    }
    os << '\n';

    if (!report.validation_warnings.empty()) {
        os << "## Validation warnings\n\n";
        for (const std::string& w : report.validation_warnings)
            os << "- " << w << '\n';
        os << '\n';
    }
    return os.str();
}

ProgressSummary compare_sessions(std::span<const ProgressEntry> track) {
    if (track.empty()) throw Error("progress track is empty");
    ProgressSummary summary;
    summary.entries.assign(track.begin(), track.end());
    for (std::size_t i = 1; i < track.size(); ++i) {
        if (track[i].timestamp < track[i - 1].timestamp)
            throw Error("progress timestamps must be non-decreasing");
        summary.deltas.push_back(track[i].overall_accuracy -
                                 track[i - 1].overall_accuracy);
    }
    const auto best = std::max_element(
        track.begin(), track.end(), [](const auto& a, const auto& b) {
            return a.overall_accuracy < b.overall_accuracy;
        });
    summary.best_session = best->session_id;
    summary.monotonic_improvement =
        std::all_of(summary.deltas.begin(), summary.deltas.end(),
                    [](double d) { return d >= 0.0; });
    return summary;
}

std::string progress_to_json(const ProgressSummary& summary) {
    canon::Array entries;
    for (const ProgressEntry& e : summary.entries) {
        canon::Object per_class;
        for (const auto& [cls, acc] : e.per_class_accuracy)
            per_class.emplace(cls, acc);
        entries.push_back(canon::Object{{"session_id", e.session_id},
                                        {"timestamp", e.timestamp},
                                        {"overall_accuracy", e.overall_accuracy},
                                        {"per_class_accuracy",
                                         std::move(per_class)}});
    }
    canon::Array deltas;
    for (double d : summary.deltas) deltas.push_back(d);
    canon::Object doc{{"format", "shuttlesense-progress"},
                      {"format_version", 1},
                      {"entries", std::move(entries)},
                      {"deltas", std::move(deltas)},
                      {"best_session", summary.best_session},
                      {"monotonic_improvement", summary.monotonic_improvement}};
    return canon::Value(std::move(doc)).dump() + "\n";
}

std::string progress_markdown(const ProgressSummary& summary) {
    std::ostringstream os;
    os << "# Progress across sessions\n\n";
    os << "| session | timestamp | overall accuracy | delta |\n";
    os << "|---|---|---|---|\n";
    for (std::size_t i = 0; i < summary.entries.size(); ++i) {
        const ProgressEntry& e = summary.entries[i];
        os << "| " << e.session_id << " | " << fmt(e.timestamp) << " | "
           << fmt(e.overall_accuracy) << " | ";
        if (i == 0)
            os << "-";
        else {
            const double d = summary.deltas[i - 1];
            if (d >= 0.0) os << '+';
            os << fmt(d);
        }
        os << " |\n";
    }
    os << "\nBest session: " << summary.best_session << "\n";
    os << "Monotonic improvement: "
       << (summary.monotonic_improvement ? "yes" : "no") << "\n";
    return os.str();
}

} // namespace shuttlesense::report
