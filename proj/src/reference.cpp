#include "shuttlesense/reference.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "shuttlesense/errors.hpp"

using nlohmann::json;

namespace shuttlesense::reference {

double percentile_linear(std::span<const double> sorted_values, double p) {
    if (sorted_values.empty()) throw Error("percentile of empty set");
    const auto n = static_cast<int>(sorted_values.size());
    if (n == 1) return sorted_values[0];
    const double rank = p / 100.0 * (n - 1);
    const int lo = std::clamp(static_cast<int>(std::floor(rank)), 0, n - 2);
    const double frac = rank - lo;
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

const EnvelopeBand* EnvelopeModel::find(StrokeClass cls,
                                        const std::string& angle) const {
    const auto it = bands.find({to_string(cls), angle});
    return it == bands.end() ? nullptr : &it->second;
}

bool EnvelopeModel::has_class(StrokeClass cls) const {
    const std::string name = to_string(cls);
    for (const auto& [key, band] : bands)
        if (key.first == name) return true;
    return false;
}

EnvelopeModel build_envelope(
    std::span<const strokes::StrokeFeatures> reference_strokes, double p_lo,
    double p_hi, int n_min, const std::map<std::string, HardLimit>& hard_limits) {
    if (!(p_lo >= 0.0 && p_lo < p_hi && p_hi <= 100.0))
        throw Error("percentiles must satisfy 0 <= p_lo < p_hi <= 100");

    // Gather per (class, angle) the list of present phase series.
    std::map<std::pair<std::string, std::string>,
             std::vector<const std::array<double, kPhaseSamples>*>>
        gathered;
    for (const strokes::StrokeFeatures& f : reference_strokes)
        for (const strokes::AnglePhaseSeries& a : f.angle_phase)
            if (a.values)
                gathered[{to_string(f.cls), a.angle_name}].push_back(&*a.values);

    EnvelopeModel model;
    model.p_lo = p_lo;
    model.p_hi = p_hi;
    model.n_min = n_min;
    for (const auto& [key, series_list] : gathered) {
        const auto support = static_cast<int>(series_list.size());
        if (support < n_min) {
            model.excluded.push_back(
                {stroke_class_from_string(key.first), key.second, support});
            continue;
        }
        EnvelopeBand band;
        band.support_count = support;
        std::vector<double> at_phase(series_list.size());
        for (int i = 0; i < kPhaseSamples; ++i) {
            for (std::size_t s = 0; s < series_list.size(); ++s)
                at_phase[s] = (*series_list[s])[i];
            std::sort(at_phase.begin(), at_phase.end());
            band.lo[i] = percentile_linear(at_phase, p_lo);
            band.hi[i] = percentile_linear(at_phase, p_hi);
        }
        if (const auto hl = hard_limits.find(key.second); hl != hard_limits.end()) {
            for (int i = 0; i < kPhaseSamples; ++i) {
                band.lo[i] = std::max(band.lo[i], hl->second.min_deg);
                band.hi[i] = std::min(band.hi[i], hl->second.max_deg);
                if (band.lo[i] > band.hi[i]) band.lo[i] = band.hi[i];
            }
        }
        model.bands.emplace(key, band);
    }
    if (model.bands.empty())
        throw EmptyReference("no (class, angle) pair reached n_min = " +
                             std::to_string(n_min));
    return model;
}

namespace {

// Contiguous run around the argmax where dev stays above half the maximum,
// as a [0,1] phase interval.
std::pair<double, double> half_max_span(
    const std::array<double, kPhaseSamples>& dev) {
    const auto it = std::max_element(dev.begin(), dev.end());
    if (*it <= 0.0) return {0.0, 0.0};
    const auto peak = static_cast<int>(it - dev.begin());
    const double threshold = *it / 2.0;
    int lo = peak;
    while (lo > 0 && dev[lo - 1] >= threshold) --lo;
    int hi = peak;
    while (hi + 1 < kPhaseSamples && dev[hi + 1] >= threshold) ++hi;
    const double denom = kPhaseSamples - 1;
    return {lo / denom, hi / denom};
}

} // namespace

ScoredStroke score_stroke(const strokes::StrokeFeatures& features,
                          const EnvelopeModel& model, double d_norm) {
    if (d_norm <= 0.0) throw Error("d_norm must be positive");
    if (!model.has_class(features.cls))
        throw UnknownClass("envelope has no bands for class " +
                           to_string(features.cls));

    ScoredStroke scored;
    scored.cls = features.cls;
    double total_dev = 0.0;
    int total_phases = 0;
    for (const strokes::AnglePhaseSeries& a : features.angle_phase) {
        const EnvelopeBand* band = model.find(features.cls, a.angle_name);
        if (!a.values || !band) {
            scored.profile.skipped_angles.push_back(a.angle_name);
            continue;
        }
        AngleDeviation dev;
        for (int i = 0; i < kPhaseSamples; ++i) {
            const double v = (*a.values)[i];
            const double below = band->lo[i] - v;
            const double above = v - band->hi[i];
            const double d = std::max({0.0, below, above});
            dev.dev[i] = d;
            if (above > 0.0) dev.above_sum += above;
            if (below > 0.0) dev.below_sum += below;
            dev.mean_dev += d;
            dev.max_dev = std::max(dev.max_dev, d);
        }
        dev.mean_dev /= kPhaseSamples;
        dev.worst_phase_span = half_max_span(dev.dev);
        dev.direction =
            dev.above_sum >= dev.below_sum ? Direction::Above : Direction::Below;
        total_dev += dev.mean_dev * kPhaseSamples;
        total_phases += kPhaseSamples;
        scored.profile.angles.emplace(a.angle_name, dev);
    }
    scored.profile.mean_dev =
        total_phases > 0 ? total_dev / total_phases : 0.0;
    scored.accuracy =
        100.0 * std::max(0.0, 1.0 - scored.profile.mean_dev / d_norm);
    return scored;
}

std::vector<Fault> rank_faults(std::span<const ScoredStroke> scored) {
    struct Agg {
        double severity_sum = 0.0;
        int count = 0;
        std::array<double, kPhaseSamples> dev_sum{};
        double above = 0.0, below = 0.0;
    };
    std::map<std::pair<std::string, std::string>, Agg> by_pair;
    for (const ScoredStroke& s : scored) {
        for (const auto& [angle, dev] : s.profile.angles) {
            Agg& agg = by_pair[{to_string(s.cls), angle}];
            agg.severity_sum += dev.mean_dev;
            agg.count += 1;
            for (int i = 0; i < kPhaseSamples; ++i) agg.dev_sum[i] += dev.dev[i];
            agg.above += dev.above_sum;
            agg.below += dev.below_sum;
        }
    }

    std::vector<Fault> faults;
    for (const auto& [key, agg] : by_pair) {
        const double severity = agg.severity_sum / agg.count;
        if (severity <= 0.0) continue;
        Fault f;
        f.cls = stroke_class_from_string(key.first);
        f.angle_name = key.second;
        f.severity = severity;
        f.stroke_count = agg.count;
        std::array<double, kPhaseSamples> mean_dev{};
        for (int i = 0; i < kPhaseSamples; ++i)
            mean_dev[i] = agg.dev_sum[i] / agg.count;
        f.phase_span = half_max_span(mean_dev);
        f.direction = agg.above >= agg.below ? Direction::Above : Direction::Below;
        faults.push_back(std::move(f));
    }
    std::sort(faults.begin(), faults.end(), [](const Fault& a, const Fault& b) {
        if (a.severity != b.severity) return a.severity > b.severity;
        const std::string ca = to_string(a.cls), cb = to_string(b.cls);
        if (ca != cb) return ca < cb;
        return a.angle_name < b.angle_name;
    });
    return faults;
}

PlayAccuracy play_accuracy(std::span<const ScoredStroke> scored) {
    PlayAccuracy acc;
    std::map<std::string, std::pair<double, int>> per_class;
    for (const ScoredStroke& s : scored) {
        acc.per_stroke.push_back(s.accuracy);
        acc.session += s.accuracy;
        auto& [sum, count] = per_class[to_string(s.cls)];
        sum += s.accuracy;
        count += 1;
    }
    if (!acc.per_stroke.empty()) acc.session /= acc.per_stroke.size();
    for (const auto& [cls, agg] : per_class)
        acc.per_class[cls] = agg.first / agg.second;
    return acc;
}

void save_envelope(const std::filesystem::path& path,
                   const EnvelopeModel& model) {
    json pairs = json::array();
    for (const auto& [key, band] : model.bands) {
        json p = {{"class", key.first},
                  {"angle", key.second},
                  {"support", band.support_count},
                  {"lo", band.lo},
                  {"hi", band.hi}};
        pairs.push_back(p);
    }
    json excluded = json::array();
    for (const ExcludedPair& e : model.excluded)
        excluded.push_back({{"class", to_string(e.cls)},
                            {"angle", e.angle_name},
                            {"support", e.support_count}});
    json doc = {{"format", "shuttlesense-envelope"},
                {"format_version", 1},
                {"p_lo", model.p_lo},
                {"p_hi", model.p_hi},
                {"n_min", model.n_min},
                {"pairs", pairs},
                {"excluded", excluded}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

EnvelopeModel load_envelope(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open envelope " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw MalformedFile(path.string(), e.what());
    }
    if (doc.value("format", "") != "shuttlesense-envelope")
        throw MalformedFile(path.string(), "not an envelope file");
    EnvelopeModel model;
    try {
        model.p_lo = doc.at("p_lo").get<double>();
        model.p_hi = doc.at("p_hi").get<double>();
        model.n_min = doc.at("n_min").get<int>();
        for (const json& p : doc.at("pairs")) {
            EnvelopeBand band;
            band.support_count = p.at("support").get<int>();
            const auto& lo = p.at("lo");
            const auto& hi = p.at("hi");
            if (lo.size() != kPhaseSamples || hi.size() != kPhaseSamples)
                throw MalformedFile(path.string(), "band length mismatch");
            for (int i = 0; i < kPhaseSamples; ++i) {
                band.lo[i] = lo[i].get<double>();
                band.hi[i] = hi[i].get<double>();
            }
            model.bands.emplace(
                std::make_pair(p.at("class").get<std::string>(),
                               p.at("angle").get<std::string>()),
                band);
        }
        for (const json& e : doc.at("excluded"))
            model.excluded.push_back(
                {stroke_class_from_string(e.at("class").get<std::string>()),
                 e.at("angle").get<std::string>(), e.at("support").get<int>()});
    } catch (const json::exception& e) {
        throw MalformedFile(path.string(), e.what());
    }
    return model;
}

} // namespace shuttlesense::reference
