#include "shuttlesense/court.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "shuttlesense/errors.hpp"

namespace shuttlesense::court {

int zone_of(Point2 p, const CourtGeometry& geom, const ZoneGrid& grid) {
    if (!geom.contains(p))
        throw OutOfCourt("point (" + std::to_string(p.x) + ", " +
                         std::to_string(p.y) + ") outside court");
    const double cell_w = geom.width / grid.cols;
    int col = static_cast<int>(p.x / cell_w);
    col = std::min(col, grid.cols - 1); // far extreme stays in the last cell

    const double half_len = geom.net_y();
    const bool far_half = p.y >= half_len;
    const double y_in_half = far_half ? p.y - half_len : p.y;
    const double cell_h = half_len / grid.rows;
    int row = static_cast<int>(y_in_half / cell_h);
    row = std::min(row, grid.rows - 1);

    const int half_offset = far_half ? grid.rows * grid.cols : 0;
    return half_offset + row * grid.cols + col;
}

double LandingHeatmap::sum() const {
    return std::accumulate(cells.begin(), cells.end(), 0.0);
}

LandingHeatmap make_heatmap(const CourtGeometry& geom, double resolution) {
    if (resolution <= 0.0) throw Error("heatmap resolution must be positive");
    LandingHeatmap map;
    map.resolution = resolution;
    map.width = static_cast<int>(std::ceil(geom.width / resolution));
    map.height = static_cast<int>(std::ceil(geom.length / resolution));
    map.cells.assign(static_cast<std::size_t>(map.width) * map.height, 0.0);
    return map;
}

void splat_gaussian(LandingHeatmap& map, Point2 center,
                    const HeatmapConfig& cfg, const CourtGeometry& geom) {
    if (cfg.sigma <= 0.0) throw Error("sigma must be positive");
    if (!geom.contains(center))
        throw OutOfCourt("splat center outside court");
    const double radius = 4.0 * cfg.sigma;
    const double inv_two_sigma2 = 1.0 / (2.0 * cfg.sigma * cfg.sigma);

    const int c0 = std::max(
        0, static_cast<int>(std::floor((center.x - radius) / map.resolution)));
    const int c1 = std::min(
        map.width - 1,
        static_cast<int>(std::ceil((center.x + radius) / map.resolution)));
    const int r0 = std::max(
        0, static_cast<int>(std::floor((center.y - radius) / map.resolution)));
    const int r1 = std::min(
        map.height - 1,
        static_cast<int>(std::ceil((center.y + radius) / map.resolution)));

    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            const Point2 cc = map.cell_center(r, c);
            const double d2 = (cc.x - center.x) * (cc.x - center.x) +
                              (cc.y - center.y) * (cc.y - center.y);
            if (d2 > radius * radius) continue;
            map.at(r, c) += cfg.amplitude * std::exp(-d2 * inv_two_sigma2);
        }
    }
    map.normalized = false;
}

void normalize(LandingHeatmap& map) {
    const double total = map.sum();
    if (total <= 0.0) throw EmptyHeatmap("cannot normalize an empty heatmap");
    for (double& v : map.cells) v /= total;
    map.normalized = true;
}

LandingAccumulation accumulate_landings(
    std::span<const std::optional<LandingObservation>> observations,
    const ZoneGrid& grid, const HeatmapConfig& cfg, const CourtGeometry& geom) {
    LandingAccumulation out;
    for (const auto& obs : observations) {
        if (!obs) {
            ++out.skipped;
            continue;
        }
        if (!geom.contains(obs->origin) || !geom.contains(obs->landing)) {
            ++out.skipped;
            continue;
        }
        const HeatmapKey key{zone_of(obs->origin, geom, grid), obs->cls};
        auto it = out.maps.find(key);
        if (it == out.maps.end())
            it = out.maps.emplace(key, make_heatmap(geom, cfg.resolution)).first;
        splat_gaussian(it->second, obs->landing, cfg, geom);
    }
    return out;
}

int most_probable_zone(const LandingHeatmap& map, const CourtGeometry& geom,
                       const ZoneGrid& grid) {
    double best = 0.0;
    for (double v : map.cells) best = std::max(best, v);
    if (best <= 0.0) throw EmptyHeatmap("heatmap has no mass");

    int best_zone = grid.zone_count();
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            if (map.at(r, c) != best) continue;
            Point2 p = map.cell_center(r, c);
            // Cell centers of a ceil-sized grid can stick out past the
            // court edge; clamp them onto it.
            p.x = std::min(p.x, geom.width);
            p.y = std::min(p.y, geom.length);
            best_zone = std::min(best_zone, zone_of(p, geom, grid));
        }
    }
    return best_zone;
}

std::string to_pgm(const LandingHeatmap& map) {
    double peak = 0.0;
    for (double v : map.cells) peak = std::max(peak, v);
    std::ostringstream os;
    os << "P2\n" << map.width << ' ' << map.height << "\n255\n";
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            const int gray =
                peak > 0.0
                    ? static_cast<int>(std::lround(255.0 * map.at(r, c) / peak))
                    : 0;
            os << gray << (c + 1 < map.width ? ' ' : '\n');
        }
    }
    return os.str();
}

std::string to_csv(const LandingHeatmap& map) {
    std::ostringstream os;
    char buf[40];
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            std::snprintf(buf, sizeof(buf), "%.9g", map.at(r, c));
            os << buf << (c + 1 < map.width ? "," : "\n");
        }
    }
    return os.str();
}

void write_heatmap(const std::filesystem::path& path,
                   const LandingHeatmap& map) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    if (path.extension() == ".pgm")
        out << to_pgm(map);
    else
        out << to_csv(map);
}

} // namespace shuttlesense::court
