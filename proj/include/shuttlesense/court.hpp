#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shuttlesense/types.hpp"

namespace shuttlesense::court {

// Standard singles court, meters. x across [0, width], y along [0, length],
// net at y = length/2.
struct CourtGeometry {
    double length = 13.40;
    double width = 6.10;

    double net_y() const { return length / 2.0; }
    bool contains(Point2 p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= length;
    }
};

// rows x cols cells per half; zone ids 0 .. 2*rows*cols-1, near half
// (y < net) first, row-major within a half.
struct ZoneGrid {
    int rows = 3;
    int cols = 3;

    int zone_count() const { return 2 * rows * cols; }
};

// Half-open cells; boundary points belong to the higher-index cell except at
// the far court extremes. Throws OutOfCourt.
int zone_of(Point2 p, const CourtGeometry& geom, const ZoneGrid& grid);

struct HeatmapConfig {
    double sigma = 0.25;      // meters
    double amplitude = 1.0;
    double resolution = 0.05; // meters per cell
};

struct LandingHeatmap {
    int width = 0;  // cells across (x)
    int height = 0; // cells along (y)
    double resolution = 0.05;
    std::vector<double> cells; // row-major, row 0 at y = 0
    bool normalized = false;

    double& at(int row, int col) { return cells[row * width + col]; }
    double at(int row, int col) const { return cells[row * width + col]; }
    Point2 cell_center(int row, int col) const {
        return {(col + 0.5) * resolution, (row + 0.5) * resolution};
    }
    double sum() const;
};

LandingHeatmap make_heatmap(const CourtGeometry& geom, double resolution);

// Adds amplitude * exp(-(d^2)/(2 sigma^2)) at cell centers, truncated at a
// 4 sigma radius. Throws OutOfCourt when the center is outside the court.
void splat_gaussian(LandingHeatmap& map, Point2 center,
                    const HeatmapConfig& cfg, const CourtGeometry& geom);

// In-place division by the total mass; idempotent, preserves the argmax.
// Throws EmptyHeatmap when the map is all zero.
void normalize(LandingHeatmap& map);

struct LandingObservation {
    Point2 origin;  // court meters, where the stroke was played from
    Point2 landing; // court meters
    StrokeClass cls = StrokeClass::Drive;
};

struct HeatmapKey {
    int origin_zone = 0;
    StrokeClass cls = StrokeClass::Drive;

    bool operator<(const HeatmapKey& o) const {
        if (origin_zone != o.origin_zone) return origin_zone < o.origin_zone;
        return to_string(cls) < to_string(o.cls);
    }
};

struct LandingAccumulation {
    std::map<HeatmapKey, LandingHeatmap> maps;
    int skipped = 0; // strokes without a usable landing, plus out-of-court
};

// One heatmap per observed (origin zone, class). Strokes without a landing
// observation, or with origin/landing outside the court, are skipped and
// counted.
LandingAccumulation accumulate_landings(
    std::span<const std::optional<LandingObservation>> observations,
    const ZoneGrid& grid, const HeatmapConfig& cfg, const CourtGeometry& geom);

// Zone holding the argmax cell; ties resolved to the lowest zone id.
// Throws EmptyHeatmap.
int most_probable_zone(const LandingHeatmap& map, const CourtGeometry& geom,
                       const ZoneGrid& grid);

// Plain-text grayscale "P2 W H 255" image, values rescaled to 0..255.
std::string to_pgm(const LandingHeatmap& map);
// Raw cell values, one CSV row per heatmap row.
std::string to_csv(const LandingHeatmap& map);

void write_heatmap(const std::filesystem::path& path,
                   const LandingHeatmap& map); // format picked by extension

} // namespace shuttlesense::court
