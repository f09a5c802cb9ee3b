#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "shuttlesense/canonical_json.hpp"
#include "shuttlesense/kinematics.hpp"
#include "shuttlesense/reference.hpp"

namespace shuttlesense {

// Every tunable that affects results, with the documented defaults. Loaded
// from JSON; unknown keys are rejected.
struct Config {
    struct Ingest {
        double confidence_floor = 0.1;
        double v_min = 0.8;
    } ingest;

    struct Kinematics {
        double max_gap_s = 0.1;        // gap fill limit, seconds
        double smooth_window_s = 0.15; // rounded to the nearest odd frame count
        std::vector<kinematics::AngleDefinition> angles; // default 8-angle set
    } kinematics;

    struct Strokes {
        double s_trigger = 4.0; // torso-lengths/s
        double min_gap_s = 0.5;
        double speed_fast = 6.0;
        double speed_slow = 2.5;
        double r_eff = 0.6;       // m
        double racket_mass = 0.09; // kg
        double eta = 0.25;        // metabolic efficiency
    } strokes;

    struct Reference {
        double p_lo = 10.0;
        double p_hi = 90.0;
        int n_min = 5;
        double d_norm = 45.0; // degrees
        std::map<std::string, reference::HardLimit> hard_limits;
    } reference;

    struct Court {
        double sigma = 0.25;      // m
        double amplitude = 1.0;
        double resolution = 0.05; // m per cell
        int grid_rows = 3;
        int grid_cols = 3;
    } court;

    struct Sim {
        double v_t = 6.7;
        double g = 9.81;
        double dt = 0.001;
        double t_max = 10.0;
    } sim;

    struct Report {
        int top_k = 10;
        double fault_threshold_deg = 2.0; // rendered fault table cutoff
    } report;

    int max_gap_frames(double fps) const;
    int smooth_window_frames(double fps) const;

    static Config defaults();
    // Layered load: defaults overridden by the JSON document's keys.
    static Config from_json_text(const std::string& text);
    static Config from_file(const std::filesystem::path& path);

    canon::Object echo() const; // complete, for embedding in reports
};

} // namespace shuttlesense
