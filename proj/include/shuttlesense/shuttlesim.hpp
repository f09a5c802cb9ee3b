#pragma once

#include "shuttlesense/types.hpp"

namespace shuttlesense::sim {

struct ShuttleState {
    double x = 0.0, y = 0.0, z = 0.0;    // meters
    double vx = 0.0, vy = 0.0, vz = 0.0; // m/s
};

// Lumped quadratic-drag model, parameterized solely by terminal velocity:
//   a = (0, 0, -g) - (g / v_t^2) |v| v
struct DragParams {
    double v_t = 6.7; // m/s
    double g = 9.81;  // m/s^2
};

// Classical RK4 step.
ShuttleState step_rk4(const ShuttleState& s, const DragParams& p, double dt);

struct LandingResult {
    Point2 point;      // (x, y) at z = 0
    double flight_time = 0.0;
};

// Integrates until z crosses 0 from above; the crossing step is refined by
// bisection on single RK4 sub-steps so the landing keeps the integrator's
// 4th-order accuracy. Throws NoLanding when t_max is reached airborne.
LandingResult simulate_to_landing(ShuttleState initial, const DragParams& p,
                                  double dt, double t_max);

} // namespace shuttlesense::sim
