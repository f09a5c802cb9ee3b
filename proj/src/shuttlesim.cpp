#include "shuttlesense/shuttlesim.hpp"

#include <cmath>

#include "shuttlesense/errors.hpp"

namespace shuttlesense::sim {

namespace {

struct Derivative {
    double dx, dy, dz, dvx, dvy, dvz;
};

Derivative eval(const ShuttleState& s, const DragParams& p) {
    const double speed = std::sqrt(s.vx * s.vx + s.vy * s.vy + s.vz * s.vz);
    const double k = p.g / (p.v_t * p.v_t);
    return {s.vx, s.vy, s.vz,
            -k * speed * s.vx, -k * speed * s.vy, -p.g - k * speed * s.vz};
}

ShuttleState advance(const ShuttleState& s, const Derivative& d, double h) {
    return {s.x + h * d.dx,   s.y + h * d.dy,   s.z + h * d.dz,
            s.vx + h * d.dvx, s.vy + h * d.dvy, s.vz + h * d.dvz};
}

} // namespace

ShuttleState step_rk4(const ShuttleState& s, const DragParams& p, double dt) {
    const Derivative k1 = eval(s, p);
    const Derivative k2 = eval(advance(s, k1, dt / 2.0), p);
    const Derivative k3 = eval(advance(s, k2, dt / 2.0), p);
    const Derivative k4 = eval(advance(s, k3, dt), p);
    return {
        s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
        s.y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
        s.z + dt / 6.0 * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz),
        s.vx + dt / 6.0 * (k1.dvx + 2.0 * k2.dvx + 2.0 * k3.dvx + k4.dvx),
        s.vy + dt / 6.0 * (k1.dvy + 2.0 * k2.dvy + 2.0 * k3.dvy + k4.dvy),
        s.vz + dt / 6.0 * (k1.dvz + 2.0 * k2.dvz + 2.0 * k3.dvz + k4.dvz),
    };
}

LandingResult simulate_to_landing(ShuttleState initial, const DragParams& p,
                                  double dt, double t_max) {
    if (initial.z <= 0.0) throw Error("initial height must be positive");
    if (dt <= 0.0) throw Error("dt must be positive");

    ShuttleState s = initial;
    double t = 0.0;
    while (t < t_max) {
        const ShuttleState next = step_rk4(s, p, dt);
        if (next.z <= 0.0) {
            // Locate the crossing inside [t, t+dt] by bisecting on the
            // sub-step length; a single RK4 step of size h keeps the event
            // at the integrator's own order, which a linear cut would not.
            double lo = 0.0, hi = dt;
            ShuttleState at_hi = next;
            for (int iter = 0; iter < 60 && hi - lo > 1e-15; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const ShuttleState sm = step_rk4(s, p, mid);
                if (sm.z <= 0.0) {
                    hi = mid;
                    at_hi = sm;
                } else {
                    lo = mid;
                }
            }
            return {{at_hi.x, at_hi.y}, t + hi};
        }
        s = next;
        t += dt;
    }
    throw NoLanding("no landing within t_max = " + std::to_string(t_max));
}

} // namespace shuttlesense::sim
