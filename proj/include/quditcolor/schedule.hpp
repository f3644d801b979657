#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "quditcolor/interactions.hpp"

namespace quditcolor {

namespace detail {
inline constexpr double kScheduleSlack = 1e-12;

inline void check_time(double t, const DrivePlan& plan) {
    if (!(t >= -kScheduleSlack && t <= plan.T + kScheduleSlack))
        throw std::out_of_range("schedule: t = " + std::to_string(t) + " outside [0, T]");
}
}  // namespace detail

// Detuning profile in [-1, 1]: -1, cubic through t0, +1.
inline double schedule_delta(double t, const DrivePlan& plan) {
    detail::check_time(t, plan);
    if (t <= plan.t_i) return -1.0;
    if (t >= plan.t_f) return 1.0;
    const double t0 = 0.5 * (plan.t_i + plan.t_f);
    const double tau = plan.t_f - plan.t_i;
    const double x = t - t0;
    return 8.0 / (tau * tau * tau) * x * x * x;
}

// Rabi profile in [0, 1]: ramp up, hold, ramp down.
inline double schedule_omega(double t, const DrivePlan& plan) {
    detail::check_time(t, plan);
    if (t <= plan.t_i) return std::max(0.0, t / plan.t_i);
    if (t <= plan.t_f) return 1.0;
    return std::max(0.0, (plan.T - t) / (plan.T - plan.t_f));
}

struct DriveParameters {
    std::vector<double> delta;
    std::vector<double> omega;
};

inline DriveParameters drive_at(double t, const DrivePlan& plan) {
    const double dl = schedule_delta(t, plan);
    const double om = schedule_omega(t, plan);
    DriveParameters p;
    for (double d : plan.delta_max) p.delta.push_back(d * dl);
    for (double w : plan.omega_max) p.omega.push_back(w * om);
    return p;
}

}  // namespace quditcolor
