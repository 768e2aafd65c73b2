#pragma once

#include "spdelab/errors.hpp"

namespace spde {

// Uniform time grid on [0, t_end] with num_steps steps of size dt.
// Grid points are t_m = m * dt, m = 0..num_steps.
struct TimeGrid {
    double t_end = 0.0;
    int num_steps = 0;
    double dt = 0.0;

    TimeGrid() = default;
    TimeGrid(double t_end_, int num_steps_) : t_end(t_end_), num_steps(num_steps_) {
        if (!(t_end_ > 0.0)) throw config_error("TimeGrid: t_end must be positive");
        if (num_steps_ < 1) throw config_error("TimeGrid: num_steps must be >= 1");
        dt = t_end / num_steps;
    }

    double time(int m) const { return m * dt; }
};

}  // namespace spde
