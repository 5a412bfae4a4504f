#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rcskit {

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

struct NelderMeadOptions {
    /// Stop when max f - min f over the simplex drops below this.
    double f_spread_tolerance = 1e-9;
    std::size_t max_evaluations = 5000;
    double initial_step = 1.0;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex minimisation inside a box. Trial points are projected onto
/// the box, so every evaluated point is feasible with respect to the bounds.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, const Bounds& bounds,
                             const NelderMeadOptions& options = {});

}  // namespace rcskit
