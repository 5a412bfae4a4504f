#include "rcskit/optimize.hpp"

#include <algorithm>
#include <numeric>

#include "rcskit/errors.hpp"

namespace rcskit {
namespace {

void project(std::vector<double>& x, const Bounds& b) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], b.lower[i], b.upper[i]);
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, const Bounds& bounds,
                             const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    if (dim == 0 || bounds.lower.size() != dim || bounds.upper.size() != dim) {
        throw LengthMismatch("Nelder-Mead start and bounds disagree in dimension");
    }
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    NelderMeadResult result;
    auto eval = [&](const std::vector<double>& x) {
        ++result.evaluations;
        return f(x);
    };

    project(start, bounds);
    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) {
        double step = options.initial_step;
        if (start[i] + step > bounds.upper[i]) step = -step;
        simplex[i + 1][i] += step;
        project(simplex[i + 1], bounds);
    }
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto along = [&](double coef, const std::vector<double>& worst, std::vector<double>& out) {
        for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + coef * (centroid[j] - worst[j]);
        project(out, bounds);
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        if (values[worst] - values[best] < options.f_spread_tolerance) {
            result.converged = true;
            break;
        }
        if (result.evaluations >= options.max_evaluations) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        along(kReflect, simplex[worst], trial);
        const double f_reflect = eval(trial);
        if (f_reflect < values[best]) {
            along(kExpand, simplex[worst], trial2);
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }
        const bool outside = f_reflect < values[worst];
        along(outside ? kContract : -kContract, simplex[worst], trial2);
        const double f_contract = eval(trial2);
        if (f_contract < (outside ? f_reflect : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = f_contract;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                simplex[i][j] = simplex[best][j] + kShrink * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
    result.value = *best_it;
    return result;
}

}  // namespace rcskit
