#include "rcskit/nf_rcs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "rcskit/errors.hpp"
#include "rcskit/geometry.hpp"
#include "rcskit/optimize.hpp"

namespace rcskit {
namespace {

constexpr double kInfeasible = 1e30;

/// Per-observation regressors. With r_k = a_k / a1 the model is
///   PL + u + 10 log10(1 + r2 w + r3 w^2) = (alpha - 10 log10 a1) + n u + m v
/// where u = 20 log10 d, v = -10 log10 cos(theta_b), w = lambda d. The bracketed
/// terms are linear and solved exactly for each (r2, r3) visited by the simplex.
struct Design {
    std::vector<double> u, v, w, pl;
};

Design build_design(std::span<const PlObservation> obs, double geom_a, double lambda) {
    Design ds;
    for (const auto& o : obs) {
        const BistaticGeometry g(geom_a, o.y_m);
        const double d = bistatic_distance(g);
        const double c = std::cos(bistatic_angle_deg(g) * std::numbers::pi / 180.0);
        if (!(c > 0.0)) throw DomainError("bistatic angle must be below 90 degrees (need y > a)");
        ds.u.push_back(20.0 * std::log10(d));
        ds.v.push_back(-10.0 * std::log10(c));
        ds.w.push_back(lambda * d);
        ds.pl.push_back(o.pl_db);
    }
    return ds;
}

struct LinearSolution {
    double alpha_prime = 0.0;
    double n = 0.0;
    double m = 0.0;
    double sse = 0.0;
    bool feasible = false;
};

/// Linear part (alpha', n, m) for fixed polynomial ratios, solved as a box-constrained
/// least-squares problem. When the unconstrained solution leaves the box, every
/// combination of free / lower / upper coefficients is tried and the best admissible one kept.
class Problem {
public:
    Problem(Design design, const PlFitOptions& options)
        : ds_(std::move(design)),
          lo_{options.alpha_lo, options.n_lo, options.m_lo},
          hi_{options.alpha_hi, options.n_hi, options.m_hi} {
        const auto rows = static_cast<Eigen::Index>(ds_.u.size());
        x_.resize(rows, 3);
        for (Eigen::Index i = 0; i < rows; ++i) {
            x_(i, 0) = 1.0;
            x_(i, 1) = ds_.u[static_cast<std::size_t>(i)];
            x_(i, 2) = ds_.v[static_cast<std::size_t>(i)];
        }
        for (unsigned mask = 1; mask < 8; ++mask) {
            Eigen::MatrixXd sub(rows, std::popcount(mask));
            Eigen::Index c = 0;
            for (int j = 0; j < 3; ++j) {
                if (mask & (1u << j)) sub.col(c++) = x_.col(j);
            }
            qr_[mask].compute(sub);
        }
    }

    LinearSolution solve(double r2, double r3) const {
        LinearSolution s;
        const auto rows = static_cast<Eigen::Index>(ds_.u.size());
        Eigen::VectorXd rhs(rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            const auto k = static_cast<std::size_t>(i);
            const double poly = 1.0 + r2 * ds_.w[k] + r3 * ds_.w[k] * ds_.w[k];
            if (!(poly > 0.0)) return s;
            rhs(i) = ds_.pl[k] + ds_.u[k] + 10.0 * std::log10(poly);
        }
        Eigen::Vector3d beta = qr_[7].solve(rhs);
        s.sse = (x_ * beta - rhs).squaredNorm();
        if (!inside(beta)) bounded(rhs, beta, s.sse);
        s.alpha_prime = beta(0);
        s.n = beta(1);
        s.m = beta(2);
        s.feasible = true;
        return s;
    }

    double objective(double r2, double r3) const {
        const LinearSolution s = solve(r2, r3);
        return s.feasible ? s.sse : kInfeasible;
    }

private:
    bool inside(const Eigen::Vector3d& beta) const {
        for (int j = 0; j < 3; ++j) {
            if (beta(j) < lo_[j] || beta(j) > hi_[j]) return false;
        }
        return true;
    }

    void bounded(const Eigen::VectorXd& rhs, Eigen::Vector3d& beta, double& sse) const {
        sse = kInfeasible;
        // Each coefficient: 0 free, 1 at lower bound, 2 at upper bound.
        for (int code = 1; code < 27; ++code) {
            Eigen::Vector3d trial;
            Eigen::VectorXd target = rhs;
            unsigned mask = 0;
            for (int j = 0, c = code; j < 3; ++j, c /= 3) {
                if (c % 3 == 0) {
                    mask |= 1u << j;
                } else {
                    trial(j) = c % 3 == 1 ? lo_[j] : hi_[j];
                    target -= x_.col(j) * trial(j);
                }
            }
            if (mask != 0) {
                const Eigen::VectorXd free = qr_[mask].solve(target);
                Eigen::Index c = 0;
                for (int j = 0; j < 3; ++j) {
                    if (mask & (1u << j)) trial(j) = free(c++);
                }
                if (!inside(trial)) continue;
            }
            const double e = (x_ * trial - rhs).squaredNorm();
            if (e < sse) {
                sse = e;
                beta = trial;
            }
        }
    }

    Design ds_;
    std::array<double, 3> lo_;
    std::array<double, 3> hi_;
    Eigen::MatrixXd x_;
    std::array<Eigen::ColPivHouseholderQR<Eigen::MatrixXd>, 8> qr_;
};

double radical_inverse(std::size_t index, std::size_t base) {
    double result = 0.0;
    double f = 1.0 / static_cast<double>(base);
    for (std::size_t i = index; i > 0; i /= base) {
        result += f * static_cast<double>(i % base);
        f /= static_cast<double>(base);
    }
    return result;
}

struct OuterResult {
    double r2 = 0.0;
    double r3 = 0.0;
    double value = 0.0;
    bool converged = true;
    std::size_t evaluations = 0;
};

/// Multi-start simplex over the nonlinear coefficients. Start 0 is the optimum of
/// the next-lower order (new coefficient at zero), so the loss is non-increasing in order.
OuterResult fit_outer(const Problem& problem, RcsOrder order, const PlFitOptions& opt) {
    if (order == RcsOrder::Sigma1) {
        return {0.0, 0.0, problem.objective(0.0, 0.0), true, 1};
    }
    const OuterResult lower =
        fit_outer(problem, order == RcsOrder::Sigma3 ? RcsOrder::Sigma2 : RcsOrder::Sigma1, opt);
    const std::size_t dim = order == RcsOrder::Sigma2 ? 1 : 2;

    std::vector<std::vector<double>> starts;
    starts.push_back(dim == 1 ? std::vector<double>{lower.r2} : std::vector<double>{lower.r2, 0.0});
    const double span = opt.coef_hi - opt.coef_lo;
    for (std::size_t k = 1; k < std::max<std::size_t>(opt.starts, 1); ++k) {
        std::vector<double> s{opt.coef_lo + span * radical_inverse(k, 2)};
        if (dim == 2) s.push_back(opt.coef_lo + span * radical_inverse(k, 3));
        starts.push_back(std::move(s));
    }

    const Bounds bounds{std::vector<double>(dim, opt.coef_lo), std::vector<double>(dim, opt.coef_hi)};
    NelderMeadOptions nm;
    nm.f_spread_tolerance = opt.f_spread_tolerance;
    nm.max_evaluations = opt.max_evaluations;
    nm.initial_step = 0.05 * span;
    const Objective f = [&problem, dim](std::span<const double> x) {
        return problem.objective(x[0], dim == 2 ? x[1] : 0.0);
    };

    OuterResult best;
    best.value = kInfeasible;
    best.evaluations = lower.evaluations;
    bool found = false;
    for (const auto& s : starts) {
        const NelderMeadResult r = nelder_mead(f, s, bounds, nm);
        best.evaluations += r.evaluations;
        // Strict '<' keeps the lowest start index on ties.
        if (r.value < kInfeasible && (!found || r.value < best.value)) {
            found = true;
            best.r2 = r.x[0];
            best.r3 = dim == 2 ? r.x[1] : 0.0;
            best.value = r.value;
            best.converged = r.converged;
        }
    }
    if (!found) throw NonConvergence("no multi-start reached a feasible (positive-RCS) optimum");
    return best;
}

void check_observations(std::span<const PlObservation> obs, double geom_a, const PlFitOptions& opt) {
    if (obs.empty()) throw InsufficientData("no path-loss observations");
    if (!std::isfinite(geom_a) || geom_a < 0.0) throw DomainError("geometry half baseline must be >= 0");
    const double f0 = obs.front().frequency_hz;
    if (!std::isfinite(f0) || f0 <= 0.0) throw DomainError("observation frequency must be > 0");
    for (const auto& o : obs) {
        if (!std::isfinite(o.y_m) || !std::isfinite(o.pl_db)) throw DomainError("non-finite observation");
        if (std::abs(o.frequency_hz - f0) > 1e-9 * f0) {
            throw DomainError("fit_pl takes observations at a single frequency");
        }
        if (o.y_m < opt.y_min_m || o.y_m > opt.y_max_m) {
            throw DomainError("target offset " + std::to_string(o.y_m) + " m is outside the configured span");
        }
    }
    const auto [lo, hi] = std::minmax_element(obs.begin(), obs.end(),
                                              [](const auto& a, const auto& b) { return a.y_m < b.y_m; });
    const double d_lo = std::hypot(geom_a, lo->y_m);
    const double d_hi = std::hypot(geom_a, hi->y_m);
    if (d_hi == d_lo) {
        throw DegenerateGeometry("all observations share one distance; the path-loss exponent is unidentifiable");
    }
    if (obs.size() < opt.min_observations) {
        throw InsufficientData("need at least " + std::to_string(opt.min_observations) + " observations, got " +
                               std::to_string(obs.size()));
    }
    if (d_hi < opt.min_distance_ratio * d_lo) {
        throw InsufficientData("observed distances span less than the required ratio");
    }
}

}  // namespace

std::string_view order_name(RcsOrder order) {
    switch (order) {
        case RcsOrder::Sigma1: return "sigma1";
        case RcsOrder::Sigma2: return "sigma2";
        case RcsOrder::Sigma3: return "sigma3";
    }
    return "unknown";
}

std::optional<RcsOrder> order_from_name(std::string_view name) {
    for (RcsOrder o : {RcsOrder::Sigma1, RcsOrder::Sigma2, RcsOrder::Sigma3}) {
        if (order_name(o) == name) return o;
    }
    return std::nullopt;
}

double sigma_model_eval(const NfRcsModel& model, double d, double lambda, double theta_b_deg) {
    if (!(d > 0.0) || !(lambda > 0.0)) throw DomainError("distance and wavelength must be > 0");
    const double c = std::cos(theta_b_deg * std::numbers::pi / 180.0);
    if (!(std::abs(theta_b_deg) < 90.0) || !(c > 0.0)) throw DomainError("cos(theta_b) must be > 0");
    double poly = model.a1 * d * d;
    if (model.order != RcsOrder::Sigma1) poly += model.a2 * lambda * d * d * d;
    if (model.order == RcsOrder::Sigma3) poly += model.a3 * lambda * lambda * d * d * d * d;
    if (!(poly > 0.0)) {
        throw NonPositiveRcs("RCS polynomial is non-positive at d = " + std::to_string(d) + " m");
    }
    return poly * std::pow(c, model.m);
}

double predict_pl(double alpha, double n, const NfRcsModel& model, double d, double lambda, double theta_b_deg) {
    return alpha + 20.0 * n * std::log10(d) - 10.0 * std::log10(sigma_model_eval(model, d, lambda, theta_b_deg));
}

double predict_pl_at(double alpha, double n, const NfRcsModel& model, double geom_a, double y_m,
                     double frequency_hz) {
    const BistaticGeometry g(geom_a, y_m);
    return predict_pl(alpha, n, model, bistatic_distance(g), wavelength_from_frequency(frequency_hz),
                      bistatic_angle_deg(g));
}

PathLossFit fit_pl(std::span<const PlObservation> observations, double geom_a, RcsOrder order,
                   const PlFitOptions& options) {
    check_observations(observations, geom_a, options);
    const double frequency = observations.front().frequency_hz;
    const double lambda = wavelength_from_frequency(frequency);
    const Problem problem(build_design(observations, geom_a, lambda), options);

    const OuterResult outer = fit_outer(problem, order, options);
    const LinearSolution lin = problem.solve(outer.r2, outer.r3);
    if (!lin.feasible) throw NonConvergence("optimum has a non-positive RCS polynomial");

    // a1 = 1 is the geometric centre of its bounds; alpha absorbs the scale.
    PathLossFit fit;
    fit.frequency_hz = frequency;
    fit.alpha = lin.alpha_prime;
    fit.n = lin.n;
    fit.model = {order, 1.0, order == RcsOrder::Sigma1 ? 0.0 : outer.r2, order == RcsOrder::Sigma3 ? outer.r3 : 0.0,
                 lin.m};
    fit.converged = outer.converged;
    fit.evaluations = outer.evaluations;
    fit.scale_degenerate = true;

    std::vector<double> measured, modeled;
    for (const auto& o : observations) {
        measured.push_back(o.pl_db);
        modeled.push_back(predict_pl_at(fit.alpha, fit.n, fit.model, geom_a, o.y_m, frequency));
        fit.residuals_db.push_back(measured.back() - modeled.back());
    }
    fit.sse = 0.0;
    for (double r : fit.residuals_db) fit.sse += r * r;
    fit.x_sigma = shadowing_std(fit.residuals_db);
    fit.mfe_percent = mfe_percent(measured, modeled);
    return fit;
}

double mfe_percent(std::span<const double> measured, std::span<const double> modeled) {
    if (measured.size() != modeled.size()) throw LengthMismatch("measured and modeled lengths differ");
    if (measured.empty()) throw InsufficientData("MFE of an empty series");
    double acc = 0.0;
    for (std::size_t j = 0; j < measured.size(); ++j) {
        if (measured[j] == 0.0) {
            throw DomainError("MFE is undefined for a measured value of 0 dB (index " + std::to_string(j) + ")");
        }
        acc += std::abs((measured[j] - modeled[j]) / measured[j]);
    }
    return acc / static_cast<double>(measured.size()) * 100.0;
}

double shadowing_std(std::span<const double> residuals) {
    if (residuals.size() < 2) throw InsufficientData("shadowing estimate needs at least two residuals");
    double mean = 0.0;
    for (double r : residuals) mean += r;
    mean /= static_cast<double>(residuals.size());
    double acc = 0.0;
    for (double r : residuals) acc += (r - mean) * (r - mean);
    return std::sqrt(acc / static_cast<double>(residuals.size()));
}

}  // namespace rcskit
