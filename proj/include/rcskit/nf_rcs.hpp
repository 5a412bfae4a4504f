#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rcskit {

/// Polynomial order of the near-field RCS model.
///   Sigma1: a1 d^2
///   Sigma2: a1 d^2 + a2 lambda d^3
///   Sigma3: a1 d^2 + a2 lambda d^3 + a3 lambda^2 d^4
/// each multiplied by cos^m(theta_b).
enum class RcsOrder { Sigma1 = 1, Sigma2 = 2, Sigma3 = 3 };

std::string_view order_name(RcsOrder order);
std::optional<RcsOrder> order_from_name(std::string_view name);

struct NfRcsModel {
    RcsOrder order = RcsOrder::Sigma1;
    double a1 = 1.0;
    double a2 = 0.0;  // ignored for Sigma1
    double a3 = 0.0;  // ignored below Sigma3
    double m = 0.0;   // angular exponent
};

struct PlObservation {
    double y_m = 0.0;
    double frequency_hz = 0.0;
    double pl_db = 0.0;
};

/// One fitted row: PL = alpha + 20 n log10(d) - 10 log10(sigma_i) + X_sigma.
///
/// The overall RCS scale a1 trades off exactly against alpha (only alpha - 10 log10 a1
/// is identifiable), so fits report a1 = 1 and set `scale_degenerate`.
struct PathLossFit {
    double alpha = 0.0;
    double n = 0.0;
    NfRcsModel model;
    double x_sigma = 0.0;
    double mfe_percent = 0.0;
    double frequency_hz = 0.0;
    double sse = 0.0;  // sum of squared dB residuals at the optimum
    bool scale_degenerate = true;
    bool converged = true;
    std::size_t evaluations = 0;
    std::vector<double> residuals_db;  // measured - modelled, per observation
};

/// Fitting configuration. Bounds apply to the reported parameters.
struct PlFitOptions {
    double y_min_m = 2.0;
    double y_max_m = 10.0;
    std::size_t min_observations = 8;
    double min_distance_ratio = 2.0;
    std::size_t starts = 16;
    double alpha_lo = 0.0, alpha_hi = 120.0;
    double n_lo = 0.5, n_hi = 4.0;
    double m_lo = -20.0, m_hi = 5.0;
    double a1_lo = 1e-3, a1_hi = 1e3;
    double coef_lo = -10.0, coef_hi = 10.0;  // a2, a3
    double f_spread_tolerance = 1e-9;
    std::size_t max_evaluations = 5000;
};

/// sigma_i(d, lambda) in m^2. Throws DomainError when cos(theta_b) <= 0 and
/// NonPositiveRcs when the polynomial part is <= 0.
double sigma_model_eval(const NfRcsModel& model, double d, double lambda, double theta_b_deg);

/// Deterministic part of the double path-loss model, in dB.
double predict_pl(double alpha, double n, const NfRcsModel& model, double d, double lambda, double theta_b_deg);

/// Deterministic PL at target offset y for a Tx/Rx half baseline geom_a.
double predict_pl_at(double alpha, double n, const NfRcsModel& model, double geom_a, double y_m, double frequency_hz);

/// Least-squares fit in dB of one model order to single-frequency observations.
///
/// Errors: InsufficientData, DegenerateGeometry (all distances equal),
/// NonConvergence (no start reaches a feasible optimum), DomainError (mixed
/// frequencies, offsets outside the configured span).
PathLossFit fit_pl(std::span<const PlObservation> observations, double geom_a, RcsOrder order,
                   const PlFitOptions& options = {});

/// Mean of |(measured - modeled) / measured| in percent.
double mfe_percent(std::span<const double> measured, std::span<const double> modeled);

/// Population standard deviation of the residuals (1/N normalisation).
double shadowing_std(std::span<const double> residuals);

}  // namespace rcskit
