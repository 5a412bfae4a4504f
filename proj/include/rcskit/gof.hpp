#pragma once

#include <span>
#include <string>
#include <vector>

#include "rcskit/dists.hpp"

namespace rcskit {

/// Right-continuous empirical CDF: F(x) = #{values <= x} / n.
class EmpiricalCdf {
public:
    /// Throws DegenerateSample on an empty sample.
    explicit EmpiricalCdf(std::span<const double> values);

    double operator()(double x) const;
    std::span<const double> sorted_values() const noexcept { return sorted_; }
    std::size_t size() const noexcept { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

struct GofReport {
    DistributionFamily family;
    DistParams params;
    double ks_stat = 0.0;
    double mse = 0.0;
};

/// A family that rank_fits could not fit, with the reason.
struct FitDiagnostic {
    DistributionFamily family;
    std::string message;
};

struct FitRanking {
    std::vector<GofReport> ranked;
    std::vector<FitDiagnostic> excluded;
};

/// Two-sided sup |F_n(x) - F_fit(x)| over both edges of every ECDF step.
double ks_statistic(std::span<const double> data, const DistParams& fitted);
/// (1/N) sum_i (i/N - F_fit(x_(i)))^2 over the sorted sample.
double mse_statistic(std::span<const double> data, const DistParams& fitted);

/// Variants for data already sorted ascending.
double ks_statistic_sorted(std::span<const double> sorted, const DistParams& fitted);
double mse_statistic_sorted(std::span<const double> sorted, const DistParams& fitted);

/// Fits each family by MLE and orders the results by (KS, MSE, family order).
///
/// Families whose fit throws are reported in `excluded` instead of failing the call.
/// Throws InsufficientData with fewer than two samples or an empty family list.
FitRanking rank_fits(std::span<const double> data, std::span<const DistributionFamily> families);

inline FitRanking rank_fits(const SampleSet& data, std::span<const DistributionFamily> families) {
    return rank_fits(data.values, families);
}

}  // namespace rcskit
