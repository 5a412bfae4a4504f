#include "rcskit/gof.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

#include "rcskit/errors.hpp"
#include "rcskit/parallel.hpp"

namespace rcskit {

EmpiricalCdf::EmpiricalCdf(std::span<const double> values) : sorted_(values.begin(), values.end()) {
    if (sorted_.empty()) throw DegenerateSample("empirical CDF of an empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_statistic_sorted(std::span<const double> sorted, const DistParams& fitted) {
    if (sorted.empty()) throw DegenerateSample("KS statistic of an empty sample");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(fitted, sorted[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return std::clamp(d, 0.0, 1.0);
}

double mse_statistic_sorted(std::span<const double> sorted, const DistParams& fitted) {
    if (sorted.empty()) throw DegenerateSample("MSE statistic of an empty sample");
    const double n = static_cast<double>(sorted.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double diff = static_cast<double>(i + 1) / n - cdf(fitted, sorted[i]);
        acc += diff * diff;
    }
    return acc / n;
}

double ks_statistic(std::span<const double> data, const DistParams& fitted) {
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    return ks_statistic_sorted(sorted, fitted);
}

double mse_statistic(std::span<const double> data, const DistParams& fitted) {
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    return mse_statistic_sorted(sorted, fitted);
}

FitRanking rank_fits(std::span<const double> data, std::span<const DistributionFamily> families) {
    if (data.size() < 2) throw InsufficientData("ranking needs at least two samples");
    if (families.empty()) throw InsufficientData("ranking needs at least one family");

    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());

    struct Outcome {
        std::optional<GofReport> report;
        std::string error;
    };
    std::vector<Outcome> outcomes(families.size());
    parallel_for(families.size(), [&](std::size_t i) {
        try {
            DistParams fit = mle_fit(families[i], std::span<const double>(sorted));
            const double ks = ks_statistic_sorted(sorted, fit);
            const double mse = mse_statistic_sorted(sorted, fit);
            outcomes[i].report = GofReport{families[i], fit, ks, mse};
        } catch (const Error& e) {
            outcomes[i].error = e.what();
        }
    });

    FitRanking result;
    for (std::size_t i = 0; i < families.size(); ++i) {
        if (outcomes[i].report) {
            result.ranked.push_back(*outcomes[i].report);
        } else {
            result.excluded.push_back({families[i], outcomes[i].error});
        }
    }
    std::stable_sort(result.ranked.begin(), result.ranked.end(), [](const GofReport& a, const GofReport& b) {
        return std::tuple(a.ks_stat, a.mse, static_cast<int>(a.family)) <
               std::tuple(b.ks_stat, b.mse, static_cast<int>(b.family));
    });
    return result;
}

}  // namespace rcskit
