#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rcskit {

enum class DistributionFamily { Normal, Lognormal, Gamma, Weibull, Rayleigh, Exponential, GeneralizedGamma };

/// The six families that are fitted to measured RCS samples, in ranking tie-break order.
inline constexpr std::array<DistributionFamily, 6> kFittedFamilies = {
    DistributionFamily::Normal,  DistributionFamily::Lognormal, DistributionFamily::Gamma,
    DistributionFamily::Weibull, DistributionFamily::Rayleigh,  DistributionFamily::Exponential};

/// Lower-case identifier used in JSON and on the command line ("gamma", "generalized_gamma", ...).
std::string_view family_name(DistributionFamily family);
std::optional<DistributionFamily> family_from_name(std::string_view name);

/// True for every family except Normal.
bool has_positive_support(DistributionFamily family);

/// Family plus its parameters, validated at construction.
///
/// Parameter letters follow the published tables:
///   Normal(mu, sigma)            Lognormal(mu, sigma) on ln x
///   Gamma(A = shape, B = scale)  Weibull(A = scale, B = shape)
///   Rayleigh(B = scale)          Exponential(lambda = mean)
///   GeneralizedGamma(a = scale, d = shape, p = power)
class DistParams {
public:
    static DistParams normal(double mu, double sigma);
    static DistParams lognormal(double mu, double sigma);
    static DistParams gamma(double shape_a, double scale_b);
    static DistParams weibull(double scale_a, double shape_b);
    static DistParams rayleigh(double scale_b);
    static DistParams exponential(double mean_lambda);
    static DistParams generalized_gamma(double scale_a, double shape_d, double power_p);

    /// Builds from the family's parameter values in name order; throws DomainError if invalid.
    static DistParams make(DistributionFamily family, std::span<const double> values);

    DistributionFamily family() const noexcept { return family_; }
    std::size_t size() const noexcept { return count_; }
    double operator[](std::size_t i) const { return values_.at(i); }
    std::span<const double> values() const noexcept { return {values_.data(), count_}; }

    /// Parameter letters in order, e.g. {"A", "B"} for Gamma.
    static std::span<const std::string_view> parameter_names(DistributionFamily family);
    /// Throws std::out_of_range for a letter the family does not have.
    double get(std::string_view name) const;

    friend bool operator==(const DistParams&, const DistParams&) = default;

private:
    DistParams(DistributionFamily family, std::array<double, 3> values, std::size_t count);

    DistributionFamily family_;
    std::array<double, 3> values_{};
    std::size_t count_ = 0;
};

struct SampleMetadata {
    std::string target_id;
    double frequency_ghz = 0.0;
    double theta_b_deg = 0.0;
};

struct SampleSet {
    std::vector<double> values;
    SampleMetadata metadata;
};

double pdf(const DistParams& params, double x);
double cdf(const DistParams& params, double x);
double log_likelihood(const DistParams& params, std::span<const double> data);

/// Maximum-likelihood fit. Gamma and Weibull converge to |score| < kFitTolerance within kMaxFitIterations.
///
/// Errors: NonPositiveSample, DegenerateSample (empty or zero variance), NonConvergence,
/// UnsupportedFamily (GeneralizedGamma has no fitter).
DistParams mle_fit(DistributionFamily family, std::span<const double> data);
inline DistParams mle_fit(DistributionFamily family, const SampleSet& data) { return mle_fit(family, data.values); }

inline constexpr double kFitTolerance = 1e-10;
inline constexpr int kMaxFitIterations = 200;

using Rng = std::mt19937_64;

/// One draw using the caller's engine.
double draw(const DistParams& params, Rng& rng);

/// `count` draws from a fresh engine seeded with `seed`; identical output for identical inputs.
SampleSet sample(const DistParams& params, std::size_t count, std::uint64_t seed);

}  // namespace rcskit
