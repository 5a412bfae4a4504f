#include "rcskit/dists.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "rcskit/errors.hpp"

namespace rcskit {
namespace {

using Family = DistributionFamily;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)

constexpr std::string_view kNormalNames[] = {"mu", "sigma"};
constexpr std::string_view kGammaNames[] = {"A", "B"};
constexpr std::string_view kRayleighNames[] = {"B"};
constexpr std::string_view kExponentialNames[] = {"lambda"};
constexpr std::string_view kGenGammaNames[] = {"a", "d", "p"};

std::size_t parameter_count(Family f) {
    switch (f) {
        case Family::Rayleigh:
        case Family::Exponential: return 1;
        case Family::GeneralizedGamma: return 3;
        default: return 2;
    }
}

void require(bool ok, const char* message) {
    if (!ok) throw DomainError(message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

double log_pdf_positive(const DistParams& p, double x) {
    // x > 0 here. Each family is written as a single log-density expression so
    // that the generalized gamma special cases agree term by term.
    const double lx = std::log(x);
    switch (p.family()) {
        case Family::Normal: {
            const double z = (x - p[0]) / p[1];
            return -0.5 * z * z - std::log(p[1]) - kLogSqrt2Pi;
        }
        case Family::Lognormal: {
            const double z = (lx - p[0]) / p[1];
            return -0.5 * z * z - std::log(p[1]) - kLogSqrt2Pi - lx;
        }
        case Family::Gamma:
            return -p[0] * std::log(p[1]) - std::lgamma(p[0]) + (p[0] - 1.0) * lx - std::pow(x / p[1], 1.0);
        case Family::Weibull:
            return std::log(p[1]) - p[1] * std::log(p[0]) + (p[1] - 1.0) * lx - std::pow(x / p[0], p[1]);
        case Family::Rayleigh: {
            const double b2 = p[0] * p[0];
            return lx - std::log(b2) - x * x / (2.0 * b2);
        }
        case Family::Exponential:
            return -std::log(p[0]) - x / p[0];
        case Family::GeneralizedGamma:
            return std::log(p[2]) - p[1] * std::log(p[0]) - std::lgamma(p[1] / p[2]) + (p[1] - 1.0) * lx -
                   std::pow(x / p[0], p[2]);
    }
    return -kInf;
}

// Density at x = 0 for the positive-support families: x^(shape-1) decides.
double pdf_at_zero(const DistParams& p) {
    auto by_shape = [](double shape, double value_at_one) {
        if (shape < 1.0) return kInf;
        if (shape == 1.0) return value_at_one;
        return 0.0;
    };
    switch (p.family()) {
        case Family::Lognormal:
        case Family::Rayleigh: return 0.0;
        case Family::Gamma: return by_shape(p[0], 1.0 / p[1]);
        case Family::Weibull: return by_shape(p[1], 1.0 / p[0]);
        case Family::Exponential: return 1.0 / p[0];
        case Family::GeneralizedGamma:
            return by_shape(p[1], p[2] / (p[0] * std::tgamma(1.0 / p[2])));
        case Family::Normal: break;
    }
    return 0.0;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // population (1/N)
};

Moments moments(std::span<const double> v) {
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    for (double x : v) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(v.size());
    return m;
}

void validate_sample(Family family, std::span<const double> data) {
    if (data.empty()) throw DegenerateSample("cannot fit an empty sample");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i])) {
            throw DomainError("sample " + std::to_string(i) + " is not finite");
        }
        if (has_positive_support(family) && data[i] <= 0.0) {
            throw NonPositiveSample(std::string(family_name(family)) + " requires x > 0; sample " +
                                    std::to_string(i) + " is " + std::to_string(data[i]));
        }
    }
}

/// Shape of the gamma MLE: root of ln A - digamma(A) = s, s = ln(mean) - mean(ln x).
double solve_gamma_shape(double s, double initial) {
    using boost::math::digamma;
    using boost::math::trigamma;
    auto score = [s](double a) { return std::log(a) - digamma(a) - s; };

    double lo = initial;
    double hi = initial;
    int iterations = 0;
    // score is strictly decreasing: +inf at 0+, -s at infinity.
    while (score(lo) < 0.0) {
        lo *= 0.5;
        if (++iterations > kMaxFitIterations) throw NonConvergence("gamma shape bracket search failed");
    }
    while (score(hi) > 0.0) {
        hi *= 2.0;
        if (++iterations > kMaxFitIterations) throw NonConvergence("gamma shape bracket search failed");
    }
    double a = initial;
    for (; iterations <= kMaxFitIterations; ++iterations) {
        const double g = score(a);
        if (std::abs(g) < kFitTolerance) return a;
        if (g > 0.0) lo = a; else hi = a;
        double next = a - g / (1.0 / a - trigamma(a));
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == a) return a;
        a = next;
    }
    throw NonConvergence("gamma shape Newton iteration hit the iteration cap");
}

struct WeibullScore {
    double value;
    double slope;
    double log_mean_weight;  // ln mean(exp(k z))
};

/// Profile score for the Weibull shape k with z = ln(x / x_max) <= 0.
WeibullScore weibull_score(std::span<const double> z, double z_mean, double k) {
    double sw = 0.0, swz = 0.0, swz2 = 0.0;
    for (double zi : z) {
        const double w = std::exp(k * zi);
        sw += w;
        swz += w * zi;
        swz2 += w * zi * zi;
    }
    const double m1 = swz / sw;
    const double m2 = swz2 / sw;
    return {m1 - 1.0 / k - z_mean, (m2 - m1 * m1) + 1.0 / (k * k),
            std::log(sw / static_cast<double>(z.size()))};
}

DistParams fit_weibull(std::span<const double> data) {
    const double x_max = *std::max_element(data.begin(), data.end());
    const double log_max = std::log(x_max);
    std::vector<double> z(data.size());
    std::transform(data.begin(), data.end(), z.begin(), [log_max](double x) { return std::log(x) - log_max; });
    const Moments mz = moments(z);
    if (!(mz.variance > 0.0)) throw DegenerateSample("Weibull fit needs spread in ln x");

    constexpr double kLo = 1e-3;
    constexpr double kHi = 1e3;
    double lo = kLo;
    double hi = kHi;
    if (weibull_score(z, mz.mean, lo).value > 0.0 || weibull_score(z, mz.mean, hi).value < 0.0) {
        throw NonConvergence("Weibull shape is outside [1e-3, 1e3]");
    }
    // Moment estimate from the spread of ln x: sd(ln x) = pi / (k sqrt 6).
    double k = std::clamp(std::numbers::pi / (std::sqrt(6.0 * mz.variance)), kLo, kHi);
    for (int it = 0; it < kMaxFitIterations; ++it) {
        const WeibullScore s = weibull_score(z, mz.mean, k);
        if (std::abs(s.value) < kFitTolerance) {
            const double scale = x_max * std::exp(s.log_mean_weight / k);
            return DistParams::weibull(scale, k);
        }
        if (s.value < 0.0) lo = k; else hi = k;
        double next = k - s.value / s.slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        k = next;
    }
    throw NonConvergence("Weibull shape iteration hit the iteration cap");
}

DistParams fit_gamma(std::span<const double> data, const Moments& m) {
    double mean_log = 0.0;
    for (double x : data) mean_log += std::log(x);
    mean_log /= static_cast<double>(data.size());
    const double s = std::log(m.mean) - mean_log;
    if (!(s > 0.0)) throw DegenerateSample("gamma fit needs ln(mean) > mean(ln x)");
    const double shape = solve_gamma_shape(s, m.mean * m.mean / m.variance);
    return DistParams::gamma(shape, m.mean / shape);
}

}  // namespace

std::string_view family_name(DistributionFamily family) {
    switch (family) {
        case Family::Normal: return "normal";
        case Family::Lognormal: return "lognormal";
        case Family::Gamma: return "gamma";
        case Family::Weibull: return "weibull";
        case Family::Rayleigh: return "rayleigh";
        case Family::Exponential: return "exponential";
        case Family::GeneralizedGamma: return "generalized_gamma";
    }
    return "unknown";
}

std::optional<DistributionFamily> family_from_name(std::string_view name) {
    for (Family f : {Family::Normal, Family::Lognormal, Family::Gamma, Family::Weibull, Family::Rayleigh,
                     Family::Exponential, Family::GeneralizedGamma}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

bool has_positive_support(DistributionFamily family) { return family != Family::Normal; }

DistParams::DistParams(DistributionFamily family, std::array<double, 3> values, std::size_t count)
    : family_(family), values_(values), count_(count) {}

DistParams DistParams::normal(double mu, double sigma) {
    require(std::isfinite(mu), "normal mu must be finite");
    require(positive(sigma), "normal sigma must be > 0");
    return {Family::Normal, {mu, sigma, 0.0}, 2};
}

DistParams DistParams::lognormal(double mu, double sigma) {
    require(std::isfinite(mu), "lognormal mu must be finite");
    require(positive(sigma), "lognormal sigma must be > 0");
    return {Family::Lognormal, {mu, sigma, 0.0}, 2};
}

DistParams DistParams::gamma(double shape_a, double scale_b) {
    require(positive(shape_a) && positive(scale_b), "gamma A and B must be > 0");
    return {Family::Gamma, {shape_a, scale_b, 0.0}, 2};
}

DistParams DistParams::weibull(double scale_a, double shape_b) {
    require(positive(scale_a) && positive(shape_b), "Weibull A and B must be > 0");
    return {Family::Weibull, {scale_a, shape_b, 0.0}, 2};
}

DistParams DistParams::rayleigh(double scale_b) {
    require(positive(scale_b), "Rayleigh B must be > 0");
    return {Family::Rayleigh, {scale_b, 0.0, 0.0}, 1};
}

DistParams DistParams::exponential(double mean_lambda) {
    require(positive(mean_lambda), "exponential lambda must be > 0");
    return {Family::Exponential, {mean_lambda, 0.0, 0.0}, 1};
}

DistParams DistParams::generalized_gamma(double scale_a, double shape_d, double power_p) {
    require(positive(scale_a) && positive(shape_d) && positive(power_p),
            "generalized gamma a, d, p must be > 0");
    return {Family::GeneralizedGamma, {scale_a, shape_d, power_p}, 3};
}

DistParams DistParams::make(DistributionFamily family, std::span<const double> v) {
    if (v.size() != parameter_count(family)) {
        throw DomainError(std::string(family_name(family)) + " takes " +
                          std::to_string(parameter_count(family)) + " parameters");
    }
    switch (family) {
        case Family::Normal: return normal(v[0], v[1]);
        case Family::Lognormal: return lognormal(v[0], v[1]);
        case Family::Gamma: return gamma(v[0], v[1]);
        case Family::Weibull: return weibull(v[0], v[1]);
        case Family::Rayleigh: return rayleigh(v[0]);
        case Family::Exponential: return exponential(v[0]);
        case Family::GeneralizedGamma: return generalized_gamma(v[0], v[1], v[2]);
    }
    throw DomainError("unknown family");
}

std::span<const std::string_view> DistParams::parameter_names(DistributionFamily family) {
    switch (family) {
        case Family::Normal:
        case Family::Lognormal: return kNormalNames;
        case Family::Gamma:
        case Family::Weibull: return kGammaNames;
        case Family::Rayleigh: return kRayleighNames;
        case Family::Exponential: return kExponentialNames;
        case Family::GeneralizedGamma: return kGenGammaNames;
    }
    return {};
}

double DistParams::get(std::string_view name) const {
    const auto names = parameter_names(family_);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return values_[i];
    }
    throw std::out_of_range(std::string(family_name(family_)) + " has no parameter " + std::string(name));
}

double pdf(const DistParams& params, double x) {
    if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
    if (params.family() == Family::Normal) return std::exp(log_pdf_positive(params, x));
    if (x < 0.0 || std::isinf(x)) return 0.0;
    if (x == 0.0) return pdf_at_zero(params);
    return std::exp(log_pdf_positive(params, x));
}

double cdf(const DistParams& p, double x) {
    if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
    if (p.family() == Family::Normal) {
        return 0.5 * std::erfc(-(x - p[0]) / (p[1] * std::numbers::sqrt2));
    }
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    switch (p.family()) {
        case Family::Lognormal: return 0.5 * std::erfc(-(std::log(x) - p[0]) / (p[1] * std::numbers::sqrt2));
        case Family::Gamma: return boost::math::gamma_p(p[0], x / p[1]);
        case Family::Weibull: return -std::expm1(-std::pow(x / p[0], p[1]));
        case Family::Rayleigh: return -std::expm1(-x * x / (2.0 * p[0] * p[0]));
        case Family::Exponential: return -std::expm1(-x / p[0]);
        case Family::GeneralizedGamma: return boost::math::gamma_p(p[1] / p[2], std::pow(x / p[0], p[2]));
        case Family::Normal: break;
    }
    return 0.0;
}

double log_likelihood(const DistParams& params, std::span<const double> data) {
    double acc = 0.0;
    for (double x : data) {
        if (params.family() != Family::Normal && x <= 0.0) {
            acc += std::log(pdf(params, x));
            continue;
        }
        acc += log_pdf_positive(params, x);
    }
    return acc;
}

DistParams mle_fit(DistributionFamily family, std::span<const double> data) {
    if (family == Family::GeneralizedGamma) {
        throw UnsupportedFamily("generalized gamma is evaluation/sampling only; no fitter is provided");
    }
    validate_sample(family, data);
    const Moments m = moments(data);
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    if (*lo == *hi || !(m.variance > 0.0)) throw DegenerateSample("sample has zero variance");

    switch (family) {
        case Family::Normal: return DistParams::normal(m.mean, std::sqrt(m.variance));
        case Family::Lognormal: {
            std::vector<double> logs(data.size());
            std::transform(data.begin(), data.end(), logs.begin(), [](double x) { return std::log(x); });
            const Moments ml = moments(logs);
            if (!(ml.variance > 0.0)) throw DegenerateSample("ln x has zero variance");
            return DistParams::lognormal(ml.mean, std::sqrt(ml.variance));
        }
        case Family::Gamma: return fit_gamma(data, m);
        case Family::Weibull: return fit_weibull(data);
        case Family::Rayleigh: {
            double sum_sq = 0.0;
            for (double x : data) sum_sq += x * x;
            return DistParams::rayleigh(std::sqrt(sum_sq / (2.0 * static_cast<double>(data.size()))));
        }
        case Family::Exponential: return DistParams::exponential(m.mean);
        case Family::GeneralizedGamma: break;
    }
    throw UnsupportedFamily("unknown family");
}

double draw(const DistParams& p, Rng& rng) {
    switch (p.family()) {
        case Family::Normal: return std::normal_distribution<double>(p[0], p[1])(rng);
        case Family::Lognormal: return std::lognormal_distribution<double>(p[0], p[1])(rng);
        case Family::Gamma: return std::gamma_distribution<double>(p[0], p[1])(rng);
        case Family::Weibull: return std::weibull_distribution<double>(p[1], p[0])(rng);
        case Family::Rayleigh: {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            return p[0] * std::sqrt(-2.0 * std::log1p(-u));
        }
        case Family::Exponential: return std::exponential_distribution<double>(1.0 / p[0])(rng);
        case Family::GeneralizedGamma: {
            const double g = std::gamma_distribution<double>(p[1] / p[2], 1.0)(rng);
            return p[0] * std::pow(g, 1.0 / p[2]);
        }
    }
    return 0.0;
}

SampleSet sample(const DistParams& params, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    SampleSet out;
    out.values.resize(count);
    for (auto& v : out.values) v = draw(params, rng);
    return out;
}

}  // namespace rcskit
