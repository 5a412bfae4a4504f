#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rcskit {

using Complex = std::complex<double>;

/// Zadoff-Chu probe of length N and root u, gcd(u, N) = 1.
class ZcSequence {
public:
    ZcSequence(std::size_t length, std::size_t root, std::vector<Complex> samples);

    std::size_t length() const noexcept { return samples_.size(); }
    std::size_t root() const noexcept { return root_; }
    std::span<const Complex> samples() const noexcept { return samples_; }
    const Complex& operator[](std::size_t n) const { return samples_[n]; }

private:
    std::size_t root_;
    std::vector<Complex> samples_;
};

/// Channel impulse response captured with a probe of the same length.
struct CirCapture {
    std::vector<Complex> taps;
    double frequency_hz = 0.0;
    std::string scenario_tag;
};

/// Power accounting for one target capture. p_tar is clamped at zero when the
/// background and noise exceed the total; `clamped` records that it happened.
struct PowerBudget {
    double p_tot = 0.0;
    double p_back = 0.0;
    double p_noise = 0.0;
    double p_tar = 0.0;
    bool clamped = false;
};

/// x[n] = exp(-j pi u n (n + N mod 2) / N). Throws DomainError when gcd(u, N) != 1.
ZcSequence zc_generate(std::size_t length, std::size_t root);

/// Periodic cross-correlation r[k] = sum_n a[n] conj(b[(n - k) mod N]).
std::vector<Complex> periodic_correlation(std::span<const Complex> a, std::span<const Complex> b);

/// Circular convolution of a probe with a channel tap vector (lengths must match).
std::vector<Complex> circular_convolve(std::span<const Complex> probe, std::span<const Complex> channel);

/// taps[k] = (1/N) sum_n received[n] conj(probe[(n - k) mod N]).
CirCapture cir_extract(std::span<const Complex> received, const ZcSequence& probe,
                       double frequency_hz = 0.0, std::string scenario_tag = {});

/// Sum of |h(n)|^2.
double total_power(const CirCapture& cir);
double total_power(std::span<const Complex> taps);

PowerBudget target_power(double p_tot, double p_back, double p_noise);

/// Where the noise term of the power budget comes from.
struct NoiseSource {
    enum class Kind { Capture, FloorDb };
    Kind kind = Kind::Capture;
    double floor_db = -72.0;

    static NoiseSource from_capture() { return {}; }
    static NoiseSource from_floor_db(double db) { return {Kind::FloorDb, db}; }
};

/// Noise power for a budget: total power of a noise-only capture, or the configured floor.
double noise_power(const NoiseSource& source, const CirCapture* noise_capture);

/// Full chain: background, target and optional noise-only captures to a budget.
PowerBudget account_target_power(const CirCapture& target, const CirCapture& background,
                                 const NoiseSource& noise, const CirCapture* noise_capture = nullptr);

}  // namespace rcskit
