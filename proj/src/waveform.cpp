#include "rcskit/waveform.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "rcskit/errors.hpp"
#include "rcskit/link_budget.hpp"

namespace rcskit {

ZcSequence::ZcSequence(std::size_t length, std::size_t root, std::vector<Complex> samples)
    : root_(root), samples_(std::move(samples)) {
    if (length == 0 || samples_.size() != length) {
        throw LengthMismatch("ZC sample count does not match its length");
    }
}

ZcSequence zc_generate(std::size_t length, std::size_t root) {
    if (length == 0 || root == 0) {
        throw DomainError("ZC length and root must be positive");
    }
    if (std::gcd(root, length) != 1) {
        throw DomainError("ZC root " + std::to_string(root) + " is not coprime with length " +
                          std::to_string(length));
    }
    // Phase index u n (n + N mod 2) is reduced modulo 2N in integers so the
    // trigonometric argument stays in [0, 2 pi).
    const std::size_t two_n = 2 * length;
    const std::size_t parity = length % 2;
    std::vector<Complex> samples(length);
    for (std::size_t n = 0; n < length; ++n) {
        const std::size_t k = (root % two_n) * ((n * (n + parity)) % two_n) % two_n;
        const double phase = -std::numbers::pi * static_cast<double>(k) / static_cast<double>(length);
        samples[n] = std::polar(1.0, phase);
    }
    return ZcSequence(length, root, std::move(samples));
}

std::vector<Complex> periodic_correlation(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw LengthMismatch("correlation operands differ in length");
    }
    const std::size_t n_len = a.size();
    std::vector<Complex> out(n_len);
    for (std::size_t k = 0; k < n_len; ++k) {
        Complex acc{};
        for (std::size_t n = 0; n < n_len; ++n) {
            acc += a[n] * std::conj(b[(n + n_len - k) % n_len]);
        }
        out[k] = acc;
    }
    return out;
}

std::vector<Complex> circular_convolve(std::span<const Complex> probe, std::span<const Complex> channel) {
    if (probe.size() != channel.size()) {
        throw LengthMismatch("probe and channel differ in length");
    }
    const std::size_t n_len = probe.size();
    std::vector<Complex> out(n_len);
    for (std::size_t k = 0; k < n_len; ++k) {
        if (channel[k] == Complex{}) continue;
        for (std::size_t n = 0; n < n_len; ++n) {
            out[(n + k) % n_len] += channel[k] * probe[n];
        }
    }
    return out;
}

CirCapture cir_extract(std::span<const Complex> received, const ZcSequence& probe, double frequency_hz,
                       std::string scenario_tag) {
    if (received.size() != probe.length()) {
        throw LengthMismatch("received block length " + std::to_string(received.size()) +
                             " does not match probe length " + std::to_string(probe.length()));
    }
    CirCapture cir;
    cir.taps = periodic_correlation(received, probe.samples());
    const double scale = 1.0 / static_cast<double>(probe.length());
    for (auto& t : cir.taps) t *= scale;
    cir.frequency_hz = frequency_hz;
    cir.scenario_tag = std::move(scenario_tag);
    return cir;
}

double total_power(std::span<const Complex> taps) {
    double acc = 0.0;
    for (const auto& t : taps) acc += std::norm(t);
    return acc;
}

double total_power(const CirCapture& cir) { return total_power(cir.taps); }

PowerBudget target_power(double p_tot, double p_back, double p_noise) {
    PowerBudget b{p_tot, p_back, p_noise, p_tot - p_back - p_noise, false};
    if (b.p_tar < 0.0) {
        b.p_tar = 0.0;
        b.clamped = true;
    }
    return b;
}

double noise_power(const NoiseSource& source, const CirCapture* noise_capture) {
    if (source.kind == NoiseSource::Kind::FloorDb) {
        return db_to_watts(source.floor_db);
    }
    if (noise_capture == nullptr) {
        throw DomainError("noise source is a capture but none was supplied");
    }
    return total_power(*noise_capture);
}

PowerBudget account_target_power(const CirCapture& target, const CirCapture& background,
                                 const NoiseSource& noise, const CirCapture* noise_capture) {
    if (target.taps.size() != background.taps.size()) {
        throw LengthMismatch("target and background captures differ in length");
    }
    return target_power(total_power(target), total_power(background), noise_power(noise, noise_capture));
}

}  // namespace rcskit
