#include "rcskit/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rcskit/errors.hpp"

namespace rcskit {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(what) + " must be finite and > 0");
    }
}

bool close_relative(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

void LinkParams::validate() const {
    require_positive(tx_power_w, "transmit power");
    require_positive(tx_gain, "transmit gain");
    require_positive(rx_gain, "receive gain");
    require_positive(wavelength_m, "wavelength");
    require_positive(system_loss, "system loss");
}

CalibrationFactor::CalibrationFactor(double k_value, double wavelength_m, double distance_m)
    : k_(k_value), lambda_(wavelength_m), d_(distance_m) {
    require_positive(k_, "calibration factor");
    require_positive(lambda_, "wavelength");
    require_positive(d_, "distance");
}

bool CalibrationFactor::matches(double wavelength_m, double distance_m) const noexcept {
    return close_relative(lambda_, wavelength_m, kMatchTolerance) &&
           close_relative(d_, distance_m, kMatchTolerance);
}

void CalibrationFactor::require_match(double wavelength_m, double distance_m) const {
    if (!matches(wavelength_m, distance_m)) {
        throw DomainError("calibration factor was taken at a different (wavelength, distance) pair");
    }
}

double target_power_forward(const LinkParams& link, double d, double sigma) {
    link.validate();
    require_positive(d, "distance");
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw DomainError("RCS must be finite and >= 0");
    }
    const double d2 = d * d;
    return link.tx_power_w * link.tx_gain * link.rx_gain * sigma * link.wavelength_m *
           link.wavelength_m * link.system_loss / (kFourPi * kFourPi * kFourPi * d2 * d2);
}

double free_space_rx_power(const LinkParams& link, double d) {
    link.validate();
    require_positive(d, "distance");
    return link.tx_power_w * link.tx_gain * link.rx_gain * link.wavelength_m * link.wavelength_m *
           link.system_loss / (kFourPi * kFourPi * d * d);
}

CalibrationFactor calibrate(double p_rx_measured, double d, double wavelength_m) {
    require_positive(p_rx_measured, "received power");
    require_positive(d, "distance");
    require_positive(wavelength_m, "wavelength");
    return CalibrationFactor(p_rx_measured / (kFourPi * d * d), wavelength_m, d);
}

double invert_rcs(const CalibrationFactor& cal, double p_tar) {
    if (!std::isfinite(p_tar) || p_tar < 0.0) {
        throw DomainError("target power must be finite and >= 0");
    }
    return p_tar / cal.k_value();
}

double invert_rcs(const CalibrationFactor& cal, double p_tar, double wavelength_m, double d) {
    cal.require_match(wavelength_m, d);
    return invert_rcs(cal, p_tar);
}

double watts_to_db(double watts) {
    require_positive(watts, "power");
    return 10.0 * std::log10(watts);
}

double db_to_watts(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace rcskit
