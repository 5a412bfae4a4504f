#pragma once

namespace rcskit {

/// Radar-equation link parameters. All quantities linear (W, gain ratios, m).
struct LinkParams {
    double tx_power_w = 1.0;
    double tx_gain = 1.0;
    double rx_gain = 1.0;
    double wavelength_m = 0.012;
    double system_loss = 1.0;

    /// Throws DomainError if any field is non-positive or non-finite.
    void validate() const;
};

/// System factor K(lambda, d) mapping target power (W) to RCS (m^2).
///
/// K is tied to the (wavelength, distance) pair it was measured at; reuse at a
/// different pair beyond a relative tolerance of kMatchTolerance is refused.
class CalibrationFactor {
public:
    static constexpr double kMatchTolerance = 1e-6;

    CalibrationFactor(double k_value, double wavelength_m, double distance_m);

    double k_value() const noexcept { return k_; }
    double wavelength_m() const noexcept { return lambda_; }
    double distance_m() const noexcept { return d_; }

    bool matches(double wavelength_m, double distance_m) const noexcept;
    /// Throws DomainError when matches() is false.
    void require_match(double wavelength_m, double distance_m) const;

private:
    double k_;
    double lambda_;
    double d_;
};

/// Received target power for RCS sigma at Tx/Rx-target distance d (bistatic radar equation).
double target_power_forward(const LinkParams& link, double d, double sigma);

/// One-way Friis received power at distance d.
double free_space_rx_power(const LinkParams& link, double d);

/// K = P_rx / (4 pi d^2) from a free-space reference measurement.
CalibrationFactor calibrate(double p_rx_measured, double d, double wavelength_m);

/// sigma = P_tar / K.
double invert_rcs(const CalibrationFactor& cal, double p_tar);

/// Same as invert_rcs(cal, p_tar) after checking that cal was taken at (wavelength_m, d).
double invert_rcs(const CalibrationFactor& cal, double p_tar, double wavelength_m, double d);

double watts_to_db(double watts);
double db_to_watts(double db);

}  // namespace rcskit
