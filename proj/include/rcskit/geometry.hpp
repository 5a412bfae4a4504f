#pragma once

namespace rcskit {

/// Speed of light in vacuum (m/s).
inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Planar bistatic scene: Tx at (-a, 0), Rx at (a, 0), target at (0, y).
///
/// a = 0 is accepted and models the ideal monostatic limit where Tx and Rx coincide.
class BistaticGeometry {
public:
    /// Throws DomainError unless a >= 0 and y > 0 (both finite).
    BistaticGeometry(double half_baseline_a, double target_offset_y);

    double half_baseline_a() const noexcept { return a_; }
    double target_offset_y() const noexcept { return y_; }

private:
    double a_;
    double y_;
};

/// Largest physical dimension S of a target (m).
class TargetExtent {
public:
    explicit TargetExtent(double largest_dimension_s);
    double largest_dimension_s() const noexcept { return s_; }

private:
    double s_;
};

/// Tx-target distance, equal to the Rx-target distance: sqrt(a^2 + y^2).
double bistatic_distance(const BistaticGeometry& geom);

/// Tx-target-Rx angle in degrees, arccos(1 - 2 (a/d)^2).
double bistatic_angle_deg(const BistaticGeometry& geom);

/// Near-field boundary 2 S^2 / lambda in metres.
double near_field_distance(const TargetExtent& extent, double frequency_hz);

inline double wavelength_from_frequency(double frequency_hz) { return kSpeedOfLight / frequency_hz; }

}  // namespace rcskit
