#include "rcskit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rcskit/errors.hpp"

namespace rcskit {

BistaticGeometry::BistaticGeometry(double half_baseline_a, double target_offset_y)
    : a_(half_baseline_a), y_(target_offset_y) {
    if (!std::isfinite(a_) || a_ < 0.0) {
        throw DomainError("half baseline must be finite and >= 0, got " + std::to_string(a_));
    }
    if (!std::isfinite(y_) || y_ <= 0.0) {
        throw DomainError("target offset must be finite and > 0, got " + std::to_string(y_));
    }
}

TargetExtent::TargetExtent(double largest_dimension_s) : s_(largest_dimension_s) {
    if (!std::isfinite(s_) || s_ <= 0.0) {
        throw DomainError("target extent must be finite and > 0");
    }
}

double bistatic_distance(const BistaticGeometry& geom) {
    return std::hypot(geom.half_baseline_a(), geom.target_offset_y());
}

double bistatic_angle_deg(const BistaticGeometry& geom) {
    const double ratio = geom.half_baseline_a() / bistatic_distance(geom);
    // Clamp guards the acos argument against rounding just outside [-1, 1].
    const double c = std::clamp(1.0 - 2.0 * ratio * ratio, -1.0, 1.0);
    return std::acos(c) * 180.0 / std::numbers::pi;
}

double near_field_distance(const TargetExtent& extent, double frequency_hz) {
    if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0) {
        throw DomainError("frequency must be > 0");
    }
    const double s = extent.largest_dimension_s();
    return 2.0 * s * s / wavelength_from_frequency(frequency_hz);
}

}  // namespace rcskit
