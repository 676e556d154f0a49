#include "bellpoly/direction.hpp"

#include <algorithm>
#include <cmath>

#include "bellpoly/errors.hpp"

namespace bellpoly {

namespace {
constexpr double kUnitTolerance = 1e-12;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

Direction::Direction(double x, double y, double z) : x_(x), y_(y), z_(z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitTolerance) {
        throw NormalizationError("direction is not unit length (|v| = " +
                                 std::to_string(norm) + ")");
    }
}

Direction Direction::normalized(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(norm) || norm < 1e-300) {
        throw NormalizationError("cannot normalize a zero or non-finite vector");
    }
    return Direction(x / norm, y / norm, z / norm);
}

Direction Direction::from_polar(double theta, double phi) {
    const double s = std::sin(theta);
    return Direction(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
}

Direction Direction::from_plane_angle_deg(double deg) {
    const double rad = deg * kPi / 180.0;
    return Direction(std::sin(rad), 0.0, std::cos(rad));
}

double Direction::polar() const { return std::acos(std::clamp(z_, -1.0, 1.0)); }

double Direction::azimuth() const {
    if (std::abs(x_) < 1e-15 && std::abs(y_) < 1e-15) return 0.0;  // pole convention
    return std::atan2(y_, x_);
}

double Direction::dot(const Direction& other) const noexcept {
    return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
}

double Direction::angle_to(const Direction& other) const {
    return std::acos(std::clamp(dot(other), -1.0, 1.0));
}

}  // namespace bellpoly
