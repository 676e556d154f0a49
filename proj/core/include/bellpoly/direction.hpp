#pragma once

namespace bellpoly {

/// A measurement direction: unit vector in R^3.
///
/// The polar decomposition convention is theta in [0, pi] measured from +z
/// and azimuth phi in (-pi, pi]; at the poles (theta = 0 or pi) the azimuth
/// is fixed to 0 so construction is deterministic.
class Direction {
public:
    /// Requires |(x,y,z)| = 1 within 1e-12, otherwise throws
    /// NormalizationError.
    Direction(double x, double y, double z);

    /// Rescales an arbitrary nonzero vector to unit length.
    static Direction normalized(double x, double y, double z);

    /// theta: polar angle from +z in radians, phi: azimuth in radians.
    static Direction from_polar(double theta, double phi);

    /// Direction in the x-z plane at `deg` degrees from +z. This is the
    /// convention used for CLI geometry angles.
    static Direction from_plane_angle_deg(double deg);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double z() const noexcept { return z_; }

    double polar() const;    // theta in [0, pi]
    double azimuth() const;  // phi, 0 at the poles

    double dot(const Direction& other) const noexcept;

    /// Angle between the two directions, in [0, pi].
    double angle_to(const Direction& other) const;

    Direction operator-() const { return Direction(-x_, -y_, -z_); }

private:
    double x_, y_, z_;
};

}  // namespace bellpoly
