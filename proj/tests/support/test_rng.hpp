#pragma once

#include <cmath>
#include <random>

#include "bellpoly/direction.hpp"

namespace testsupport {

inline double uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bellpoly::Direction random_direction(std::mt19937_64& rng) {
    const double z = 2.0 * uniform(rng) - 1.0;
    const double phi = 2.0 * 3.14159265358979323846 * uniform(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return bellpoly::Direction(s * std::cos(phi), s * std::sin(phi), z);
}

}  // namespace testsupport
