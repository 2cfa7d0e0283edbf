// Seeded sampling helpers with platform-independent output: the standard
// distributions are implementation-defined, so these map raw 64-bit engine
// output directly.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "relcorr/kinematics.hpp"

namespace relcorr
{

class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform on the unit sphere.
    Direction direction()
    {
        double const z = uniform(-1, 1);
        double const phi = uniform(-std::numbers::pi, std::numbers::pi);
        double const r = std::sqrt(std::max(0.0, 1 - z * z));
        return Direction::normalized(Vec3{r * std::cos(phi), r * std::sin(phi), z});
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace relcorr
