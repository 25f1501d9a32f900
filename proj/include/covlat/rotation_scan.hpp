#pragma once

// Rotation scan: build a cover for U(K) over a deterministic grid of
// rotations U and keep the best determinant.

#include "covlat/execution.hpp"
#include "covlat/perturbation.hpp"

namespace covlat {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Identity followed by a Kronecker sequence in [0,1)^3 pushed through
/// Shoemake's uniform quaternion map. Seed-free; grid(n) is a prefix of
/// grid(m) for n <= m.
std::vector<Mat3> rotation_grid(std::size_t size);

Vec3 apply(const Mat3& u, const Vec3& v);
Vec3 apply_transpose(const Mat3& u, const Vec3& v);

/// 5 sqrt(5) pi / 24: thinnest lattice covering density of the 3-ball.
double ball_covering_density();

struct RotationSample {
    double linear_gain = 0;   ///< trace M = (1/8) sum of the 24 rho values
    double det_ratio = 0;
    double lower_bound = 0;
    double delta = 0;
    double delta_bound = 0;   ///< 1 - det_ratio / volume_ratio
    double bracket = 0;       ///< 1 - lower_bound: the bound's value of 1 - det_ratio
};

struct ScanReport {
    std::size_t grid_size = 0;
    double volume_ratio = 1;
    std::size_t best = 0;            ///< argmin of delta_bound (lowest index on ties)
    Mat3 best_rotation{};
    RotationSample best_sample;
    double min_bracket = 0;
    double harmonic_estimate = 0;    ///< min over the sphere of -(1/4) Phi[rho]
    double ball_density = 0;
    double density = 0;              ///< ball_density * volume_ratio / best det_ratio
    std::vector<RotationSample> samples;
};

ScanReport rotation_scan(const RadialBody& body, const ReferenceFrame& frame, std::size_t grid_size = 1000,
                         Execution exec = Execution::parallel, const CoverOptions& opts = {});

/// min over directions of -(1/4) sum_l c_l rho_l, on a Fibonacci grid.
double harmonic_estimate(const RadialBody& body, std::size_t points = 20000);

}  // namespace covlat
