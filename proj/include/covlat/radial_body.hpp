#pragma once

// Nearly spherical origin-symmetric bodies in R^3 given by r_K = 1 + rho,
// with rho an even expansion in real spherical harmonics.
//
// Basis: real harmonics orthonormal for the normalized surface measure
// sigma (sigma(S^2) = 1). With Y_l^m the complex harmonics orthonormal on
// dOmega (Condon-Shortley phase included, as std::sph_legendre):
//   order 0:  sqrt(4 pi) Y_l^0
//   order m>0: sqrt(8 pi) Re Y_l^m   (cos m phi)
//   order m<0: sqrt(8 pi) Im Y_l^|m| (sin |m| phi)

#include "covlat/harmonic.hpp"

#include <array>
#include <string>

namespace covlat {

using Vec3 = std::array<double, 3>;

/// Real sigma-orthonormal spherical harmonic at a unit vector.
double real_sph_harmonic(int l, int m, const Vec3& unit);

struct HarmonicTerm {
    int degree = 0;
    int order = 0;
    double coefficient = 0;
};

class RadialBody {
public:
    RadialBody() = default;
    /// Rejects odd degrees and |order| > degree; repeated (l, m) are summed.
    explicit RadialBody(const std::vector<HarmonicTerm>& terms);

    /// rho at a direction (need not be unit length).
    double rho(const Vec3& dir) const;
    double radius(const Vec3& dir) const { return 1.0 + rho(dir); }

    int max_degree() const;
    /// sum |c_lm| sqrt(2l+1): a certified bound on max |rho| over the sphere.
    double eps() const;
    /// No nonzero degree-0 or degree-2 coefficients.
    bool normalized() const;
    const HarmonicExpansion<double>& expansion() const { return coeffs_; }

    /// vol K / vol B^3 = int (1 + rho)^3 dsigma by product Gauss quadrature
    /// exact for the band limit of (1 + rho)^3.
    double volume_ratio() const;
    /// max |rho| over a Fibonacci grid of `points` directions.
    double grid_max_abs_rho(std::size_t points = 20000) const;

private:
    HarmonicExpansion<double> coeffs_;
};

/// Pure zonal degree-l body rho = amplitude P_l(<dir, e_z>); max |rho| = amplitude.
RadialBody zonal_body(int l, double amplitude);

/// Deterministic quasi-uniform unit vectors (golden-angle spiral).
std::vector<Vec3> fibonacci_sphere(std::size_t points);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

RadialBody read_body_json(const std::string& path);

}  // namespace covlat
