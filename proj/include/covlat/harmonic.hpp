#pragma once

// Legendre machinery for the 24-vertex zonal measure of the truncated
// octahedron: exact and mod-16 values of the rescaled polynomials
// Q_l(t) = 5^l l! P_l(t) at t = k/5, the multipliers c_l, and the
// degree-wise multiplier transform.

#include "covlat/exact.hpp"
#include "covlat/execution.hpp"

#include <array>
#include <map>
#include <utility>

namespace covlat {

/// Q_l(k/5) via Q_{l+1} = (2l+1) k Q_l - 25 l^2 Q_{l-1}, Q_0 = 1, Q_1 = k.
Int rescaled_q(unsigned l, int k);
/// Same recurrence in Z/16.
unsigned rescaled_q_mod16(unsigned l, int k);
/// Q_0..Q_lmax at t = k/5, exact.
std::vector<Int> rescaled_q_table(unsigned lmax, int k);
std::vector<unsigned> rescaled_q_mod16_table(unsigned lmax, int k);

/// Exact P_l(t) by the three-term recurrence.
Rat legendre_rational(unsigned l, const Rat& t);
double legendre(unsigned l, double t);

/// Weight of P_l(k/5) in c_l, indexed by k = 0..5.
inline constexpr std::array<int, 6> cl_weights = {1, 2, 4, 1, 3, 1};

/// c_l = P_l(1) + 3 P_l(4/5) + P_l(3/5) + 4 P_l(2/5) + 2 P_l(1/5) + P_l(0).
Rat c_l(unsigned l);

struct ClCertificate {
    enum class Status { Zero, NonzeroExact, NonzeroMod16, Undecided };
    unsigned l = 0;
    std::optional<Rat> exact;  ///< present for l <= exact_limit
    unsigned residue = 0;      ///< 5^l l! c_l mod 16
    Status status = Status::Zero;

    bool nonzero() const { return status == Status::NonzeroExact || status == Status::NonzeroMod16; }
};

std::string_view to_string(ClCertificate::Status s);

/// Certificates for l = 0..lmax: exact values up to exact_limit, and for
/// l >= 6 the residue of 5^l l! c_l mod 16, which is never 0.
/// l < 6 beyond exact_limit is still decided exactly.
std::vector<ClCertificate> certify_cl(unsigned lmax, unsigned exact_limit = 200);

struct EnvelopeReport {
    unsigned lmax = 0;
    double c_empirical = 0;  ///< max over even 2 <= l <= lmax of |c_l - 1| sqrt(l)
    unsigned worst_l = 0;
    double c_bernstein = 0;  ///< sum of w_k (pi sqrt(1-t_k^2)/2)^{-1/2} over interior nodes
    bool node_bounds_hold = true;  ///< |P_l(t_k)| < (pi l sqrt(1-t_k^2)/2)^{-1/2} everywhere checked
    double tolerance = 1e-9;
};

EnvelopeReport bernstein_envelope(unsigned lmax);

struct MultiplierSpectrum {
    std::vector<Rat> cosines;      ///< <p, x_i>/<p, p>, sorted descending
    std::vector<Rat> multipliers;  ///< m_l = (1/2) sum_i P_l(cos_i), l = 0..lmax
    std::vector<Rat> c;            ///< c_l, l = 0..lmax
};

class VertexSetMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

/// Multipliers of the zonal measure (1/2) sum_i delta_{x_i} seen from `pole`.
/// The vertices must all have the pole's norm and show the cosine
/// pattern of the truncated octahedron.
MultiplierSpectrum zonal_spectrum(std::span<const VecQ> vertices, std::span<const Rat> pole, unsigned lmax);

/// Spherical-harmonic coefficients keyed by (degree, order).
template <class Scalar>
using HarmonicExpansion = std::map<std::pair<int, int>, Scalar>;

/// Multiplies degree l by c_l. Only even degrees other than 2 are accepted
/// unless allow_degree_two is set, in which case degree 2 maps to zero.
HarmonicExpansion<Rat> phi_transform(const HarmonicExpansion<Rat>& f, bool allow_degree_two = false);
HarmonicExpansion<Rat> phi_inverse(const HarmonicExpansion<Rat>& f);
HarmonicExpansion<double> phi_transform(const HarmonicExpansion<double>& f);

}  // namespace covlat
