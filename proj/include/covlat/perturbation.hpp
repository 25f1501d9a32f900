#pragma once

// Constructive covering lattices near a critical lattice.
//
// Frames: the covering construction works in the Euclidean frame of a
// lattice with a rational embedding, at the lattice's own scale (vertices
// of maximal simplices have |x|^2 = mu2). A radial deviation rho of the
// unit-radius body corresponds to mu2 * rho on that scale. Extension
// witnesses work in lattice coordinates with the Gram metric.

#include "covlat/eutaxy.hpp"
#include "covlat/radial_body.hpp"

#include <functional>

namespace covlat {

// ------------------------------------------------------- circumradius

/// Squared circumradius of T S (T acts on coordinates, metric gram) from the
/// linear system in (centre, R^2 - |centre|^2).
Rat exact_cr_after(const MatQ& t, std::span<const VecQ> vertices, const SymMapQ& gram);
Rat exact_cr_after(const MatQ& t, const PrimitiveSimplex& s, const SymMapQ& gram);

/// Circumcentre of T S; |centre|^2 is the exact second-order remainder.
VecQ centre_after(const MatQ& t, std::span<const VecQ> vertices, const SymMapQ& gram);

/// 1 + <m, Q_S> for a covariant perturbation m of the Gram matrix
/// (m = T^T G T - G) and the normalized map of s: the first-order value
/// of cr(TS)^2 / cr(S)^2.
Rat first_order_cr(const SymMapQ& m, const PrimitiveSimplex& s);

// ------------------------------------------------------- Euclidean frame

/// X(lattice) mapped into R^n by the embedding, with eutaxy data.
struct ReferenceFrame {
    LatticeModel lattice;
    Rat mu2;
    std::vector<PrimitiveSimplex> simplices;  ///< Euclidean vertex vectors
    std::vector<SymMapQ> maps;                ///< normalized Euclidean maps
    VecQ upsilon;                             ///< per simplex, sum upsilon_i maps_i = Id
};

/// Requires an embedding and a critically semi-eutactic X.
ReferenceFrame reference_frame(const LatticeModel& lat);

struct TreqnSolution {
    SymMapQ m;
    std::vector<VecQ> t;  ///< per simplex, on the lattice's scale
    VecQ rho_weighted;    ///< rho_i = sum_j alpha_ij rho_ij
};

/// Solves <x_ij, M x_ij + t_i> = mu2 rho_ij with M the least-norm solution
/// of <M, Q_i> = rho_i. rho is indexed [simplex][vertex]; values for S and
/// -S must agree.
TreqnSolution solve_treqn(const std::vector<VecQ>& rho, const ReferenceFrame& frame);

// ------------------------------------------------------- covering construction

/// Radial deviation rho(direction), the body being {r u : r <= 1 + rho(u)}.
using RadialFunction = std::function<double(const Vec3&)>;

struct CoverOptions {
    bool allow_unnormalized = false;  ///< accept degree-0/2 content (engine tests)
    double max_eps = 0.1;
    double tolerance = 1e-12;         ///< radial evaluation error budget
    /// Newton steps on the exact radial targets after the first-order
    /// solve; 0 is the plain first-order construction.
    int refine_steps = 0;
};

struct VertexCheck {
    std::size_t simplex = 0, vertex = 0;
    double contracted_norm = 0;  ///< (1 - delta) |y_ij| on the unit scale
    double radius = 0;           ///< r_K in the direction of y_ij
    bool inside = false;
};

struct CoverConstruction {
    std::vector<VecQ> rho;       ///< rho_ij, exact images of the evaluated doubles
    TreqnSolution solution;
    std::vector<double> delta_ij;
    Rat delta;                   ///< contraction, dyadic, >= max delta_ij (0 if within tolerance)
    int refine_steps = 0;
    MatQ unscaled_map;           ///< Id + M, or the composed Newton maps when refined
    MatQ linear_map;             ///< (1 - delta) unscaled_map
    MatQ basis_out;              ///< linear_map * embedding, on the lattice's scale
    Rat det_ratio;               ///< (1 - delta)^n det(unscaled_map)
    Rat linear_gain;             ///< sum upsilon_i alpha_ij rho_ij = trace M
    Rat rho_l1;                  ///< sum |rho_ij|
    Rat eps_prime;               ///< measured constant in the determinant bound
    Rat lower_bound;             ///< 1 + linear_gain - eps_prime * rho_l1
    double eps_prime_tangent = 0;  ///< same constant from the tangent-line construction
    double eps = 0;
    double tolerance = 0;
    std::vector<VertexCheck> checks;
    bool verified = false;
};

class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

CoverConstruction build_cover(const RadialFunction& rho, double eps, bool normalized, const ReferenceFrame& frame,
                              const CoverOptions& opts = {});
CoverConstruction build_cover(const RadialBody& body, const ReferenceFrame& frame, const CoverOptions& opts = {});

// ------------------------------------------------------- augmented ball

/// conv(r B, +-(1 + eps) pole) with r^2 = <pole, pole>_gram.
struct AugmentedBall {
    Rat eps;
    VecQ pole;
};

bool member_augmented_ball(std::span<const Rat> q, const AugmentedBall& b, const SymMapQ& gram);
bool member_augmented_ball(std::span<const Rat> q, const AugmentedBall& b);

// ------------------------------------------------------- extension witness

struct ExtensionWitness {
    std::size_t removed_pair = 0;
    std::size_t pole_vertex = 0;
    SymMapQ farkas;          ///< covariant N: <N, Q> < 0 on kept maps, <N, G^{-1}> > 0
    Rat s;
    MatQ t;                  ///< Id + (s/2) G^{-1} N, on coordinates
    Rat det_t;
    std::vector<Rat> kept_cr2;
    Rat mu2;
    AugmentedBall ball;
    Rat translation;         ///< T S_0 + translation * pole lies in the ball
    std::vector<bool> memberships;
    std::optional<MatQ> t_euclidean;
};

/// Raised when the pair can be removed while staying semi-eutactic.
class ExtensibleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Searches s = 2^-k (k <= max_halvings) and a few translations along the
/// pole. nullopt when nothing is found below the cutoff.
std::optional<ExtensionWitness> extension_witness(const LatticeModel& lat, std::size_t pair, const Rat& eps,
                                                  int max_halvings = 60);

/// Exact re-check of every stored claim.
bool verify_witness(const LatticeModel& lat, const ExtensionWitness& w);

}  // namespace covlat
