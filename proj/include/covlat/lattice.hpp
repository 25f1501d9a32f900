#pragma once

// Lattices in coordinates: a lattice is Z^n with a rational Gram matrix,
// optionally realized in R^n by a rational basis ("embedding", columns are
// basis vectors). All geometry below is exact.

#include "covlat/exact.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace covlat {

struct DeloneSimplex {
    std::vector<VecQ> vertices;  ///< n+1 integer coordinate vectors, vertices[0] = 0
    std::vector<int> label;      ///< generating permutation of {1..n+1}, empty if none
};

struct LatticeModel {
    int n = 0;
    SymMapQ gram;
    std::optional<MatQ> embedding;
    std::vector<DeloneSimplex> delone_classes;
};

/// A_n^* for 2 <= n <= 5 with the integral Gram matrix (n+1) I - J, i.e.
/// (n+1) <f_i, f_j> for the projected generators f_i. For n = 3 the
/// body-centred cubic embedding f_1 = (1,1,1), f_2 = (1,-1,-1),
/// f_3 = (-1,1,-1) is attached.
LatticeModel build_anstar(int n);

/// Z^n with Gram g triangulated by the n! Kuhn simplices of the unit cube.
LatticeModel kuhn_lattice(const SymMapQ& gram);

/// Change of lattice basis by an integral unimodular u (new coords = u^{-1} old).
LatticeModel change_basis(const LatticeModel& lat, const MatQ& u);

class DegenerateSimplex : public DomainError {
public:
    using DomainError::DomainError;
};

struct Circumsphere {
    VecQ center;
    VecQ alpha;  ///< barycentric coordinates of the centre
    Rat cr2;
};

/// Centre equidistant (in the Gram metric) from the n+1 given points.
Circumsphere circumsphere(std::span<const VecQ> vertices, const SymMapQ& gram);
Circumsphere circumcenter(const DeloneSimplex& s, const SymMapQ& gram);

/// Vertices relative to the circumcentre, negated: x_j = c - v_j.
struct PrimitiveSimplex {
    std::vector<VecQ> x;
    VecQ alpha;
    Rat cr2;
    std::size_t source = 0;   ///< index into delone_classes
    std::size_t partner = 0;  ///< index of the class whose primitive simplex is -S
};

std::vector<PrimitiveSimplex> primitive_simplices(const LatticeModel& lat);

struct CoveringRadius {
    Rat mu2;                                 ///< squared covering radius
    std::vector<PrimitiveSimplex> maximal;   ///< X(lattice), closed under negation
};

CoveringRadius covering_radius(const LatticeModel& lat);

/// One representative per {S, -S} pair, as indices into `maximal`.
std::vector<std::size_t> pair_representatives(const CoveringRadius& cov);

/// Calls visit(u, |u - center|^2) for every integer u with |u - center|^2 <= r2.
void for_each_lattice_point(const SymMapQ& gram, std::span<const Rat> center, const Rat& r2,
                            const std::function<void(const VecQ&, const Rat&)>& visit);

bool verify_empty_sphere(const LatticeModel& lat, const DeloneSimplex& s);

/// True iff every circumcentre has exactly n+1 nearest lattice points.
bool genericity_check(const LatticeModel& lat);

VecQ to_euclidean(const LatticeModel& lat, std::span<const Rat> coords);

/// Distinct vertices of the Voronoi cell of the origin, in lattice coordinates.
std::vector<VecQ> voronoi_vertices(const LatticeModel& lat);

/// Leading principal minors all positive.
bool positive_definite(const SymMapQ& g);

}  // namespace covlat
