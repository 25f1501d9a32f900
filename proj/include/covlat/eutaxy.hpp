#pragma once

// Semi-eutaxy of the maximal primitive simplices.
//
// Maps live in lattice coordinates. For a primitive simplex with vertex
// coordinates x_j the map is q = (1/cr2) sum_j alpha_j x_j x_j^T, a
// contravariant symmetric matrix; the Euclidean map is B q B^T for an
// embedding B. The identity becomes G^{-1}, the trace becomes <q, G>, and a
// perturbation direction is a covariant form N (the change of Gram matrix),
// paired with q by <N, q> = trace(N q). With G = Id these are the usual
// Euclidean objects.

#include "covlat/execution.hpp"
#include "covlat/lattice.hpp"
#include "covlat/lp.hpp"

#include <string_view>

namespace covlat {

struct EutaxyMap {
    SymMapQ q;
    std::size_t source = 0;  ///< index of the primitive simplex it came from
    bool normalized = true;
};

EutaxyMap q_map(const PrimitiveSimplex& s, bool normalize = true);

/// <q, G>; equals 1 for a normalized map.
Rat gram_trace(const SymMapQ& q, const SymMapQ& gram);

/// G^{-1}: the identity map in lattice coordinates.
SymMapQ identity_target(const SymMapQ& gram);

enum class Classification { NotSemiEutactic, SemiEutactic, CriticallySemiEutactic, RedundantlySemiEutactic };

std::string_view to_string(Classification c);

struct PairRemoval {
    std::size_t pair = 0;
    /// Feasible: coefficients for every map, zero on the removed pair.
    /// Infeasible: a separating form for the remaining maps.
    LpOutcome outcome;
};

struct EutaxyReport {
    Classification classification = Classification::NotSemiEutactic;
    /// Groups of identical maps (the {S, -S} pairs), by index into the input.
    std::vector<std::vector<std::size_t>> pairs;
    LpOutcome full;
    std::optional<VecQ> coefficients;       ///< per input map
    std::optional<VecQ> pair_coefficients;  ///< per pair
    bool unique = false;                    ///< coefficient map on distinct maps is injective
    std::vector<PairRemoval> removals;

    bool semi_eutactic() const { return classification != Classification::NotSemiEutactic; }
};

/// Solves Id = sum v_i Q_i (here: target) and every pair-removed variant.
EutaxyReport classify(std::span<const EutaxyMap> maps, const SymMapQ& target,
                      Execution exec = Execution::parallel);

/// Maps of X(lat), in the order of covering_radius(lat).maximal.
std::vector<EutaxyMap> maximal_maps(const LatticeModel& lat);

EutaxyReport classify_lattice(const LatticeModel& lat, Execution exec = Execution::parallel);

/// Unique eutaxy coefficients of A_3^*, one per maximal simplex. Throws
/// CertificateError if the coefficients are not unique and positive.
VecQ eutaxy_coefficients_a3(const LatticeModel& lat);

/// Re-checks every certificate stored in the report against the maps.
bool verify_report(std::span<const EutaxyMap> maps, const SymMapQ& target, const EutaxyReport& report);

}  // namespace covlat
