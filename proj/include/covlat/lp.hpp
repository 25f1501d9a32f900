#pragma once

// Exact feasibility linear programming.
//
// phase_one decides { x >= 0 : A x = b } with the Bland anti-cycling rule
// and always returns a checkable certificate for whichever side holds.

#include "covlat/exact.hpp"

#include <variant>

namespace covlat {

struct PhaseOneFeasible {
    VecQ x;  ///< x >= 0, A x = b
};

struct PhaseOneInfeasible {
    VecQ y;  ///< y^T A <= 0 columnwise, y^T b > 0
};

using PhaseOneResult = std::variant<PhaseOneFeasible, PhaseOneInfeasible>;

PhaseOneResult phase_one(const MatQ& a, std::span<const Rat> b);

/// Nonnegative coefficients with sum_i coeffs_i Q_i = target.
struct Feasible {
    VecQ coeffs;
};

/// <M, Q_i> < 0 for every map and <M, target> > 0.
///
/// `strict` is false only when no strictly separating M exists; then M
/// satisfies the weak form <M, Q_i> <= 0.
struct Infeasible {
    SymMapQ certificate;
    bool strict = true;
};

using LpOutcome = std::variant<Feasible, Infeasible>;

/// Decides whether target lies in the cone generated by maps.
///
/// Identical maps are merged before solving and the merged coefficient is
/// split evenly between the copies afterwards.
LpOutcome lp_feasible_nonneg(std::span<const SymMapQ> maps, const SymMapQ& target);

/// Exact re-check of either branch.
bool check_outcome(std::span<const SymMapQ> maps, const SymMapQ& target, const LpOutcome& outcome);

}  // namespace covlat
