#include "covlat/lp.hpp"

#include <algorithm>

namespace covlat {

PhaseOneResult phase_one(const MatQ& a, std::span<const Rat> b)
{
    const std::size_t rows = a.rows();
    const std::size_t nv = a.cols();
    if (b.size() != rows) throw DomainError("phase_one: right-hand side has wrong length");

    // Columns: [original | artificial | rhs]
    const std::size_t ncols = nv + rows;
    MatQ t(rows, ncols + 1);
    std::vector<int> sigma(rows, 1);
    for (std::size_t i = 0; i < rows; ++i) {
        if (sgn(b[i]) < 0) sigma[i] = -1;
        for (std::size_t j = 0; j < nv; ++j) t(i, j) = sigma[i] * a(i, j);
        t(i, nv + i) = 1;
        t(i, ncols) = sigma[i] * b[i];
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = nv + i;

    auto cost = [&](std::size_t j) { return j >= nv ? Rat(1) : Rat(0); };

    // Reduced costs r_j = c_j - sum_i c_B(i) t(i, j).
    VecQ reduced(ncols);
    auto refresh_reduced = [&] {
        for (std::size_t j = 0; j < ncols; ++j) {
            Rat r = cost(j);
            for (std::size_t i = 0; i < rows; ++i)
                if (basis[i] >= nv) r -= t(i, j);
            reduced[j] = r;
        }
    };
    refresh_reduced();

    for (;;) {
        // Bland: lowest-index improving column.
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j)
            if (sgn(reduced[j]) < 0) {
                enter = j;
                break;
            }
        if (enter == ncols) break;

        std::size_t leave = rows;
        Rat best_ratio;
        for (std::size_t i = 0; i < rows; ++i) {
            if (sgn(t(i, enter)) <= 0) continue;
            Rat ratio = t(i, ncols) / t(i, enter);
            if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        // Phase one is bounded below by zero, so some row always limits the step.
        if (leave == rows) throw CertificateError("phase_one: unbounded direction in a bounded problem");

        const Rat piv = t(leave, enter);
        for (std::size_t j = 0; j <= ncols; ++j) t(leave, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || sgn(t(i, enter)) == 0) continue;
            const Rat f = t(i, enter);
            for (std::size_t j = 0; j <= ncols; ++j) t(i, j) -= f * t(leave, j);
        }
        const Rat f = reduced[enter];
        for (std::size_t j = 0; j < ncols; ++j) reduced[j] -= f * t(leave, j);
        basis[leave] = enter;
    }

    Rat objective = 0;
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] >= nv) objective += t(i, ncols);

    if (sgn(objective) == 0) {
        VecQ x = zeros(nv);
        for (std::size_t i = 0; i < rows; ++i)
            if (basis[i] < nv) x[basis[i]] = t(i, ncols);
        return PhaseOneFeasible{std::move(x)};
    }

    // y' = c_B^T B^{-1}; the artificial columns of the final tableau hold B^{-1}.
    VecQ y(rows, Rat(0));
    for (std::size_t k = 0; k < rows; ++k) {
        Rat s = 0;
        for (std::size_t i = 0; i < rows; ++i)
            if (basis[i] >= nv) s += t(i, nv + k);
        y[k] = sigma[k] * s;
    }
    return PhaseOneInfeasible{std::move(y)};
}

namespace {

// <Y, P> = sum_k y_k p_k where p are upper-triangle coordinates of P.
SymMapQ map_from_dual(std::size_t n, std::span<const Rat> y)
{
    VecQ coords(y.begin(), y.end());
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++k)
            if (i != j) coords[k] /= 2;
    return SymMapQ::from_upper(n, coords);
}

// Looks for Y with <Y, Q_i> <= -1 and <Y, target> >= 1.
std::optional<SymMapQ> strict_separator(std::span<const SymMapQ> maps, const SymMapQ& target)
{
    const std::size_t n = target.dim();
    const std::size_t d = n * (n + 1) / 2;
    const std::size_t m = maps.size();
    // Variables: y+ (d), y- (d), s (m), s0 (1).
    MatQ a(m + 1, 2 * d + m + 1);
    VecQ b(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const VecQ p = maps[i].upper();
        for (std::size_t k = 0; k < d; ++k) {
            a(i, k) = p[k];
            a(i, d + k) = -p[k];
        }
        a(i, 2 * d + i) = 1;
        b[i] = -1;
    }
    const VecQ tu = target.upper();
    for (std::size_t k = 0; k < d; ++k) {
        a(m, k) = tu[k];
        a(m, d + k) = -tu[k];
    }
    a(m, 2 * d + m) = -1;
    b[m] = 1;

    const auto res = phase_one(a, b);
    const auto* ok = std::get_if<PhaseOneFeasible>(&res);
    if (!ok) return std::nullopt;
    VecQ y(d);
    for (std::size_t k = 0; k < d; ++k) y[k] = ok->x[k] - ok->x[d + k];
    return map_from_dual(n, y);
}

}  // namespace

LpOutcome lp_feasible_nonneg(std::span<const SymMapQ> maps, const SymMapQ& target)
{
    const std::size_t n = target.dim();
    for (const auto& q : maps)
        if (q.dim() != n) throw DomainError("lp_feasible_nonneg: dimension mismatch");

    // Merge identical maps (Q_S = Q_{-S}).
    std::vector<SymMapQ> unique;
    std::vector<std::size_t> group(maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i) {
        auto it = std::find(unique.begin(), unique.end(), maps[i]);
        group[i] = static_cast<std::size_t>(it - unique.begin());
        if (it == unique.end()) unique.push_back(maps[i]);
    }

    const std::size_t d = n * (n + 1) / 2;
    MatQ a(d, unique.size());
    for (std::size_t j = 0; j < unique.size(); ++j) {
        const VecQ u = unique[j].upper();
        for (std::size_t k = 0; k < d; ++k) a(k, j) = u[k];
    }
    const auto res = phase_one(a, target.upper());

    if (const auto* f = std::get_if<PhaseOneFeasible>(&res)) {
        std::vector<std::size_t> copies(unique.size(), 0);
        for (auto g : group) ++copies[g];
        VecQ coeffs(maps.size());
        for (std::size_t i = 0; i < maps.size(); ++i)
            coeffs[i] = f->x[group[i]] / Rat(static_cast<long>(copies[group[i]]));
        return Feasible{std::move(coeffs)};
    }

    if (auto strict = strict_separator(unique, target)) return Infeasible{std::move(*strict), true};
    const auto& weak = std::get<PhaseOneInfeasible>(res);
    return Infeasible{map_from_dual(n, weak.y), false};
}

bool check_outcome(std::span<const SymMapQ> maps, const SymMapQ& target, const LpOutcome& outcome)
{
    if (const auto* f = std::get_if<Feasible>(&outcome)) {
        if (f->coeffs.size() != maps.size()) return false;
        SymMapQ sum(target.dim());
        for (std::size_t i = 0; i < maps.size(); ++i) {
            if (sgn(f->coeffs[i]) < 0) return false;
            sum = sum + f->coeffs[i] * maps[i];
        }
        return sum == target;
    }
    const auto& inf = std::get<Infeasible>(outcome);
    if (sgn(inner(inf.certificate, target)) <= 0) return false;
    for (const auto& q : maps) {
        const int s = sgn(inner(inf.certificate, q));
        if (inf.strict ? s >= 0 : s > 0) return false;
    }
    return true;
}

}  // namespace covlat
