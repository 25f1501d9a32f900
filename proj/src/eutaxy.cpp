#include "covlat/eutaxy.hpp"

#include <algorithm>

namespace covlat {

EutaxyMap q_map(const PrimitiveSimplex& s, bool normalize)
{
    EutaxyMap m;
    m.q = SymMapQ::weighted_outer_sum(s.x, s.alpha);
    if (normalize) m.q = Rat(1 / s.cr2) * m.q;
    m.source = s.source;
    m.normalized = normalize;
    return m;
}

Rat gram_trace(const SymMapQ& q, const SymMapQ& gram) { return inner(q, gram); }

SymMapQ identity_target(const SymMapQ& gram)
{
    auto inv = inverse(gram.matrix());
    if (!inv) throw DomainError("singular Gram matrix");
    return SymMapQ(std::move(*inv));
}

std::string_view to_string(Classification c)
{
    switch (c) {
    case Classification::NotSemiEutactic: return "NotSemiEutactic";
    case Classification::SemiEutactic: return "SemiEutactic";
    case Classification::CriticallySemiEutactic: return "CriticallySemiEutactic";
    case Classification::RedundantlySemiEutactic: return "RedundantlySemiEutactic";
    }
    return "?";
}

namespace {

std::vector<std::vector<std::size_t>> group_pairs(std::span<const EutaxyMap> maps)
{
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return maps[g.front()].q == maps[i].q; });
        if (it == groups.end()) groups.push_back({i});
        else it->push_back(i);
    }
    return groups;
}

PairRemoval remove_pair(std::span<const EutaxyMap> maps, const std::vector<std::vector<std::size_t>>& pairs,
                        std::size_t p, const SymMapQ& target)
{
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (std::find(pairs[p].begin(), pairs[p].end(), i) == pairs[p].end()) kept.push_back(i);
    std::vector<SymMapQ> qs;
    for (auto i : kept) qs.push_back(maps[i].q);

    PairRemoval r;
    r.pair = p;
    auto out = lp_feasible_nonneg(qs, target);
    if (auto* f = std::get_if<Feasible>(&out)) {
        VecQ full = zeros(maps.size());
        for (std::size_t k = 0; k < kept.size(); ++k) full[kept[k]] = f->coeffs[k];
        r.outcome = Feasible{std::move(full)};
    } else {
        r.outcome = std::move(out);
    }
    return r;
}

std::vector<SymMapQ> raw_maps(std::span<const EutaxyMap> maps)
{
    std::vector<SymMapQ> qs;
    qs.reserve(maps.size());
    for (const auto& m : maps) qs.push_back(m.q);
    return qs;
}

}  // namespace

EutaxyReport classify(std::span<const EutaxyMap> maps, const SymMapQ& target, Execution exec)
{
    if (maps.empty()) throw DomainError("classify: empty map set");
    EutaxyReport rep;
    rep.pairs = group_pairs(maps);
    const auto qs = raw_maps(maps);
    rep.full = lp_feasible_nonneg(qs, target);

    const auto* feas = std::get_if<Feasible>(&rep.full);
    if (!feas) {
        rep.classification = Classification::NotSemiEutactic;
        return rep;
    }
    rep.coefficients = feas->coeffs;
    VecQ pc = zeros(rep.pairs.size());
    for (std::size_t p = 0; p < rep.pairs.size(); ++p)
        for (auto i : rep.pairs[p]) pc[p] += feas->coeffs[i];
    rep.pair_coefficients = pc;

    const std::size_t d = target.dim() * (target.dim() + 1) / 2;
    MatQ columns(d, rep.pairs.size());
    for (std::size_t p = 0; p < rep.pairs.size(); ++p) {
        const VecQ u = maps[rep.pairs[p].front()].q.upper();
        for (std::size_t k = 0; k < d; ++k) columns(k, p) = u[k];
    }
    rep.unique = nullspace(columns).empty();

    const auto npairs = static_cast<long>(rep.pairs.size());
    rep.removals.resize(rep.pairs.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long p = 0; p < npairs; ++p)
            rep.removals[static_cast<std::size_t>(p)] = remove_pair(maps, rep.pairs, static_cast<std::size_t>(p), target);
    } else {
        for (long p = 0; p < npairs; ++p)
            rep.removals[static_cast<std::size_t>(p)] = remove_pair(maps, rep.pairs, static_cast<std::size_t>(p), target);
    }

    const auto nfeasible = std::count_if(rep.removals.begin(), rep.removals.end(),
                                         [](const PairRemoval& r) { return std::holds_alternative<Feasible>(r.outcome); });
    const bool positive = std::all_of(pc.begin(), pc.end(), [](const Rat& v) { return sgn(v) > 0; });

    if (nfeasible == npairs) rep.classification = Classification::RedundantlySemiEutactic;
    else if (nfeasible == 0) rep.classification = Classification::CriticallySemiEutactic;
    else rep.classification = Classification::SemiEutactic;

    // Critical <=> unique and positive (the maps all have positive trace).
    const bool critical = rep.classification == Classification::CriticallySemiEutactic;
    if (critical != (rep.unique && positive))
        throw CertificateError("critical semi-eutaxy disagrees with uniqueness/positivity of the coefficients");
    return rep;
}

std::vector<EutaxyMap> maximal_maps(const LatticeModel& lat)
{
    const auto cov = covering_radius(lat);
    std::vector<EutaxyMap> maps;
    for (const auto& s : cov.maximal) maps.push_back(q_map(s));
    return maps;
}

EutaxyReport classify_lattice(const LatticeModel& lat, Execution exec)
{
    const auto maps = maximal_maps(lat);
    return classify(maps, identity_target(lat.gram), exec);
}

VecQ eutaxy_coefficients_a3(const LatticeModel& lat)
{
    if (lat.n != 3) throw DomainError("eutaxy_coefficients_a3 expects a 3-dimensional lattice");
    const auto rep = classify_lattice(lat, Execution::serial);
    if (rep.classification != Classification::CriticallySemiEutactic || !rep.unique)
        throw CertificateError("eutaxy coefficients are not unique and positive");
    return *rep.coefficients;
}

bool verify_report(std::span<const EutaxyMap> maps, const SymMapQ& target, const EutaxyReport& report)
{
    const auto qs = raw_maps(maps);
    if (!check_outcome(qs, target, report.full)) return false;
    // Identical maps must be grouped together, distinct ones apart.
    std::vector<std::size_t> seen;
    for (const auto& g : report.pairs) {
        for (auto i : g) {
            if (i >= maps.size() || maps[i].q != maps[g.front()].q) return false;
            seen.push_back(i);
        }
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] != i) return false;
    if (seen.size() != maps.size()) return false;

    const bool feasible = std::holds_alternative<Feasible>(report.full);
    if (!feasible) return report.classification == Classification::NotSemiEutactic;
    if (report.removals.size() != report.pairs.size()) return false;

    // The summary fields must restate the full solution.
    const auto& full = std::get<Feasible>(report.full).coeffs;
    if (!report.coefficients || *report.coefficients != full) return false;
    if (!report.pair_coefficients || report.pair_coefficients->size() != report.pairs.size()) return false;
    for (std::size_t p = 0; p < report.pairs.size(); ++p) {
        Rat sum = 0;
        for (auto i : report.pairs[p]) sum += full[i];
        if ((*report.pair_coefficients)[p] != sum) return false;
    }
    const std::size_t d = target.dim() * (target.dim() + 1) / 2;
    MatQ columns(d, report.pairs.size());
    for (std::size_t p = 0; p < report.pairs.size(); ++p) {
        const VecQ u = maps[report.pairs[p].front()].q.upper();
        for (std::size_t k = 0; k < d; ++k) columns(k, p) = u[k];
    }
    if (report.unique != nullspace(columns).empty()) return false;

    std::size_t nfeasible = 0;
    for (std::size_t p = 0; p < report.removals.size(); ++p) {
        const auto& r = report.removals[p];
        if (r.pair != p) return false;
        const auto& removed = report.pairs[p];
        if (const auto* f = std::get_if<Feasible>(&r.outcome)) {
            for (auto i : removed)
                if (sgn(f->coeffs[i]) != 0) return false;
            if (!check_outcome(qs, target, r.outcome)) return false;
            ++nfeasible;
        } else {
            std::vector<SymMapQ> kept;
            for (std::size_t i = 0; i < maps.size(); ++i)
                if (std::find(removed.begin(), removed.end(), i) == removed.end()) kept.push_back(maps[i].q);
            const auto& inf = std::get<Infeasible>(r.outcome);
            if (!inf.strict || !check_outcome(kept, target, r.outcome)) return false;
        }
    }
    switch (report.classification) {
    case Classification::RedundantlySemiEutactic: return nfeasible == report.pairs.size();
    case Classification::CriticallySemiEutactic: {
        if (nfeasible != 0) return false;
        const auto& c = std::get<Feasible>(report.full).coeffs;
        return std::all_of(c.begin(), c.end(), [](const Rat& v) { return sgn(v) > 0; });
    }
    case Classification::SemiEutactic: return nfeasible > 0 && nfeasible < report.pairs.size();
    case Classification::NotSemiEutactic: return false;
    }
    return false;
}

}  // namespace covlat
