#include "covlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace covlat {

namespace {

VecQ int_vec(std::span<const long> v)
{
    VecQ r;
    r.reserve(v.size());
    for (long x : v) r.emplace_back(x);
    return r;
}

// Vertices sorted and translated so the smallest sits at the origin.
std::vector<VecQ> canonical_translate(std::vector<VecQ> verts)
{
    std::sort(verts.begin(), verts.end());
    const VecQ base = verts.front();
    for (auto& v : verts) v = sub(v, base);
    return verts;
}

std::vector<VecQ> sorted(std::vector<VecQ> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

Rat norm2(const SymMapQ& gram, std::span<const Rat> v) { return gram.quadratic(v); }

}  // namespace

bool positive_definite(const SymMapQ& g)
{
    const std::size_t n = g.dim();
    for (std::size_t k = 1; k <= n; ++k) {
        MatQ minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
        if (sgn(det(minor)) <= 0) return false;
    }
    return true;
}

LatticeModel build_anstar(int n)
{
    if (n < 2 || n > 5) throw DomainError("A_n^* is supported for 2 <= n <= 5");
    const auto dim = static_cast<std::size_t>(n);

    LatticeModel lat;
    lat.n = n;
    lat.gram = SymMapQ(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) lat.gram.set(i, j, Rat(i == j ? n : -1));

    // Generator coordinates in the basis f_1..f_n; f_{n+1} = -(f_1 + ... + f_n).
    std::vector<VecQ> gen(dim + 1, zeros(dim));
    for (std::size_t i = 0; i < dim; ++i) gen[i][i] = 1;
    for (std::size_t i = 0; i < dim; ++i) gen[dim][i] = -1;

    std::vector<int> perm(dim + 1);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<VecQ>> seen;
    do {
        DeloneSimplex s;
        s.label = perm;
        VecQ acc = zeros(dim);
        s.vertices.push_back(acc);
        for (std::size_t k = 0; k < dim; ++k) {
            acc = add(acc, gen[static_cast<std::size_t>(perm[k] - 1)]);
            s.vertices.push_back(acc);
        }
        auto key = canonical_translate(s.vertices);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(std::move(key));
        lat.delone_classes.push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (n == 3) {
        const std::vector<VecQ> basis = {int_vec(std::vector<long>{1, 1, 1}), int_vec(std::vector<long>{1, -1, -1}),
                                         int_vec(std::vector<long>{-1, 1, -1})};
        lat.embedding = MatQ::from_columns(basis);
    }
    return lat;
}

LatticeModel kuhn_lattice(const SymMapQ& gram)
{
    if (!positive_definite(gram)) throw DomainError("Gram matrix is not positive definite");
    const std::size_t n = gram.dim();
    LatticeModel lat;
    lat.n = static_cast<int>(n);
    lat.gram = gram;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        DeloneSimplex s;
        s.label = perm;
        s.label.push_back(static_cast<int>(n) + 1);
        VecQ acc = zeros(n);
        s.vertices.push_back(acc);
        for (int p : perm) {
            acc[static_cast<std::size_t>(p - 1)] += 1;
            s.vertices.push_back(acc);
        }
        lat.delone_classes.push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return lat;
}

LatticeModel change_basis(const LatticeModel& lat, const MatQ& u)
{
    const Rat d = det(u);
    if (abs(d) != 1) throw DomainError("change_basis: matrix is not unimodular");
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            if (u(i, j).get_den() != 1) throw DomainError("change_basis: matrix is not integral");
    const MatQ uinv = *inverse(u);

    LatticeModel out;
    out.n = lat.n;
    out.gram = congruence(u, lat.gram);
    if (lat.embedding) out.embedding = *lat.embedding * u;
    for (const auto& s : lat.delone_classes) {
        DeloneSimplex t;
        t.label = s.label;
        for (const auto& v : s.vertices) t.vertices.push_back(uinv * v);
        out.delone_classes.push_back(std::move(t));
    }
    return out;
}

Circumsphere circumsphere(std::span<const VecQ> vertices, const SymMapQ& gram)
{
    const std::size_t n = gram.dim();
    if (vertices.size() != n + 1) throw DegenerateSimplex("simplex needs n+1 vertices");
    const VecQ& v0 = vertices[0];
    const Rat n0 = norm2(gram, v0);

    MatQ a(n, n);
    VecQ rhs(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const VecQ g = gram.matrix() * sub(vertices[k], v0);
        for (std::size_t j = 0; j < n; ++j) a(k - 1, j) = 2 * g[j];
        rhs[k - 1] = norm2(gram, vertices[k]) - n0;
    }
    const auto sol = solve_affine(a, rhs);
    if (!sol.unique()) throw DegenerateSimplex("simplex vertices are affinely dependent");

    Circumsphere cs;
    cs.center = *sol.particular;
    cs.cr2 = norm2(gram, sub(v0, cs.center));

    // sum_j alpha_j v_j = c, sum_j alpha_j = 1
    MatQ b(n + 1, n + 1);
    VecQ target(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i < n; ++i) b(i, j) = vertices[j][i];
        b(n, j) = 1;
    }
    for (std::size_t i = 0; i < n; ++i) target[i] = cs.center[i];
    target[n] = 1;
    cs.alpha = *solve_affine(b, target).particular;
    return cs;
}

Circumsphere circumcenter(const DeloneSimplex& s, const SymMapQ& gram) { return circumsphere(s.vertices, gram); }

std::vector<PrimitiveSimplex> primitive_simplices(const LatticeModel& lat)
{
    const std::size_t k = lat.delone_classes.size();
    std::vector<PrimitiveSimplex> out(k);
    std::vector<std::vector<VecQ>> keys(k), neg_keys(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& d = lat.delone_classes[i];
        const auto cs = circumcenter(d, lat.gram);
        auto& p = out[i];
        p.alpha = cs.alpha;
        p.cr2 = cs.cr2;
        p.source = i;
        std::vector<VecQ> neg;
        for (const auto& v : d.vertices) {
            p.x.push_back(sub(cs.center, v));
            neg.push_back(sub(v, cs.center));
        }
        keys[i] = sorted(p.x);
        neg_keys[i] = sorted(std::move(neg));
    }
    // Primitive simplices are sets of Voronoi vertices, so -S is matched exactly.
    for (std::size_t i = 0; i < k; ++i) {
        auto it = std::find(keys.begin(), keys.end(), neg_keys[i]);
        if (it == keys.end()) throw CertificateError("primitive simplex has no negative partner");
        out[i].partner = static_cast<std::size_t>(it - keys.begin());
    }
    return out;
}

CoveringRadius covering_radius(const LatticeModel& lat)
{
    auto all = primitive_simplices(lat);
    CoveringRadius cov;
    if (all.empty()) return cov;
    cov.mu2 = all.front().cr2;
    for (const auto& p : all) cov.mu2 = std::max(cov.mu2, p.cr2);
    for (auto& p : all)
        if (p.cr2 == cov.mu2) cov.maximal.push_back(std::move(p));
    return cov;
}

std::vector<std::size_t> pair_representatives(const CoveringRadius& cov)
{
    std::vector<std::size_t> reps;
    std::vector<bool> used(cov.maximal.size(), false);
    for (std::size_t i = 0; i < cov.maximal.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        reps.push_back(i);
        for (std::size_t j = i + 1; j < cov.maximal.size(); ++j)
            if (cov.maximal[j].source == cov.maximal[i].partner) used[j] = true;
    }
    return reps;
}

void for_each_lattice_point(const SymMapQ& gram, std::span<const Rat> center, const Rat& r2,
                            const std::function<void(const VecQ&, const Rat&)>& visit)
{
    const std::size_t n = gram.dim();
    const auto ginv = inverse(gram.matrix());
    if (!ginv) throw DomainError("singular Gram matrix");

    // |u_i - c_i|^2 <= r2 * (G^{-1})_ii bounds each coordinate.
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::sqrt(Rat(r2 * (*ginv)(i, i)).get_d());
        const double c = center[i].get_d();
        lo[i] = static_cast<long>(std::floor(c - w)) - 1;
        hi[i] = static_cast<long>(std::ceil(c + w)) + 1;
    }
    std::vector<long> u(lo);
    for (;;) {
        const VecQ uq = int_vec(u);
        const Rat d2 = norm2(gram, sub(uq, center));
        if (d2 <= r2) visit(uq, d2);
        std::size_t i = 0;
        while (i < n && ++u[i] > hi[i]) {
            u[i] = lo[i];
            ++i;
        }
        if (i == n) break;
    }
}

bool verify_empty_sphere(const LatticeModel& lat, const DeloneSimplex& s)
{
    const auto cs = circumcenter(s, lat.gram);
    bool empty = true;
    for_each_lattice_point(lat.gram, cs.center, cs.cr2, [&](const VecQ&, const Rat& d2) {
        if (d2 < cs.cr2) empty = false;
    });
    return empty;
}

bool genericity_check(const LatticeModel& lat)
{
    const auto need = static_cast<std::size_t>(lat.n) + 1;
    for (const auto& s : lat.delone_classes) {
        const auto cs = circumcenter(s, lat.gram);
        std::size_t on_sphere = 0;
        bool inside = false;
        for_each_lattice_point(lat.gram, cs.center, cs.cr2, [&](const VecQ&, const Rat& d2) {
            if (d2 < cs.cr2) inside = true;
            else ++on_sphere;
        });
        if (inside || on_sphere != need) return false;
    }
    return true;
}

VecQ to_euclidean(const LatticeModel& lat, std::span<const Rat> coords)
{
    if (!lat.embedding) throw DomainError("lattice has no rational Euclidean embedding");
    return *lat.embedding * coords;
}

std::vector<VecQ> voronoi_vertices(const LatticeModel& lat)
{
    std::vector<VecQ> verts;
    for (const auto& p : primitive_simplices(lat))
        for (const auto& x : p.x)
            if (std::find(verts.begin(), verts.end(), x) == verts.end()) verts.push_back(x);
    std::sort(verts.begin(), verts.end());
    return verts;
}

}  // namespace covlat
