#include "covlat/perturbation.hpp"

#include <algorithm>
#include <cmath>

namespace covlat {

namespace {

struct Sphere {
    VecQ centre;
    Rat r2;
};

// 2 <w_i, y>_G + z = |w_i|_G^2 for the images w_i; R^2 = z + |y|_G^2.
Sphere image_sphere(const MatQ& t, std::span<const VecQ> vertices, const SymMapQ& gram)
{
    const std::size_t n = gram.dim();
    if (!t.square() || t.rows() != n) throw DomainError("transformation has the wrong shape");
    if (vertices.size() != n + 1) throw DegenerateSimplex("simplex needs n+1 vertices");
    MatQ a(n + 1, n + 1);
    VecQ b(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const VecQ w = t * vertices[i];
        const VecQ gw = gram.matrix() * w;
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 2 * gw[j];
        a(i, n) = 1;
        b[i] = dot(w, gw);
    }
    const auto sol = solve_affine(a, b);
    if (!sol.unique()) throw DegenerateSimplex("image simplex is degenerate");
    const VecQ& yz = *sol.particular;
    Sphere s;
    s.centre.assign(yz.begin(), yz.begin() + static_cast<std::ptrdiff_t>(n));
    s.r2 = yz[n] + gram.quadratic(s.centre);
    return s;
}

Vec3 to_vec3(std::span<const Rat> v)
{
    if (v.size() != 3) throw DomainError("radial bodies live in R^3");
    return {v[0].get_d(), v[1].get_d(), v[2].get_d()};
}

// The representative of {v, -v} whose first nonzero coordinate is positive.
VecQ sign_canonical(std::span<const Rat> v)
{
    for (const auto& x : v) {
        if (sgn(x) > 0) return VecQ(v.begin(), v.end());
        if (sgn(x) < 0) return negate(v);
    }
    return VecQ(v.begin(), v.end());
}

Rat dyadic_ceil(double x, int bits)
{
    const double scaled = std::ceil(std::ldexp(x, bits));
    Rat r = rat_from_double(scaled);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    return r / Rat(den);
}

// Odd rounding to the 2^-bits grid, so that round(-x) = -round(x).
Rat dyadic_round(const Rat& x, unsigned bits)
{
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
    const Rat scaled = abs(x) * Rat(den) + make_rat(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return sgn(x) < 0 ? Rat(-q, den) : Rat(q, den);
}

MatQ dyadic_round(const MatQ& m, unsigned bits)
{
    MatQ r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = dyadic_round(m(i, j), bits);
    return r;
}

VecQ dyadic_round(std::span<const Rat> v, unsigned bits)
{
    VecQ r;
    for (const auto& x : v) r.push_back(dyadic_round(x, bits));
    return r;
}

}  // namespace

Rat exact_cr_after(const MatQ& t, std::span<const VecQ> vertices, const SymMapQ& gram)
{
    return image_sphere(t, vertices, gram).r2;
}

Rat exact_cr_after(const MatQ& t, const PrimitiveSimplex& s, const SymMapQ& gram)
{
    return exact_cr_after(t, s.x, gram);
}

VecQ centre_after(const MatQ& t, std::span<const VecQ> vertices, const SymMapQ& gram)
{
    return image_sphere(t, vertices, gram).centre;
}

Rat first_order_cr(const SymMapQ& m, const PrimitiveSimplex& s) { return 1 + inner(m, q_map(s).q); }

// ------------------------------------------------------------------ frame

ReferenceFrame reference_frame(const LatticeModel& lat)
{
    if (!lat.embedding) throw DomainError("covering construction needs a rational Euclidean embedding");
    const MatQ& b = *lat.embedding;
    if (SymMapQ(b.transpose() * b) != lat.gram) throw DomainError("embedding does not realize the Gram matrix");

    ReferenceFrame f;
    f.lattice = lat;
    const auto cov = covering_radius(lat);
    f.mu2 = cov.mu2;
    std::vector<EutaxyMap> maps;
    for (const auto& p : cov.maximal) {
        PrimitiveSimplex e = p;
        for (auto& x : e.x) x = b * x;
        maps.push_back(q_map(e));
        f.maps.push_back(maps.back().q);
        f.simplices.push_back(std::move(e));
    }
    const auto rep = classify(maps, SymMapQ::identity(static_cast<std::size_t>(lat.n)), Execution::serial);
    if (rep.classification != Classification::CriticallySemiEutactic)
        throw DomainError("covering construction needs critically semi-eutactic maximal simplices");
    f.upsilon = *rep.coefficients;
    return f;
}

TreqnSolution solve_treqn(const std::vector<VecQ>& rho, const ReferenceFrame& frame)
{
    const auto& xs = frame.simplices;
    if (rho.size() != xs.size()) throw DomainError("solve_treqn: one rho row per simplex expected");
    const std::size_t n = static_cast<std::size_t>(frame.lattice.n);

    TreqnSolution sol;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (rho[i].size() != xs[i].x.size()) throw DomainError("solve_treqn: one rho value per vertex expected");
        Rat r = 0;
        for (std::size_t j = 0; j < xs[i].x.size(); ++j) r += xs[i].alpha[j] * rho[i][j];
        sol.rho_weighted.push_back(r);
    }

    // One constraint per distinct map; S and -S must request the same value.
    std::vector<MapConstraint> cons;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto it = std::find_if(cons.begin(), cons.end(), [&](const MapConstraint& c) { return c.map == frame.maps[i]; });
        if (it == cons.end()) {
            cons.push_back({frame.maps[i], sol.rho_weighted[i]});
        } else if (it->value != sol.rho_weighted[i]) {
            throw DomainError("inconsistent rho: S and -S request different values");
        }
    }
    sol.m = min_norm_solution(cons);

    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& s = xs[i];
        MatQ a(s.x.size(), n);
        VecQ b(s.x.size());
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            for (std::size_t k = 0; k < n; ++k) a(j, k) = s.x[j][k];
            b[j] = frame.mu2 * rho[i][j] - sol.m.quadratic(s.x[j]);
        }
        const auto ti = solve_affine(a, b);
        if (!ti.unique()) throw CertificateError("translation system has no unique solution");
        sol.t.push_back(*ti.particular);
    }

    Rat weighted = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) weighted += frame.upsilon[i] * sol.rho_weighted[i];
    if (sol.m.trace() != weighted) throw CertificateError("trace M differs from sum upsilon_i rho_i");
    return sol;
}

// ------------------------------------------------------------------ cover

CoverConstruction build_cover(const RadialFunction& rho, double eps, bool normalized, const ReferenceFrame& frame,
                              const CoverOptions& opts)
{
    if (!(eps <= opts.max_eps)) throw PreconditionError("body is too aspherical: eps = " + std::to_string(eps));
    if (!normalized && !opts.allow_unnormalized)
        throw PreconditionError("body is not normalized (degree-0 or degree-2 content)");
    const std::size_t n = static_cast<std::size_t>(frame.lattice.n);
    const double cr = std::sqrt(frame.mu2.get_d());

    CoverConstruction c;
    c.eps = eps;
    c.tolerance = opts.tolerance;
    for (const auto& s : frame.simplices) {
        VecQ row;
        for (const auto& x : s.x) row.push_back(rat_from_double(rho(to_vec3(sign_canonical(x)))));
        c.rho.push_back(std::move(row));
    }
    c.solution = solve_treqn(c.rho, frame);
    const auto& m = c.solution.m;
    const auto& xs = frame.simplices;
    MatQ lin = MatQ::identity(n) + m.matrix();

    // First-order positions y_ij = (Id + M) x_ij + t_i.
    std::vector<std::vector<VecQ>> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (const auto& x : xs[i].x) ys[i].push_back(add(lin * x, c.solution.t[i]));
    const auto first = ys;

    // Optional Newton steps: move y to y + N y + u_i with
    // <y, N y + u_i> = (R^2 - |y|^2) / 2, R the scaled body radius along y.
    // Refined maps are kept on a dyadic grid (the rounding is absorbed by
    // the final contraction, which is measured on the exact positions).
    constexpr unsigned grid_bits = 64;
    c.refine_steps = opts.refine_steps;
    if (opts.refine_steps > 0) {
        lin = dyadic_round(lin, grid_bits);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const VecQ t = dyadic_round(c.solution.t[i], grid_bits);
            for (std::size_t j = 0; j < xs[i].x.size(); ++j) ys[i][j] = add(lin * xs[i].x[j], t);
        }
    }
    for (int step = 0; step < opts.refine_steps; ++step) {
        std::vector<MapConstraint> cons;
        std::vector<VecQ> rhs(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto& y = ys[i];
            MatQ a(n + 1, y.size());
            VecQ e(n + 1);
            for (std::size_t j = 0; j < y.size(); ++j) {
                for (std::size_t k = 0; k < n; ++k) a(k, j) = y[j][k];
                a(n, j) = 1;
            }
            e[n] = 1;
            const auto beta = solve_affine(a, e);
            if (!beta.unique()) throw DegenerateSimplex("refinement: degenerate simplex");
            Rat v = 0;
            for (std::size_t j = 0; j < y.size(); ++j) {
                const double r = std::sqrt(frame.mu2.get_d()) * (1.0 + rho(to_vec3(sign_canonical(y[j]))));
                const Rat r2 = rat_from_double(r * r);
                rhs[i].push_back((r2 - dot(y[j], y[j])) / 2);
                v += (*beta.particular)[j] * rhs[i].back();
            }
            const SymMapQ q = SymMapQ::weighted_outer_sum(y, *beta.particular);
            auto it = std::find_if(cons.begin(), cons.end(), [&](const MapConstraint& k) { return k.map == q; });
            if (it == cons.end()) cons.push_back({q, v});
            else if (it->value != v) throw CertificateError("refinement lost the +-S symmetry");
        }
        const SymMapQ exact_m = min_norm_solution(cons);
        const MatQ step_m = dyadic_round(exact_m.matrix(), grid_bits);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto& y = ys[i];
            MatQ a(y.size(), n);
            VecQ b(y.size());
            for (std::size_t j = 0; j < y.size(); ++j) {
                for (std::size_t k = 0; k < n; ++k) a(j, k) = y[j][k];
                b[j] = rhs[i][j] - exact_m.quadratic(y[j]);
            }
            const auto u = solve_affine(a, b);
            if (!u.unique()) throw CertificateError("refinement translation is not unique");
            const VecQ shift = dyadic_round(*u.particular, grid_bits);
            for (auto& yj : ys[i]) yj = add(add(yj, step_m * yj), shift);
        }
        lin = (MatQ::identity(n) + step_m) * lin;
    }

    // Per-vertex radial deficit.
    std::vector<double> norms, radii;
    double max_delta = 0;
    const double beta = std::acos((1 - eps) / (1 + eps));
    double tangent = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs[i].x.size(); ++j) {
            const VecQ& y = ys[i][j];
            const double ny = std::sqrt(Rat(dot(y, y) / frame.mu2).get_d());
            const double r = 1.0 + rho(to_vec3(sign_canonical(y)));
            const double dij = (ny - r) / ny;
            c.delta_ij.push_back(dij);
            max_delta = std::max(max_delta, dij);
            norms.push_back(ny);
            radii.push_back(r);

            // Tangent-line bound on the first-order point: |BC| = |AB| sin(beta) / cos(beta - gamma).
            const Vec3 xd = to_vec3(xs[i].x[j]);
            const Vec3 yd = to_vec3(first[i][j]);
            const double ny1 = std::sqrt(Rat(dot(first[i][j], first[i][j]) / frame.mu2).get_d());
            const double rij = c.rho[i][j].get_d();
            double ab2 = 0, cosg = 0;
            for (std::size_t k = 0; k < 3; ++k) {
                const double a = (1 + rij) * xd[k] / cr;
                const double b = yd[k] / cr;
                ab2 += (a - b) * (a - b);
                cosg += xd[k] * yd[k];
            }
            cosg /= cr * cr * ny1;
            const double gamma = std::acos(std::clamp(cosg, -1.0, 1.0));
            const double bc = std::sqrt(ab2) * std::sin(beta) / std::cos(beta - gamma);
            tangent = std::max(tangent, bc / ny1);
        }
    }

    c.delta = max_delta <= opts.tolerance ? Rat(0) : dyadic_ceil(max_delta + opts.tolerance, 48);
    const double one_minus_delta = Rat(1 - c.delta).get_d();
    c.verified = true;
    for (std::size_t k = 0, i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs[i].x.size(); ++j, ++k) {
            VertexCheck v{i, j, one_minus_delta * norms[k], radii[k], false};
            v.inside = v.contracted_norm <= v.radius + opts.tolerance;
            c.verified = c.verified && v.inside;
            c.checks.push_back(v);
        }
    if (!c.verified) throw CertificateError("contracted vertex left the body");

    const Rat shrink = 1 - c.delta;
    c.unscaled_map = lin;
    c.linear_map = shrink * lin;
    c.basis_out = c.linear_map * *frame.lattice.embedding;
    Rat shrink_n = 1;
    for (std::size_t k = 0; k < n; ++k) shrink_n *= shrink;
    const Rat det_lin = det(lin);
    if (sgn(det_lin) <= 0) throw CertificateError("linear map is not orientation preserving");
    c.det_ratio = shrink_n * det_lin;

    c.linear_gain = 0;
    c.rho_l1 = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs[i].x.size(); ++j) {
            c.linear_gain += frame.upsilon[i] * xs[i].alpha[j] * c.rho[i][j];
            c.rho_l1 += abs(c.rho[i][j]);
        }
    if (c.linear_gain != m.trace()) throw CertificateError("trace M differs from sum upsilon alpha rho");

    // det_ratio >= (1 - n delta) D >= 1 + tr M - q - n delta D, D = det(lin), q = max(0, 1 + tr M - D)
    Rat q = 1 + m.trace() - det_lin;
    if (sgn(q) < 0) q = 0;
    const Rat loss = Rat(static_cast<long>(n)) * c.delta * det_lin + q;
    c.eps_prime = sgn(c.rho_l1) == 0 ? Rat(0) : Rat(loss / c.rho_l1);
    c.lower_bound = 1 + c.linear_gain - c.eps_prime * c.rho_l1;
    const double l1 = c.rho_l1.get_d();
    c.eps_prime_tangent = l1 > 0 ? tangent / l1 : 0.0;
    return c;
}

CoverConstruction build_cover(const RadialBody& body, const ReferenceFrame& frame, const CoverOptions& opts)
{
    return build_cover([&body](const Vec3& u) { return body.rho(u); }, body.eps(), body.normalized(), frame, opts);
}

// ------------------------------------------------------------------ augmented ball

bool member_augmented_ball(std::span<const Rat> q, const AugmentedBall& b, const SymMapQ& gram)
{
    if (sgn(b.eps) <= 0) throw DomainError("augmented ball needs eps > 0");
    const Rat r2 = gram.quadratic(b.pole);
    const Rat q2 = gram.quadratic(q);
    if (q2 <= r2) return true;
    const VecQ gp = gram.matrix() * b.pole;
    for (int sign : {1, -1}) {
        // f(l) = |q - l z|^2 - (1 - l)^2 r^2 = a l^2 + 2 h l + c
        const Rat zfac = sign * (1 + b.eps);
        const Rat a = zfac * zfac * r2 - r2;
        const Rat h = r2 - zfac * dot(q, gp);
        const Rat c = q2 - r2;
        Rat lam = -h / a;
        if (lam < 0) lam = 0;
        if (lam > 1) lam = 1;
        if (a * lam * lam + 2 * h * lam + c <= 0) return true;
    }
    return false;
}

bool member_augmented_ball(std::span<const Rat> q, const AugmentedBall& b)
{
    return member_augmented_ball(q, b, SymMapQ::identity(q.size()));
}

// ------------------------------------------------------------------ witness

namespace {

struct WitnessContext {
    const LatticeModel& lat;
    CoveringRadius cov;
    EutaxyReport rep;
    MatQ ginv;
};

MatQ witness_map(const MatQ& ginv, const SymMapQ& farkas, const Rat& s)
{
    const std::size_t n = ginv.rows();
    return MatQ::identity(n) + Rat(s / 2) * (ginv * farkas.matrix());
}

// Fills every check; returns whether all pass.
bool evaluate_witness(const WitnessContext& ctx, ExtensionWitness& w)
{
    const auto& removed = ctx.rep.pairs[w.removed_pair];
    w.t = witness_map(ctx.ginv, w.farkas, w.s);
    w.det_t = det(w.t);
    bool ok = w.det_t > 1;
    w.kept_cr2.clear();
    for (std::size_t i = 0; i < ctx.cov.maximal.size(); ++i) {
        if (std::find(removed.begin(), removed.end(), i) != removed.end()) continue;
        w.kept_cr2.push_back(exact_cr_after(w.t, ctx.cov.maximal[i], ctx.lat.gram));
        ok = ok && w.kept_cr2.back() < ctx.cov.mu2;
    }
    const auto& s0 = ctx.cov.maximal[removed.front()];
    const VecQ shift = scale(w.translation, w.ball.pole);
    w.memberships.clear();
    for (const auto& x : s0.x) {
        w.memberships.push_back(member_augmented_ball(add(w.t * x, shift), w.ball, ctx.lat.gram));
        ok = ok && w.memberships.back();
    }
    return ok;
}

WitnessContext witness_context(const LatticeModel& lat)
{
    WitnessContext ctx{lat, covering_radius(lat), classify_lattice(lat), *inverse(lat.gram.matrix())};
    return ctx;
}

}  // namespace

std::optional<ExtensionWitness> extension_witness(const LatticeModel& lat, std::size_t pair, const Rat& eps,
                                                  int max_halvings)
{
    if (sgn(eps) <= 0) throw DomainError("eps must be positive");
    const auto ctx = witness_context(lat);
    if (!ctx.rep.semi_eutactic()) throw DomainError("lattice is not extreme for the ball");
    if (pair >= ctx.rep.pairs.size())
        throw DomainError("pair index out of range (" + std::to_string(ctx.rep.pairs.size()) + " pairs)");
    const auto& removal = ctx.rep.removals[pair].outcome;
    if (std::holds_alternative<Feasible>(removal))
        throw ExtensibleError("removing this pair keeps the set semi-eutactic: the ball is extensible here");

    ExtensionWitness w;
    w.removed_pair = pair;
    w.farkas = std::get<Infeasible>(removal).certificate;
    w.mu2 = ctx.cov.mu2;
    w.ball.eps = eps;
    const auto& s0 = ctx.cov.maximal[ctx.rep.pairs[pair].front()];

    const std::array<Rat, 4> fractions = {make_rat(1, 2), make_rat(1, 4), make_rat(3, 4), make_rat(1, 8)};
    for (std::size_t pv = 0; pv < s0.x.size(); ++pv) {
        w.pole_vertex = pv;
        w.ball.pole = s0.x[pv];
        for (const auto& f : fractions) {
            w.translation = f * eps;
            Rat s = 1;
            for (int k = 0; k <= max_halvings; ++k, s /= 2) {
                w.s = s;
                if (evaluate_witness(ctx, w)) {
                    if (lat.embedding) {
                        const MatQ& b = *lat.embedding;
                        w.t_euclidean = b * w.t * *inverse(b);
                    }
                    return w;
                }
            }
        }
    }
    return std::nullopt;
}

bool verify_witness(const LatticeModel& lat, const ExtensionWitness& w)
{
    if (sgn(w.s) <= 0) return false;
    const auto ctx = witness_context(lat);
    if (w.removed_pair >= ctx.rep.pairs.size() || w.mu2 != ctx.cov.mu2) return false;

    const auto& removed = ctx.rep.pairs[w.removed_pair];
    const auto& s0 = ctx.cov.maximal[removed.front()];
    if (w.pole_vertex >= s0.x.size() || w.ball.pole != s0.x[w.pole_vertex]) return false;

    // The separating form must be a strict certificate for the kept maps.
    const auto maps = maximal_maps(lat);
    if (sgn(inner(w.farkas, identity_target(lat.gram))) <= 0) return false;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (std::find(removed.begin(), removed.end(), i) != removed.end()) continue;
        if (sgn(inner(w.farkas, maps[i].q)) >= 0) return false;
    }

    ExtensionWitness check = w;
    if (!evaluate_witness(ctx, check)) return false;
    return check.t == w.t && check.det_t == w.det_t && check.kept_cr2 == w.kept_cr2 &&
           check.memberships == w.memberships;
}

}  // namespace covlat
