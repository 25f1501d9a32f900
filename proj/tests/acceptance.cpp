// Acceptance suite: one line per criterion, tolerances pinned below.

#include "covlat/report_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

using namespace covlat;

namespace {

constexpr double kDensityTol = 1e-12;      // AC3
constexpr double kQuadLo = 3.5, kQuadHi = 4.5;  // AC6
constexpr double kMaxAmplitude = 0.02;     // AC7
constexpr double kLinearTol = 0.25;        // AC8
constexpr int kRefineSteps = 2;            // AC8 construction
constexpr std::size_t kGrid = 1000;        // AC8

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " FAILED: " << what << ";";
        }
    }
};

int failures = 0;

void run(const char* id, const char* title, double budget_s, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        o.pass = false;
        o.detail << " over time budget " << budget_s << " s;";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.str().c_str());
    std::fflush(stdout);
}

SymMapQ random_small_sym(std::mt19937& rng)
{
    // entries in [-1/20, 1/20] with denominator 1000: Frobenius norm <= 3/20 * ... kept below 1/10 by rescaling
    std::uniform_int_distribution<long> d(-50, 50);
    SymMapQ m(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) m.set(i, j, make_rat(d(rng), 1000));
    // Frobenius norm^2 <= 9 * (1/20)^2 = 9/400 -> scale by 2/3 gives <= 1/100
    return make_rat(2, 3) * m;
}

}  // namespace

int main()
{
    run("AC1", "semi-eutaxy classes of A_n^*, n = 2..5", 320, [](Outcome& o) {
        for (int n = 2; n <= 5; ++n) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto lat = build_anstar(n);
            const auto maps = maximal_maps(lat);
            const auto target = identity_target(lat.gram);
            const auto rep = classify(maps, target);
            o.require(verify_report(maps, target, rep), "re-check n=" + std::to_string(n));
            if (n <= 3) {
                o.require(rep.classification == Classification::CriticallySemiEutactic, "critical n=" + std::to_string(n));
                o.require(rep.unique && rep.coefficients &&
                              std::all_of(rep.coefficients->begin(), rep.coefficients->end(), [](const Rat& v) { return sgn(v) > 0; }),
                          "unique positive coefficients n=" + std::to_string(n));
            } else {
                o.require(rep.classification == Classification::RedundantlySemiEutactic, "redundant n=" + std::to_string(n));
                for (std::size_t k = 0; k < rep.removals.size(); ++k) {
                    const auto* f = std::get_if<Feasible>(&rep.removals[k].outcome);
                    o.require(f != nullptr, "removal feasible");
                    if (f)
                        for (auto i : rep.pairs[k]) o.require(sgn(f->coeffs[i]) == 0, "zero on removed pair");
                }
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (n <= 4) o.require(secs < 10, "n <= 4 within 10 s");
            o.detail << " n=" << n << ": " << to_string(rep.classification) << " [" << maps.size() << " maps, "
                     << rep.pairs.size() << " pairs, " << std::fixed;
            o.detail.precision(2);
            o.detail << secs << " s]";
        }
    });

    run("AC2", "A_3^* Voronoi vertices, simplices and eutaxy coefficients", 1, [](Outcome& o) {
        const auto lat = build_anstar(3);
        std::set<VecQ> vv;
        for (const auto& v : voronoi_vertices(lat)) vv.insert(to_euclidean(lat, v));
        std::set<VecQ> expect;
        std::array<int, 3> perm{0, 1, 2};
        const std::array<Rat, 3> mag{Rat(1), make_rat(1, 2), Rat(0)};
        do {
            for (int s0 : {1, -1})
                for (int s1 : {1, -1}) {
                    VecQ v(3);
                    v[static_cast<std::size_t>(perm[0])] = s0 * mag[0];
                    v[static_cast<std::size_t>(perm[1])] = s1 * mag[1];
                    v[static_cast<std::size_t>(perm[2])] = 0;
                    expect.insert(v);
                }
        } while (std::next_permutation(perm.begin(), perm.end()));
        o.require(vv == expect && vv.size() == 24, "24 vertices (+-1, +-1/2, 0)");

        const auto cov = covering_radius(lat);
        o.require(cov.maximal.size() == 6, "6 maximal simplices");
        for (const auto& s : cov.maximal) {
            o.require(s.cr2 == make_rat(5, 4), "cr2 = 5/4");
            o.require(s.alpha == VecQ(4, make_rat(1, 4)), "alpha = 1/4");
            // equidistance oracle in the Euclidean frame
            VecQ bary = zeros(3);
            for (std::size_t j = 0; j < 4; ++j) {
                const VecQ x = to_euclidean(lat, s.x[j]);
                o.require(dot(x, x) == make_rat(5, 4), "|x|^2 = 5/4");
                bary = add(bary, scale(s.alpha[j], x));
            }
            o.require(is_zero(bary), "barycentre at the circumcentre");
        }
        const auto ups = eutaxy_coefficients_a3(lat);
        o.require(ups == VecQ(6, make_rat(1, 2)), "upsilon = 1/2");
        for (std::size_t i = 0; i < 6; ++i)
            for (const auto& a : cov.maximal[i].alpha) o.require(ups[i] * a == make_rat(1, 8), "upsilon alpha = 1/8");
        o.detail << " 24 vertices, alpha = 1/4, cr2 = 5/4, upsilon = 1/2, upsilon*alpha = 1/8";
    });

    run("AC3", "ball covering density in 3D", 1, [](Outcome& o) {
        const auto lat = build_anstar(3);
        const Rat mu2 = covering_radius(lat).mu2;
        const Rat d = abs(det(*lat.embedding));
        const double pi = std::numbers::pi;
        const double density = 4.0 / 3.0 * pi * std::pow(mu2.get_d(), 1.5) / d.get_d();
        const double expect = 5 * std::sqrt(5.0) * pi / 24;
        o.require(std::abs(density - expect) <= kDensityTol, "density within 1e-12");
        o.require(d == 4, "det = 4");
        o.detail.precision(15);
        o.detail << " vol B(sqrt(" << to_string(mu2) << "))/" << to_string(d) << " = " << density << " vs " << expect
                 << " (diff " << std::abs(density - expect) << ")";
    });

    run("AC4", "multipliers c_l: zero only at l = 2 up to 10000", 30, [](Outcome& o) {
        const auto certs = certify_cl(10000, 200);
        std::size_t exact = 0, mod16 = 0;
        for (const auto& c : certs) {
            if (c.l == 2) {
                o.require(c.status == ClCertificate::Status::Zero && c.exact && sgn(*c.exact) == 0, "c_2 = 0");
                continue;
            }
            o.require(c.nonzero(), "c_" + std::to_string(c.l) + " nonzero");
            if (c.l >= 6) o.require(c.residue != 0, "residue nonzero at l=" + std::to_string(c.l));
            exact += c.status == ClCertificate::Status::NonzeroExact;
            mod16 += c.status == ClCertificate::Status::NonzeroMod16;
        }
        const std::array<std::array<unsigned, 8>, 3> rows = {{
            {1, 0, 7, 0, 9, 0, 7, 0},
            {4, 8, 12, 8, 4, 8, 12, 8},
            {3, 12, 5, 4, 11, 12, 5, 4},
        }};
        for (std::size_t r = 0; r < 3; ++r) {
            const auto t = rescaled_q_mod16_table(10000, static_cast<int>(2 * r));
            const unsigned weight = static_cast<unsigned>(cl_weights[2 * r]);
            for (unsigned l = 0; l <= 10000; ++l) o.require(weight * t[l] % 16 == rows[r][l % 8], "residue row");
            if (!o.pass) break;
        }
        o.detail << " " << exact << " exact, " << mod16 << " mod-16 certificates; weighted residue rows 1*Q(0), 4*Q(2/5), 3*Q(4/5) match";
    });

    run("AC5", "zonal multipliers of the 24 vertices", 5, [](Outcome& o) {
        const auto sp = zonal_spectrum(truncated_octahedron(), default_pole(), 20);
        for (unsigned l = 1; l <= 19; l += 2) o.require(sgn(sp.multipliers[l]) == 0, "odd multiplier vanishes");
        for (unsigned l = 0; l <= 20; l += 2) o.require(sp.multipliers[l] == sp.c[l], "even multiplier = c_l");
        o.require(sp.multipliers[4] == make_rat(7, 25), "c_4 = 7/25");
        o.detail << " m_l = 0 for odd l <= 19, m_l = c_l for even l <= 20, m_4 = " << to_string(sp.multipliers[4]);
    });

    run("AC6", "circumradius linearization: sign and quadratic error", 10, [](Outcome& o) {
        const auto frame = reference_frame(build_anstar(3));
        const SymMapQ id = SymMapQ::identity(3);
        std::mt19937 rng(20240601);
        double lo = 1e9, hi = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const SymMapQ m = random_small_sym(rng);
            o.require(inner(m, m) <= make_rat(1, 100), "|M| <= 1/10");
            auto err = [&](const SymMapQ& mm, const PrimitiveSimplex& s) -> Rat {
                const MatQ t = MatQ::identity(3) + make_rat(1, 2) * mm.matrix();
                return exact_cr_after(t, s, id) / s.cr2 - (1 + inner(mm, frame.maps[&s - frame.simplices.data()]));
            };
            for (const auto& s : frame.simplices) {
                const Rat e1 = err(m, s);
                o.require(sgn(e1) >= 0, "exact - first order >= 0");
                const Rat e2 = err(make_rat(1, 2) * m, s);
                if (sgn(e2) == 0) continue;
                const double r = Rat(e1 / e2).get_d();
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        }
        o.require(lo >= kQuadLo && hi <= kQuadHi, "ratio in [3.5, 4.5]");
        o.detail << " 100 samples x 6 simplices, error ratio under M -> M/2 in [" << lo << ", " << hi << "]";
    });

    run("AC7", "covering construction for random nearly spherical bodies", 60, [](Outcome& o) {
        const auto frame = reference_frame(build_anstar(3));
        const auto ball = build_cover(RadialBody(), frame);
        o.require(ball.det_ratio == 1, "ball det_ratio = 1");
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> deg(2, 4);
        std::uniform_real_distribution<double> coef(-1, 1), amp(0.1, 1);
        double worst_gap = 1e9;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<HarmonicTerm> terms;
            for (int k = 0; k < 4; ++k) {
                const int l = 2 * deg(rng);
                std::uniform_int_distribution<int> ord(-l, l);
                terms.push_back({l, ord(rng), coef(rng)});
            }
            const double raw = RadialBody(terms).eps();
            const double target = kMaxAmplitude * amp(rng);
            for (auto& t : terms) t.coefficient *= target / raw;
            const RadialBody body(terms);
            o.require(body.normalized() && body.eps() <= kMaxAmplitude * (1 + 1e-12), "amplitude <= 0.02");
            const auto c = build_cover(body, frame);
            o.require(c.verified, "membership");
            o.require(c.det_ratio >= c.lower_bound, "det_ratio >= lower bound");
            worst_gap = std::min(worst_gap, Rat(c.det_ratio - c.lower_bound).get_d());
        }
        o.detail << " 20 bodies verified, min(det_ratio - bound) = " << worst_gap << ", ball det_ratio = "
                 << to_string(ball.det_ratio);
    });

    run("AC8", "degree-4 bodies beat the ball; margin linear in amplitude", 300, [](Outcome& o) {
        const auto frame = reference_frame(build_anstar(3));
        CoverOptions opts;
        opts.refine_steps = kRefineSteps;
        const std::array<double, 3> amps = {0.02, 0.01, 0.005};
        std::array<double, 3> slope{}, plain_slope{};
        for (std::size_t k = 0; k < amps.size(); ++k) {
            const auto body = zonal_body(4, amps[k]);
            const auto r = rotation_scan(body, frame, kGrid, Execution::parallel, opts);
            const auto p = rotation_scan(body, frame, kGrid, Execution::parallel);
            const double margin = r.ball_density - r.density;
            o.require(margin > 0, "density below the ball's");
            slope[k] = margin / amps[k];
            plain_slope[k] = (p.ball_density - p.density) / amps[k];
            o.detail << " a=" << amps[k] << ": density " << r.density << ", margin/a " << slope[k]
                     << " (first-order only " << plain_slope[k] << ", harmonic estimate/a "
                     << r.harmonic_estimate / amps[k] << ");";
        }
        const double mean = (slope[0] + slope[1] + slope[2]) / 3;
        double spread = 0;
        for (double s : slope) spread = std::max(spread, std::abs(s / mean - 1));
        o.require(spread <= kLinearTol, "margin/a within 25% of its mean");
        o.detail << " max deviation from mean slope " << spread << " (Newton steps: " << kRefineSteps
                 << ", grid " << kGrid << ")";
    });

    run("AC9", "inextensibility witnesses for the three pairs of A_3^*", 30, [](Outcome& o) {
        const auto lat = build_anstar(3);
        for (std::size_t pair = 0; pair < 3; ++pair) {
            const auto w = extension_witness(lat, pair, make_rat(1, 100));
            o.require(w.has_value(), "witness found");
            if (!w) continue;
            o.require(w->det_t > 1, "det T > 1");
            for (const auto& r : w->kept_cr2) o.require(r < make_rat(5, 4), "kept cr2 < 5/4");
            for (bool b : w->memberships) o.require(b, "vertex in augmented ball");
            o.require(verify_witness(lat, *w), "independent re-check");
            o.require(verify_certificate(witness_report(lat, *w)).ok, "JSON round trip");
            o.detail << " pair " << pair << ": s = " << to_string(w->s) << ", det T - 1 = " << Rat(w->det_t - 1).get_d()
                     << ";";
        }
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
