#include "covlat/lattice.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace covlat;

namespace {

std::vector<VecQ> euclidean(const LatticeModel& lat, const std::vector<VecQ>& vs)
{
    std::vector<VecQ> out;
    for (const auto& v : vs) out.push_back(to_euclidean(lat, v));
    return out;
}

}  // namespace

TEST_CASE("A_n^* has n! Delone classes and the known covering radius")
{
    for (int n = 2; n <= 5; ++n) {
        const auto lat = build_anstar(n);
        long fact = 1;
        for (int k = 2; k <= n; ++k) fact *= k;
        CHECK(lat.delone_classes.size() == static_cast<std::size_t>(fact));
        CHECK(positive_definite(lat.gram));
        if (n <= 4) {
            // n(n+2)/12 in the scale of the Gram matrix (n+1) I - J
            CHECK(covering_radius(lat).mu2 == make_rat(n * (n + 2), 12));
            CHECK(genericity_check(lat));
        }
    }
    CHECK_THROWS_AS(build_anstar(1), DomainError);
    CHECK_THROWS_AS(build_anstar(6), DomainError);
}

TEST_CASE("bcc embedding realizes the Gram matrix")
{
    const auto lat = build_anstar(3);
    REQUIRE(lat.embedding);
    CHECK(SymMapQ(lat.embedding->transpose() * *lat.embedding) == lat.gram);
}

TEST_CASE("circumcentre by equidistance")
{
    const auto lat = build_anstar(3);
    for (const auto& d : lat.delone_classes) {
        const auto cs = circumcenter(d, lat.gram);
        const auto ev = euclidean(lat, d.vertices);
        const VecQ c = to_euclidean(lat, cs.center);

        // Oracle: 2 <v_i - v_0, c> = |v_i|^2 - |v_0|^2.
        MatQ a(3, 3);
        VecQ b(3);
        for (std::size_t i = 1; i <= 3; ++i) {
            for (std::size_t k = 0; k < 3; ++k) a(i - 1, k) = 2 * (ev[i][k] - ev[0][k]);
            b[i - 1] = dot(ev[i], ev[i]) - dot(ev[0], ev[0]);
        }
        const auto sol = solve_affine(a, b);
        REQUIRE(sol.unique());
        CHECK(*sol.particular == c);
        for (const auto& v : ev) CHECK(dot(sub(v, c), sub(v, c)) == make_rat(5, 4));

        // Barycentric coordinates reproduce the centre.
        VecQ bc = zeros(3);
        Rat total = 0;
        for (std::size_t j = 0; j < ev.size(); ++j) {
            bc = add(bc, scale(cs.alpha[j], ev[j]));
            total += cs.alpha[j];
        }
        CHECK(bc == c);
        CHECK(total == 1);
        for (const auto& a_j : cs.alpha) CHECK(a_j == make_rat(1, 4));
        CHECK(verify_empty_sphere(lat, d));
    }
}

TEST_CASE("A_3^* primitive simplices and Voronoi vertices")
{
    const auto lat = build_anstar(3);
    const auto cov = covering_radius(lat);
    CHECK(cov.mu2 == make_rat(5, 4));
    REQUIRE(cov.maximal.size() == 6);
    for (const auto& s : cov.maximal) {
        CHECK(s.cr2 == make_rat(5, 4));
        CHECK(s.alpha == VecQ(4, make_rat(1, 4)));
        CHECK(cov.maximal[s.partner].partner == s.source);
        for (const auto& x : euclidean(lat, s.x)) CHECK(dot(x, x) == make_rat(5, 4));
    }
    CHECK(pair_representatives(cov).size() == 3);

    // Permutations of (+-1, +-1/2, 0).
    std::set<VecQ> expect;
    const Rat h = make_rat(1, 2);
    std::array<Rat, 3> base{Rat(1), h, Rat(0)};
    std::sort(base.begin(), base.end());
    do {
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                VecQ v(base.begin(), base.end());
                int flip = 0;
                for (auto& x : v)
                    if (sgn(x) != 0) x *= (flip++ == 0 ? s1 : s2);
                expect.insert(v);
            }
    } while (std::next_permutation(base.begin(), base.end()));
    REQUIRE(expect.size() == 24);
    const auto vv = euclidean(lat, voronoi_vertices(lat));
    CHECK(std::set<VecQ>(vv.begin(), vv.end()) == expect);
    CHECK(vv.size() == 24);
}

TEST_CASE("cubic lattice is not generic and corrupted simplices are caught")
{
    const auto z3 = kuhn_lattice(SymMapQ::identity(3));
    CHECK(z3.delone_classes.size() == 6);
    CHECK_FALSE(genericity_check(z3));

    const auto lat = build_anstar(3);
    DeloneSimplex bad = lat.delone_classes[0];
    bad.vertices[2] = scale(Rat(3), bad.vertices[2]);
    CHECK_FALSE(verify_empty_sphere(lat, bad));

    DeloneSimplex flat = lat.delone_classes[0];
    flat.vertices[3] = flat.vertices[2];
    CHECK_THROWS_AS(circumcenter(flat, lat.gram), DegenerateSimplex);
}

TEST_CASE("covering radius is invariant under unimodular change of basis")
{
    const MatQ u{{1, 1, 0}, {0, 1, 0}, {0, 2, 1}};
    REQUIRE(det(u) == 1);
    const auto lat = build_anstar(3);
    const auto moved = change_basis(lat, u);
    CHECK(moved.gram == congruence(u, lat.gram));
    CHECK(covering_radius(moved).mu2 == covering_radius(lat).mu2);
    CHECK(genericity_check(moved));
    const auto a = euclidean(lat, voronoi_vertices(lat));
    const auto b = euclidean(moved, voronoi_vertices(moved));
    CHECK(std::set<VecQ>(a.begin(), a.end()) == std::set<VecQ>(b.begin(), b.end()));
    CHECK_THROWS_AS(change_basis(lat, MatQ{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), DomainError);
}

TEST_CASE("lattice point enumeration matches a plain box scan")
{
    const auto lat = build_anstar(3);
    const VecQ c{make_rat(1, 3), make_rat(-1, 2), make_rat(1, 5)};
    const Rat r2 = 9;
    std::set<VecQ> seen;
    for_each_lattice_point(lat.gram, c, r2, [&](const VecQ& u, const Rat& d2) {
        CHECK(d2 == lat.gram.quadratic(sub(u, c)));
        seen.insert(u);
    });
    std::set<VecQ> brute;
    for (long i = -6; i <= 6; ++i)
        for (long j = -6; j <= 6; ++j)
            for (long k = -6; k <= 6; ++k) {
                const VecQ u{Rat(i), Rat(j), Rat(k)};
                if (lat.gram.quadratic(sub(u, c)) <= r2) brute.insert(u);
            }
    CHECK(seen == brute);
    CHECK(!brute.empty());
}
