#include "covlat/harmonic.hpp"
#include "covlat/report_io.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace covlat;

namespace {

Int five_l_factorial(unsigned l)
{
    Int r = 1;
    for (unsigned j = 1; j <= l; ++j) r *= 5 * j;
    return r;
}

// c_l straight from the Legendre values at the six nodes.
Rat c_l_direct(unsigned l)
{
    return legendre_rational(l, 1) + 3 * legendre_rational(l, make_rat(4, 5)) + legendre_rational(l, make_rat(3, 5)) +
           4 * legendre_rational(l, make_rat(2, 5)) + 2 * legendre_rational(l, make_rat(1, 5)) +
           legendre_rational(l, 0);
}

}  // namespace

TEST_CASE("Legendre values")
{
    CHECK(legendre_rational(4, make_rat(4, 5)) == make_rat(-233, 1000));
    CHECK(legendre_rational(2, make_rat(3, 5)) == make_rat(1, 25));
    CHECK(legendre_rational(0, make_rat(1, 3)) == 1);
    CHECK(legendre(4, 0.8) == doctest::Approx(-0.233).epsilon(1e-14));
    for (unsigned l = 0; l < 30; ++l) CHECK(legendre_rational(l, 1) == 1);
}

TEST_CASE("rescaled recurrence equals 5^l l! P_l(k/5)")
{
    for (int k = 0; k <= 5; ++k)
        for (unsigned l = 0; l <= 40; ++l)
            CHECK(Rat(rescaled_q(l, k)) == Rat(five_l_factorial(l)) * legendre_rational(l, make_rat(k, 5)));
    CHECK_THROWS_AS(rescaled_q(3, 6), DomainError);
}

TEST_CASE("multiplier values")
{
    CHECK(c_l(2) == 0);
    CHECK(c_l(4) == make_rat(7, 25));
    CHECK(c_l(0) == 12);
    for (unsigned l = 0; l <= 60; ++l) {
        CHECK(c_l(l) == c_l_direct(l));
        // 5^l l! c_l is an integer
        CHECK(Rat(Rat(five_l_factorial(l)) * c_l(l)).get_den() == 1);
    }
}

TEST_CASE("mod-16 tables agree with big integers")
{
    for (int k = 0; k <= 5; ++k) {
        const auto big = rescaled_q_table(200, k);
        const auto small = rescaled_q_mod16_table(200, k);
        for (unsigned l = 0; l <= 200; ++l) {
            Int r;
            mpz_fdiv_r_ui(r.get_mpz_t(), big[l].get_mpz_t(), 16);
            CHECK(r.get_ui() == small[l]);
        }
    }
}

TEST_CASE("residues are periodic")
{
    // Reference rows for k = 0, 2, 4 by l mod 8; they carry the weights 1, 4, 3.
    const std::array<std::array<unsigned, 8>, 3> rows = {{
        {1, 0, 7, 0, 9, 0, 7, 0},
        {4, 8, 12, 8, 4, 8, 12, 8},
        {3, 12, 5, 4, 11, 12, 5, 4},
    }};
    for (std::size_t r = 0; r < 3; ++r) {
        const auto t = rescaled_q_mod16_table(1000, static_cast<int>(2 * r));
        const unsigned weight = static_cast<unsigned>(cl_weights[2 * r]);
        for (unsigned l = 0; l <= 1000; ++l) CHECK(weight * t[l] % 16 == rows[r][l % 8]);
    }
    // k = 1, 3, 5 vanish mod 16 from l = 6 on.
    for (int k : {1, 3, 5}) {
        const auto t = rescaled_q_mod16_table(1000, k);
        CHECK(t[6] == 0);
        CHECK(t[7] == 0);
        for (unsigned l = 6; l <= 1000; ++l) CHECK(t[l] == 0);
    }
}

TEST_CASE("certificates: only l = 2 vanishes")
{
    const auto certs = certify_cl(1000, 100);
    REQUIRE(certs.size() == 1001);
    for (const auto& c : certs) {
        if (c.l == 2) {
            CHECK(c.status == ClCertificate::Status::Zero);
        } else {
            CHECK(c.nonzero());
        }
        if (c.l >= 6) CHECK(c.residue != 0);
        if (c.l <= 100) CHECK(c.exact == c_l(c.l));
        if (c.l > 100) CHECK_FALSE(c.exact);
    }
}

TEST_CASE("envelope constants")
{
    const auto e = bernstein_envelope(400);
    CHECK(e.node_bounds_hold);
    // Oracle: sum of weights over the interior nodes t = 0, 1/5, ..., 4/5.
    const double pi = std::numbers::pi;
    double cb = 0;
    const double w[] = {1, 2, 4, 1, 3};
    for (int k = 0; k <= 4; ++k) cb += w[k] * std::pow(pi * std::sqrt(1 - k * k / 25.0) / 2, -0.5);
    CHECK(e.c_bernstein == doctest::Approx(cb).epsilon(1e-14));
    CHECK(e.c_empirical > 0);
    CHECK(e.c_empirical < e.c_bernstein);
    CHECK(std::abs(c_l(e.worst_l).get_d() - 1) * std::sqrt(double(e.worst_l)) == doctest::Approx(e.c_empirical).epsilon(1e-9));
}

TEST_CASE("zonal spectrum of the truncated octahedron")
{
    const auto verts = truncated_octahedron();
    const auto sp = zonal_spectrum(verts, default_pole(), 20);
    REQUIRE(sp.cosines.size() == 24);
    for (unsigned l = 0; l <= 20; ++l) {
        if (l % 2 == 1) CHECK(sgn(sp.multipliers[l]) == 0);
        else CHECK(sp.multipliers[l] == sp.c[l]);
    }
    CHECK(sp.multipliers[4] == make_rat(7, 25));

    auto moved = verts;
    moved[0] = negate(moved[0]);
    moved[1] = moved[0];
    CHECK_THROWS_AS(zonal_spectrum(moved, default_pole(), 4), VertexSetMismatch);
    auto short_set = verts;
    short_set.pop_back();
    CHECK_THROWS_AS(zonal_spectrum(short_set, default_pole(), 4), VertexSetMismatch);
}

TEST_CASE("Phi and its inverse")
{
    HarmonicExpansion<Rat> f{{{0, 0}, 2}, {{4, 1}, make_rat(-1, 3)}, {{6, -2}, make_rat(5, 7)}};
    const auto g = phi_transform(f);
    CHECK(g.at({4, 1}) == make_rat(-7, 75));
    CHECK(phi_inverse(g) == f);
    CHECK(phi_transform(phi_inverse(f)) == f);

    HarmonicExpansion<Rat> two{{{2, 0}, 1}};
    CHECK_THROWS_AS(phi_transform(two), DomainError);
    CHECK(phi_transform(two, true).at({2, 0}) == 0);
    CHECK_THROWS_AS(phi_inverse(two), DomainError);
    HarmonicExpansion<Rat> odd{{{3, 0}, 1}};
    CHECK_THROWS_AS(phi_transform(odd), DomainError);

    HarmonicExpansion<double> fd{{{4, 0}, 0.5}};
    CHECK(phi_transform(fd).at({4, 0}) == doctest::Approx(0.14));
}
