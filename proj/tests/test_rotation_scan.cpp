#include "covlat/rotation_scan.hpp"

#include <doctest.h>

#include <cmath>

using namespace covlat;

namespace {

const ReferenceFrame& a3_frame()
{
    static const ReferenceFrame f = reference_frame(build_anstar(3));
    return f;
}

double det3(const Mat3& u)
{
    return u[0][0] * (u[1][1] * u[2][2] - u[1][2] * u[2][1]) - u[0][1] * (u[1][0] * u[2][2] - u[1][2] * u[2][0]) +
           u[0][2] * (u[1][0] * u[2][1] - u[1][1] * u[2][0]);
}

}  // namespace

TEST_CASE("rotation grid is nested and orthogonal")
{
    const auto small = rotation_grid(50), large = rotation_grid(200);
    REQUIRE(small.size() == 50);
    for (std::size_t k = 0; k < small.size(); ++k) CHECK(small[k] == large[k]);
    CHECK(small[0] == Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
    for (const auto& u : large) {
        CHECK(det3(u) == doctest::Approx(1).epsilon(1e-12));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double d = 0;
                for (std::size_t k = 0; k < 3; ++k) d += u[i][k] * u[j][k];
                CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).scale(1).epsilon(1e-12));
            }
        const Vec3 v{0.3, -0.4, 0.5};
        const Vec3 w = apply_transpose(u, apply(u, v));
        for (std::size_t i = 0; i < 3; ++i) CHECK(w[i] == doctest::Approx(v[i]).epsilon(1e-12));
    }
    CHECK(rotation_grid(0).empty());
}

TEST_CASE("ball density constant")
{
    // vol B(sqrt(5/4)) / det of the bcc lattice (det = 4)
    const double pi = std::acos(-1.0);
    CHECK(ball_covering_density() == doctest::Approx(4.0 / 3 * pi * std::pow(1.25, 1.5) / 4).epsilon(1e-14));
}

TEST_CASE("scan of the ball")
{
    const auto r = rotation_scan(RadialBody(), a3_frame(), 20);
    for (const auto& s : r.samples) {
        CHECK(s.det_ratio == 1);
        CHECK(std::abs(s.delta_bound) < 1e-14);  // volume ratio is a quadrature value
        CHECK(s.bracket == 0);
    }
    CHECK(r.density == doctest::Approx(r.ball_density).epsilon(1e-15));
    CHECK(r.harmonic_estimate == 0);
}

TEST_CASE("scan of a degree-4 body")
{
    const double a = 0.01;
    const auto body = zonal_body(4, a);
    const auto par = rotation_scan(body, a3_frame(), 40, Execution::parallel);
    const auto ser = rotation_scan(body, a3_frame(), 40, Execution::serial);
    REQUIRE(par.samples.size() == ser.samples.size());
    for (std::size_t k = 0; k < par.samples.size(); ++k) {
        CHECK(par.samples[k].det_ratio == ser.samples[k].det_ratio);
        CHECK(par.samples[k].delta_bound == ser.samples[k].delta_bound);
    }
    CHECK(par.best == ser.best);
    CHECK(par.best_sample.delta_bound < 0);
    CHECK(par.min_bracket < 0);
    CHECK(par.density < par.ball_density);

    // Harmonic estimate: -(1/4) c_4 a max P_4 = -(7/100) a.
    CHECK(par.harmonic_estimate == doctest::Approx(-0.07 * a).epsilon(1e-3));

    // Prefix grid cannot do better than the full grid.
    const auto half = rotation_scan(body, a3_frame(), 20);
    CHECK(par.best_sample.delta_bound <= half.best_sample.delta_bound);
    CHECK(par.min_bracket <= half.min_bracket);
}

TEST_CASE("scan preconditions")
{
    CHECK_THROWS_AS(rotation_scan(RadialBody({{2, 0, 0.01}}), a3_frame(), 5), PreconditionError);
    CHECK_THROWS_AS(rotation_scan(zonal_body(4, 0.3), a3_frame(), 5), PreconditionError);
    CHECK_THROWS_AS(rotation_scan(RadialBody(), a3_frame(), 0), DomainError);
}
