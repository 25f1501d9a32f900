#include "covlat/exact.hpp"

#include <doctest.h>

#include <random>

using namespace covlat;

namespace {

// Laplace expansion along the first row.
Rat cofactor_det(const MatQ& m)
{
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Rat s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        MatQ minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor(i - 1, k++) = m(i, j);
        const Rat term = m(0, c) * cofactor_det(minor);
        s += c % 2 == 0 ? term : Rat(-term);
    }
    return s;
}

MatQ random_matrix(std::mt19937& rng, std::size_t r, std::size_t c)
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    MatQ m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = make_rat(num(rng), den(rng));
    return m;
}

}  // namespace

TEST_CASE("rationals print and parse canonically")
{
    CHECK(to_string(make_rat(6, -4)) == "-3/2");
    CHECK(to_string(make_rat(4, 2)) == "2");
    CHECK(parse_rat("10/4") == make_rat(5, 2));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK_THROWS_AS(parse_rat("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rat("x"), DomainError);
    CHECK_THROWS_AS(make_rat(1, 0), DomainError);
}

TEST_CASE("doubles convert exactly")
{
    CHECK(rat_from_double(0.1) == Rat(Int("3602879701896397"), Int("36028797018963968")));
    CHECK(rat_from_double(-0.75) == make_rat(-3, 4));
    CHECK(rat_from_double(0.0) == 0);
}

TEST_CASE("determinant agrees with cofactor expansion")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
        const MatQ a = random_matrix(rng, n, n);
        CHECK(det(a) == cofactor_det(a));
    }
}

TEST_CASE("determinant is multiplicative")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const MatQ a = random_matrix(rng, 4, 4), b = random_matrix(rng, 4, 4);
        CHECK(det(a * b) == det(a) * det(b));
    }
    CHECK(det(MatQ{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("inverse and rank")
{
    std::mt19937 rng(3);
    const MatQ a = random_matrix(rng, 4, 4);
    REQUIRE(det(a) != 0);
    const auto inv = inverse(a);
    REQUIRE(inv);
    CHECK(a * *inv == MatQ::identity(4));
    CHECK(!inverse(MatQ{{1, 2}, {2, 4}}));
    CHECK(rank(MatQ{{1, 2, 3}, {2, 4, 6}}) == 1);
}

TEST_CASE("affine solve returns the full solution set")
{
    const MatQ a{{1, 1, 0}, {0, 1, 1}};
    const VecQ b{2, 3};
    const auto s = solve_affine(a, b);
    REQUIRE(s.consistent());
    CHECK(a * *s.particular == b);
    REQUIRE(s.nullspace_basis.size() == 1);
    CHECK(is_zero(a * s.nullspace_basis[0]));
    CHECK_FALSE(s.unique());

    const auto bad = solve_affine(MatQ{{1, 1}, {2, 2}}, VecQ{1, 3});
    CHECK_FALSE(bad.consistent());
}

TEST_CASE("symmetric maps")
{
    CHECK_THROWS_AS(SymMapQ(MatQ{{1, 2}, {3, 4}}), DomainError);
    const SymMapQ a(MatQ{{2, 1}, {1, 3}});
    CHECK(SymMapQ::from_upper(2, a.upper()) == a);
    CHECK(inner(a, SymMapQ::identity(2)) == 5);
    CHECK(a.quadratic(VecQ{1, -1}) == 3);
    const VecQ v{1, 2};
    CHECK(SymMapQ::weighted_outer_sum(std::vector<VecQ>{v}, VecQ{make_rat(1, 2)}) ==
          SymMapQ(MatQ{{make_rat(1, 2), 1}, {1, 2}}));
}

TEST_CASE("least-norm map for trace constraints")
{
    // <M, Id> = 2 in dimension 2: M = Id.
    const std::vector<MapConstraint> one{{SymMapQ::identity(2), 2}};
    CHECK(min_norm_solution(one) == SymMapQ::identity(2));

    // Two independent constraints: the solution meets both and lies in their span.
    const SymMapQ p(MatQ{{1, 0}, {0, 0}}), q(MatQ{{1, 1}, {1, 1}});
    const std::vector<MapConstraint> two{{p, 3}, {q, 5}};
    const auto m = min_norm_solution(two);
    CHECK(inner(m, p) == 3);
    CHECK(inner(m, q) == 5);
    // orthogonal to the complement of span{p, q}
    CHECK(inner(m, SymMapQ(MatQ{{0, 1}, {1, -2}})) == 0);

    const std::vector<MapConstraint> dep{{p, 1}, {Rat(2) * p, 3}};
    CHECK_THROWS_AS(min_norm_solution(dep), DependentConstraints);
    try {
        min_norm_solution(dep);
    } catch (const DependentConstraints& e) {
        CHECK_FALSE(e.consistent());
        CHECK(e.witness().size() == 2);
    }
}
