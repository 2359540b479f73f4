#include "doctest.h"

#include <random>

#include "bellgeom/lp.hpp"

using namespace bellgeom;

TEST_CASE("trivial LP: max x s.t. x <= 1") {
    LinearProgram lp(1);
    lp.c << 1;
    lp.upper[0] = 1.0;
    auto r = lp_solve(lp);
    REQUIRE(r.ok());
    CHECK(r.optimum == doctest::Approx(1.0));
    CHECK(r.gap < 1e-12);
}

TEST_CASE("statuses are distinct") {
    LinearProgram inf(1);
    inf.c << 1;
    Vec<double> row(1);
    row << 1;
    inf.add_ub(row, -1);  // x <= -1 with x >= 0
    CHECK(lp_solve(inf).status == LpStatus::infeasible);

    LinearProgram unb(1);
    unb.c << 1;
    CHECK(lp_solve(unb).status == LpStatus::unbounded);
}

TEST_CASE("free variables, equalities and duals") {
    // max x + y s.t. x - y = 1, x + 2y <= 4, y free
    LinearProgram lp(2);
    lp.c << 1, 1;
    lp.free_var[1] = true;
    Vec<double> r1(2), r2(2);
    r1 << 1, -1;
    r2 << 1, 2;
    lp.add_eq(r1, 1);
    lp.add_ub(r2, 4);
    auto r = lp_solve(lp);
    REQUIRE(r.ok());
    CHECK(r.optimum == doctest::Approx(3.0));
    CHECK(r.x[0] == doctest::Approx(2.0));
    CHECK(r.gap < 1e-12);
    CHECK(r.dual_infeasibility < 1e-12);
}

TEST_CASE("exact rational mode") {
    LinearProgramT<Rational> lp(2);
    lp.c << Rational(1), Rational(1);
    Vec<Rational> r1(2), r2(2);
    r1 << Rational(3), Rational(1);
    r2 << Rational(1), Rational(3);
    lp.add_ub(r1, Rational(1));
    lp.add_ub(r2, Rational(1));
    auto r = lp_solve(lp);
    REQUIRE(r.ok());
    CHECK(r.optimum == Rational(1, 2));
    CHECK(r.dual_objective == Rational(1, 2));
    CHECK(r.y_ub[0] == Rational(1, 4));
}

TEST_CASE("random LPs: strong duality and agreement with the exact replay") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 100; ++t) {
        int n = 4 + t % 5, m = 3 + t % 4;
        LinearProgram lp(n);
        for (int j = 0; j < n; ++j) lp.c[j] = U(rng);
        for (int i = 0; i < m; ++i) {
            Vec<double> row(n);
            for (int j = 0; j < n; ++j) row[j] = U(rng);
            lp.add_ub(row, 1 + U(rng) * 0.5);
        }
        for (int j = 0; j < n; ++j) lp.upper[j] = 2.0;
        if (t % 3 == 0) {
            lp.free_var[0] = true;
            Vec<double> low = Vec<double>::Zero(n);
            low[0] = -1;
            lp.add_ub(low, 2);
        }
        auto r = lp_solve(lp);
        REQUIRE(r.ok());
        CHECK(r.gap <= 1e-9);
        CHECK(r.dual_infeasibility <= 1e-9);
        auto q = lp_solve(to_rational(lp));
        REQUIRE(q.ok());
        CHECK(q.optimum == q.dual_objective);
        CHECK(std::abs(to_double(q.optimum) - r.optimum) < 1e-9);
    }
}

TEST_CASE("Q(sqrt5) arithmetic") {
    using Q5 = Quad<5>;
    Q5 s = Q5::root();
    CHECK(s * s == Q5(5));
    CHECK((s - Q5(2)).sign() > 0);
    CHECK((Q5(2) - s).sign() < 0);
    CHECK((Q5(3) - s) / Q5(2) > Q5(0));
    CHECK((Q5(1) / (s - Q5(2))) == s + Q5(2));
}
