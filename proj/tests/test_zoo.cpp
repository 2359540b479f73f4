#include "doctest.h"

#include <cmath>

#include "bellgeom/polytope.hpp"
#include "bellgeom/qubit.hpp"
#include "bellgeom/zoo.hpp"

using namespace bellgeom;

namespace {
template <class T>
T flip_all(T v) {
    for (int i = 0; i < v.scenario.parties(); ++i)
        for (int x = 0; x < v.scenario.inputs(i); ++x) v = flip_output(v, i, x);
    return v;
}
}  // namespace

TEST_CASE("every zoo entry is consistent") {
    for (auto& n : zoo_names()) {
        auto& o = named(n);
        CAPTURE(n);
        if (o.kind == Kind::behaviour) {
            REQUIRE(o.behaviour);
            CHECK(is_valid(*o.behaviour));
            auto c = prob_to_corr(*o.behaviour);
            for (size_t i = 0; i < o.exact.size(); ++i) CHECK(std::abs(c.c[i] - o.exact[i].value()) < 1e-12);
        } else {
            REQUIRE(o.functional);
            REQUIRE(o.bounds);
            CHECK(std::abs(local_bound(*o.functional).value - o.bounds->L) < 1e-9);
            CHECK(std::abs(ns_bound(*o.functional).value - o.bounds->NS) < 1e-9);
            CHECK(o.bounds->L <= o.bounds->Q + 1e-12);
            CHECK(o.bounds->Q <= o.bounds->NS + 1e-12);
        }
        CHECK_FALSE(o.description.empty());
    }
    CHECK_THROWS_AS(named("B99"), UnknownName);
    CHECK_THROWS(zoo_functional("PR"));
    CHECK_THROWS(zoo_behaviour("B1"));
}

TEST_CASE("named behaviours") {
    double h = 1 / std::sqrt(2.0);
    auto pc = prob_to_corr(zoo_behaviour("pCHSH"));
    CHECK(std::abs(pc[{1, 0}]) < 1e-15);
    CHECK(std::abs(pc[{0, 2}]) < 1e-15);
    CHECK(pc[{1, 1}] == doctest::Approx(h));
    CHECK(pc[{1, 2}] == doctest::Approx(h));
    CHECK(pc[{2, 1}] == doctest::Approx(h));
    CHECK(pc[{2, 2}] == doctest::Approx(-h));

    auto hc = prob_to_corr(zoo_behaviour("hardy"));
    CHECK(std::abs(hc[{1, 1}] - (6 * std::sqrt(5.0) - 13)) < 1e-12);
    CHECK(named("hardy").exact[4].str().find("sqrt(5)") != std::string::npos);

    auto ne = prob_to_corr(zoo_behaviour("P_NE"));
    CHECK(std::abs(ne[{1, 0}]) < 1e-15);
    CHECK(ne[{1, 1}] == doctest::Approx(0.5));
    CHECK(ne[{2, 2}] == doctest::Approx(-1));
}

TEST_CASE("Hardy point saturates exactly three positivity facets") {
    auto h = zoo_behaviour("hardy");
    int zeros = 0;
    for (int i = 0; i < 16; ++i) zeros += std::abs(h.p[i]) < 1e-12;
    CHECK(zeros == 3);
    CHECK(std::abs(h(3, 3)) < 1e-12);  // P(11|11)
    CHECK(std::abs(h(1, 2)) < 1e-12);  // P(10|01)
    CHECK(std::abs(h(2, 1)) < 1e-12);  // P(01|10)
}

TEST_CASE("flipping all outputs maps B2 to B2* and its maximizers") {
    auto b2 = zoo_functional("B2"), b2s = zoo_functional("B2*");
    CHECK((flip_all(b2).g - b2s.g).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs_diff(flip_all(zoo_behaviour("Pdet1")), zoo_behaviour("Pdet2")) < 1e-15);
    CHECK(max_abs_diff(flip_all(zoo_behaviour("pCHSH")), zoo_behaviour("pCHSH")) < 1e-15);
    auto r = seesaw_lower_bound(b2s);
    CHECK(std::abs(r.value - 4) < 1e-6);
    bool pc = false, det = false;
    for (auto& p : r.all_optima) {
        pc |= max_abs_diff(p, zoo_behaviour("pCHSH")) < 1e-5;
        det |= max_abs_diff(p, zoo_behaviour("Pdet2")) < 1e-5;
    }
    CHECK(pc);
    CHECK(det);
}

TEST_CASE("B3 family bounds") {
    for (auto [a, c] : std::vector<std::pair<double, double>>{{0.1, 0.3}, {0.5, 1.0}, {1, 1}}) {
        auto f = b3_functional(a, c);
        auto b = b3_bounds(a, c);
        CHECK(b.L == doctest::Approx(2 * c + 1));
        CHECK(b.NS == doctest::Approx(4 * c + 1 - 2 * a));
        CHECK(std::abs(local_bound(f).value - b.L) < 1e-9);
        CHECK(std::abs(ns_bound(f).value - b.NS) < 1e-9);
    }
    CHECK(std::abs(seesaw_lower_bound(b3_functional(1, 1)).value - 3) < 1e-6);
    // table rows sit on the boundary c = c_max(a); printed c values are rounded
    CHECK(std::abs(seesaw_lower_bound(b3_functional(0.1, b3_cmax(0.1))).value - 1.649) < 1e-3);
    CHECK(std::abs(seesaw_lower_bound(b3_functional(0.5, b3_cmax(0.5))).value - 3.386) < 1e-3);
}

TEST_CASE("B3 boundary curve") {
    CHECK(std::abs(b3_cmax(0.2) - 0.592) < 1e-3);
    CHECK(std::abs(b3_cmax(0.8) - 1.510) < 1e-3);
    CHECK(std::abs(b3_cmax(0.99) - 1.272) < 1e-3);
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double c = b3_cmax(a);
        CHECK(std::abs(b3_region(a, c)) < 1e-9);
        CHECK(b3_region(a, c - 1e-3) > 0);
        CHECK(b3_region(a, c + 1e-3) < 0);
    }
}

TEST_CASE("B3 nonlocal maximizers") {
    auto m0 = b3_nonlocal_maximizer(0.280776);
    REQUIRE(m0.found);
    CHECK(std::abs(m0.lambda - 0.5) < 5e-3);

    auto m1 = b3_nonlocal_maximizer(0.586417);
    CHECK(std::abs(m1.phi - 90) < 0.2);

    auto m2 = b3_nonlocal_maximizer(0.9);
    CHECK(std::abs(m2.beta_chsh - 2.599) < 1e-2);
    CHECK(std::abs(m2.phi - 72.036) < 0.2);
    CHECK(std::abs(m2.phi - m2.phi_bob) < 1e-3);
    CHECK(std::abs(bell_value(b3_functional(0.9, m2.c), m2.behaviour) - m2.beta_q) < 1e-9);
    CHECK_FALSE(local_membership(m2.behaviour).inside);
}

TEST_CASE("B3 trends over the table grid") {
    std::vector<double> grid{0.1, 0.2, 0.280776, 0.5, 0.586417, 0.6, 0.7, 0.8, 0.846074, 0.9, 0.99};
    std::vector<B3Maximizer> ms;
    for (double a : grid) ms.push_back(b3_nonlocal_maximizer(a));
    size_t argmin = 0;
    for (size_t i = 0; i < ms.size(); ++i) {
        REQUIRE(ms[i].found);
        if (ms[i].lambda < ms[argmin].lambda) argmin = i;
        if (i) CHECK(ms[i].phi < ms[i - 1].phi);
    }
    CHECK(grid[argmin] == 0.280776);
}
