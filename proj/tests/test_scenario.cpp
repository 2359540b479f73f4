#include "doctest.h"

#include <cmath>
#include <random>

#include "bellgeom/exact.hpp"
#include "bellgeom/scenario.hpp"

using namespace bellgeom;

namespace {
// Independent oracle: P(ab|xy) for 2222 from the textbook formula.
double p2222(double ax, double by, double exy, int a, int b) {
    double sa = a ? -1 : 1, sb = b ? -1 : 1;
    return (1 + sa * ax + sb * by + sa * sb * exy) / 4;
}
}  // namespace

TEST_CASE("scenario construction and sizes") {
    CHECK(scenario_2222().dim() == 16);
    CHECK(Scenario({2, 2, 2}).dim() == 64);
    CHECK(Scenario({3, 3}).dim() == 36);
    CHECK(Scenario({2, 2, 1}).dim() == 32);
    CHECK_THROWS_AS(Scenario({2, 2, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Scenario({4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Scenario({2, 2}, {2, 3}), std::invalid_argument);
    CHECK(scenario_2222().name() == "2222");
}

TEST_CASE("corr_to_prob examples") {
    auto u = corr_to_prob(CorrelatorTable(scenario_2222()));
    for (int i = 0; i < 16; ++i) CHECK(u.p[i] == 0.25);

    double r = 1 / std::sqrt(2.0);
    auto pc = behaviour_2222(0, 0, 0, 0, r, r, r, -r);
    CHECK(std::abs(pc(0, 0) - (1 + r) / 4) < 1e-15);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double e = (x && y) ? -r : r;
                    CHECK(std::abs(pc(x * 2 + y, a * 2 + b) - p2222(0, 0, e, a, b)) < 1e-15);
                }
}

TEST_CASE("Hardy point has exact zeros in Q(sqrt5)") {
    using Q5 = Quad<5>;
    Q5 s5 = Q5::root();
    Scenario s = scenario_2222();
    CorrelatorTableT<Q5> t(s);
    // [1, B0, B1; A0, A0B0, A0B1; A1, A1B0, A1B1]
    Q5 m0 = Q5(5) - Q5(2) * s5, m1 = s5 - Q5(2);
    t.c << Q5(1), m0, m1, m0, Q5(6) * s5 - Q5(13), Q5(3) * s5 - Q5(6), m1, Q5(3) * s5 - Q5(6), Q5(2) * s5 - Q5(5);
    auto p = corr_to_prob(t);
    CHECK(p(3, 3).sign() == 0);  // P(11|11)
    CHECK(p(1, 2).sign() == 0);  // P(10|01)
    CHECK(p(2, 1).sign() == 0);  // P(01|10)
    for (int i = 0; i < 16; ++i) CHECK(p.p[i].sign() >= 0);
}

TEST_CASE("prob_to_corr examples") {
    auto c0 = prob_to_corr(uniform(scenario_2222()));
    for (int i = 1; i < 9; ++i) CHECK(std::abs(c0.c[i]) < 1e-15);

    auto det = enumerate_deterministic(scenario_2222());
    auto c1 = prob_to_corr(det[0]);  // all outputs 0
    for (int i = 0; i < 9; ++i) CHECK(c1.c[i] == 1.0);

    // PR box: outputs satisfy a xor b = x y
    Behaviour pr(scenario_2222(), Vec<double>::Zero(16));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) pr(x * 2 + y, a * 2 + b) = 0.5;
    auto cp = prob_to_corr(pr);
    CHECK(cp[{2, 2}] == -1.0);
    CHECK(cp[{1, 1}] == 1.0);
    CHECK(cp[{1, 0}] == 0.0);
    CHECK(check_no_signalling(pr).ok);
}

TEST_CASE("check_no_signalling flags a signalling table") {
    Behaviour p = uniform(scenario_2222());
    // P(a=0|x=0) = 1 when y = 0, 0 when y = 1
    p(0, 0) = 0.5; p(0, 1) = 0.5; p(0, 2) = 0; p(0, 3) = 0;
    p(1, 0) = 0; p(1, 1) = 0; p(1, 2) = 0.5; p(1, 3) = 0.5;
    auto r = check_no_signalling(p);
    CHECK_FALSE(r.ok);
    CHECK(r.max_violation == doctest::Approx(1.0));
    CHECK_THROWS_AS(prob_to_corr(p), SignallingError);
}

TEST_CASE("enumerate_deterministic counts and validity") {
    for (auto [s, n] : std::vector<std::pair<Scenario, int>>{
             {scenario_2222(), 16}, {Scenario({2, 2, 2}), 64}, {Scenario({3, 3}), 64}}) {
        auto pts = enumerate_deterministic(s);
        CHECK(int(pts.size()) == n);
        for (size_t i = 0; i < pts.size(); ++i) {
            auto r = check_no_signalling(pts[i]);
            CHECK(r.max_violation == 0.0);
            for (size_t j = 0; j < i; ++j) CHECK(max_abs_diff(pts[i], pts[j]) > 0.5);
        }
    }
}

TEST_CASE("affine span of local points in 2222 has dimension 8") {
    CHECK(affine_dimension(enumerate_deterministic(scenario_2222())) == 8);
}

TEST_CASE("bell_value examples and linearity") {
    auto chsh = functional_2222({0, 0, 0, 0, 1, 1, 0, 1, -1});
    double r = 1 / std::sqrt(2.0);
    CHECK(bell_value(chsh, behaviour_2222(0, 0, 0, 0, r, r, r, -r)) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(bell_value(chsh, behaviour_2222(0, 0, 0, 0, 1, 1, 1, -1)) == doctest::Approx(4.0).epsilon(1e-14));
    double s5 = std::sqrt(5.0);
    auto hardy = behaviour_2222(5 - 2 * s5, s5 - 2, 5 - 2 * s5, s5 - 2, 6 * s5 - 13, 3 * s5 - 6, 3 * s5 - 6, 2 * s5 - 5);
    CHECK(std::abs(bell_value(chsh, hardy) - (10 * s5 - 20)) < 1e-12);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    auto det = enumerate_deterministic(scenario_2222());
    for (int t = 0; t < 100; ++t) {
        Vec<double> g(16);
        for (int i = 0; i < 16; ++i) g[i] = U(rng);
        BellFunctional f(scenario_2222(), g);
        auto p1 = det[rng() % 16], p2 = det[rng() % 16];
        double lam = (U(rng) + 1) / 2;
        double lhs = bell_value(f, mix(p2, p1, lam));
        double rhs = lam * bell_value(f, p1) + (1 - lam) * bell_value(f, p2);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("correlator roundtrips") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (auto s : {scenario_2222(), Scenario({2, 2, 2}), Scenario({3, 3})}) {
        auto det = enumerate_deterministic(s);
        for (int t = 0; t < 30; ++t) {
            // random local point: valid NS table
            Vec<double> w = Vec<double>::Zero(det.size());
            for (int i = 0; i < w.size(); ++i) w[i] = U(rng) + 1;
            w /= w.sum();
            Behaviour p(s, Vec<double>::Zero(s.dim()));
            for (size_t i = 0; i < det.size(); ++i) p.p += w[i] * det[i].p;
            auto back = corr_to_prob(prob_to_corr(p));
            CHECK(max_abs_diff(back, p) < 1e-12);
            // functional correlator view roundtrip
            Vec<double> g(s.dim());
            for (int i = 0; i < g.size(); ++i) g[i] = U(rng);
            BellFunctional f(s, g);
            auto f2 = from_correlators(s, correlator_coefficients(f));
            CHECK(std::abs(bell_value(f, p) - bell_value(f2, p)) < 1e-12);
            // correlator-basis evaluation agrees with probability-basis evaluation
            auto wc = correlator_coefficients(f);
            CHECK(std::abs(wc.dot(prob_to_corr(p).c) - bell_value(f, p)) < 1e-12);
        }
    }
}

TEST_CASE("relabelings") {
    auto det = enumerate_deterministic(scenario_2222());
    auto q = flip_output(flip_output(flip_output(flip_output(det[0], 0, 0), 0, 1), 1, 0), 1, 1);
    auto c = prob_to_corr(q);
    CHECK(c[{1, 0}] == -1.0);
    CHECK(c[{1, 1}] == 1.0);
    auto sw = swap_parties(behaviour_2222(0.1, 0.2, 0.3, 0.4, 0, 0, 0, 0), 0, 1);
    auto cs = prob_to_corr(sw);
    CHECK(cs[{1, 0}] == doctest::Approx(0.3));
    CHECK(cs[{0, 2}] == doctest::Approx(0.2));
}
