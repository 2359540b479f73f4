#include "doctest.h"

#include <cmath>
#include <random>

#include "bellgeom/faces.hpp"
#include "bellgeom/quantum.hpp"
#include "bellgeom/zoo.hpp"

using namespace bellgeom;

namespace {

void check_report(const FaceReport& r) {
    CHECK(r.beta_L <= r.beta_Q_lower + 1e-9);
    CHECK(r.beta_Q_lower <= r.beta_Q_upper + 1e-6);
    CHECK(r.beta_Q_upper <= r.beta_NS + 1e-6);
    // strict-containment claims carry certificates checkable by bell_value and local_membership
    for (auto& e : r.evidence) {
        if (e.kind == "nonlocal-quantum-maximizer") {
            REQUIRE(e.point);
            CHECK(bell_value(r.functional, *e.point) >= r.beta_Q_upper - 1e-6);
            CHECK_FALSE(local_membership(*e.point).inside);
        }
        if (e.kind == "nonlocal-ns-vertex") {
            REQUIRE(e.point);
            CHECK(std::abs(bell_value(r.functional, *e.point) - r.beta_NS) < 1e-9);
            CHECK_FALSE(local_membership(*e.point).inside);
        }
    }
}

bool has_evidence(const FaceReport& r, const std::string& kind) {
    for (auto& e : r.evidence)
        if (e.kind == kind) return true;
    return false;
}

// P(ab|xy) >= 0 as a functional bounded by 1: 1 - 4 P(ab|xy)
BellFunctional positivity(int a, int b, int x, int y) {
    Scenario s = scenario_2222();
    Vec<double> g = Vec<double>::Constant(s.dim(), 0.25);
    g[s.index(x * 2 + y, a * 2 + b)] -= 1;
    return {s, g};
}

}  // namespace

TEST_CASE("classification of the named examples") {
    auto b1 = classify(zoo_functional("B1"));
    CHECK(b1.label == FaceClass::c1);
    check_report(b1);

    auto b2 = classify(zoo_functional("B2"));
    CHECK(b2.label == FaceClass::c2a);
    CHECK(has_evidence(b2, "nonlocal-quantum-maximizer"));
    check_report(b2);

    auto b5 = classify(zoo_functional("B5"));
    CHECK(b5.label == FaceClass::c4b);
    check_report(b5);

    auto b3 = classify(b3_functional(0.5, 0.9));
    CHECK(b3.label == FaceClass::c2b);
    check_report(b3);

    auto hf = classify(hardy_family_functional(1, 1, 1));
    CHECK(hf.label == FaceClass::c4a);
    check_report(hf);

    auto det = classify(exposing_functional(zoo_behaviour("Pdet1")));
    CHECK(det.label == FaceClass::c4d);
    check_report(det);
}

TEST_CASE("Mermin classifies as 3a") {
    auto r = classify(zoo_functional("Mermin"));
    CHECK(r.label == FaceClass::c3a);
    CHECK(r.beta_L == doctest::Approx(2));
    CHECK(std::abs(r.beta_Q_upper - 4) < 1e-6);
    CHECK(std::abs(r.beta_NS - 4) < 1e-9);
    CHECK(has_evidence(r, "nonlocal-ns-vertex"));
    check_report(r);
}

TEST_CASE("B_4d face is the segment between Pdet1 and Pdet2") {
    auto f = zoo_functional("B_4d");
    auto r = classify(f);
    CHECK(r.label == FaceClass::c4d);
    auto nf = ns_bound(f);
    REQUIRE(nf.vertices.size() == 2);
    CHECK(nf.dim == 1);
    for (auto& v : nf.vertices)
        CHECK((max_abs_diff(v, zoo_behaviour("Pdet1")) < 1e-12 || max_abs_diff(v, zoo_behaviour("Pdet2")) < 1e-12));
}

TEST_CASE("exposing functionals single out their deterministic point") {
    auto dets = enumerate_deterministic(scenario_2222());
    for (auto& d : dets) {
        auto f = exposing_functional(d);
        for (int i = 0; i < 16; ++i) CHECK(f.g[i] == d.p[i]);
        double best = bell_value(f, d);
        for (auto& v : ns_vertices_2222())
            if (max_abs_diff(v, d) > 1e-12) CHECK(bell_value(f, v) < best - 1e-9);
        auto r = classify(f, {.restarts = 8});
        CHECK(r.label == FaceClass::c4d);
        CHECK(r.dim_NS == 0);
    }
    CHECK_THROWS(exposing_functional(zoo_behaviour("P0")));
}

TEST_CASE("no 3a face in 2222") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> bit(0, 1), det(0, 15);
    auto dets = enumerate_deterministic(scenario_2222());
    int hits = 0;
    for (int t = 0; t < 200; ++t) {
        Vec<double> g = Vec<double>::Zero(16);
        int terms = 1 + t % 4;
        for (int k = 0; k < terms; ++k)
            g += u(rng) * positivity(bit(rng), bit(rng), bit(rng), bit(rng)).g;
        if (t % 2) g += u(rng) * exposing_functional(dets[det(rng)]).g;
        BellFunctional f(scenario_2222(), g);
        double up = npa_upper_bound(f, NpaLevel::two).optimum;
        double ns = ns_bound(f).value, lo = local_bound(f).value;
        if (std::abs(up - ns) <= 1e-6) {
            ++hits;
            CHECK(std::abs(lo - ns) <= 1e-6);
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("tangents at a maximizer are orthogonal to its functional") {
    Scenario s = scenario_2222();
    auto check_tangents = [&](const QubitRealization& r, const BellFunctional& f) {
        auto w = correlator_coefficients(f);
        auto ts = realization_tangents(r, s);
        CHECK(ts.size() >= 8);
        for (auto& t : ts) CHECK(std::abs(w.dot(t)) < 1e-9);
    };
    check_tangents(chsh_realization(), zoo_functional("B1"));
    check_tangents(hardy_realization(), zoo_functional("B_pos"));
    check_tangents(hardy_realization(), hardy_family_functional(1, 2, 3));

    // a non-maximizer has a tangent moving the value
    auto ts = realization_tangents(random_realization(s, 3), s);
    auto w = correlator_coefficients(zoo_functional("B1"));
    double worst = 0;
    for (auto& t : ts) worst = std::max(worst, std::abs(w.dot(t)));
    CHECK(worst > 1e-3);
}

TEST_CASE("tangent-constrained Bell search") {
    Scenario s = scenario_2222();
    auto pc = zoo_behaviour("pCHSH"), d1 = zoo_behaviour("Pdet1"), d2 = zoo_behaviour("Pdet2");

    auto f = tangent_bell_search({pc, d1}, realization_tangents(chsh_realization(), s));
    REQUIRE(f);
    CHECK(std::abs(bell_value(*f, pc) - 1) < 1e-9);
    CHECK(std::abs(bell_value(*f, d1) - 1) < 1e-9);
    CHECK(local_bound(*f).value <= 1 + 1e-9);
    CHECK(std::abs(seesaw_lower_bound(*f).value - 1) < 1e-6);

    auto g = tangent_bell_search({d1, d2}, {});
    REQUIRE(g);
    CHECK(classify(*g).label == FaceClass::c4d);

    auto h = tangent_bell_search({zoo_behaviour("hardy")}, realization_tangents(hardy_realization(), s));
    REQUIRE(h);
    CHECK(std::abs(local_bound(*h).value - 1) < 1e-9);
    CHECK(std::abs(seesaw_lower_bound(*h).value - 1) < 1e-6);

    // PR2 = -PR in correlators, so no functional without constant takes value 1 on both
    CHECK_FALSE(tangent_bell_search({zoo_behaviour("PR"), zoo_behaviour("PR2")}, {}).has_value());
}

TEST_CASE("Hardy exposure LP") {
    using Q5 = Quad<5>;
    auto c = hardy_exposure_lp();
    CHECK(c.lp_value == Q5(1));
    CHECK(c.dual_value == Q5(1));
    CHECK(c.reference_dual_feasible);
    CHECK(c.solver_dual_feasible);
    std::vector<Q5> bpos{Q5(0), Q5(1), Q5(0), Q5(1), Q5(0), Q5(0), Q5(0), Q5(-1)};
    CHECK(c.functional == bpos);
    // the same functional in the zoo: coefficients (A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1)
    auto zw = correlator_coefficients(zoo_functional("B_pos"));
    const int idx[8] = {3, 6, 1, 2, 4, 5, 7, 8};
    for (int i = 0; i < 8; ++i) CHECK(std::abs(zw[idx[i]] - bpos[i].to_double()) < 1e-12);
    CHECK_FALSE(c.conclusion.empty());

    auto h = realization_to_behaviour(hardy_realization(), scenario_2222());
    CHECK(max_abs_diff(h, zoo_behaviour("hardy")) < 1e-12);
}

TEST_CASE("flat region certificates") {
    Scenario s = scenario_2222();
    auto b2 = zoo_functional("B2");
    auto r2 = flat_region_certificate(b2, {{zoo_behaviour("pCHSH"), chsh_realization(), false, "pCHSH"},
                                           {zoo_behaviour("Pdet1"), std::nullopt, false, "Pdet1"}});
    CHECK(r2.verified == std::vector<bool>{true, true});
    CHECK(r2.dim_Q_lower == 1);
    CHECK(r2.relaxation_tight);

    // B3 at the boundary: the relaxation is loose, the analytic value 2c + 1 is the target
    double c = b3_cmax(0.5);
    auto b3 = b3_functional(0.5, c);
    std::vector<QuantumCandidate> cand;
    for (auto& v : local_bound(b3).vertices) cand.push_back({v, std::nullopt, false, "det"});
    auto m = b3_nonlocal_maximizer(0.5);
    cand.push_back({m.behaviour, m.realization, false, "nonlocal"});
    auto r3 = flat_region_certificate(b3, cand, std::nullopt, 2 * c + 1);
    for (bool v : r3.verified) CHECK(v);
    CHECK(r3.dim_Q_lower >= 3);

    auto hf = hardy_family_functional(1, 1, 1);
    std::vector<QuantumCandidate> hc{{zoo_behaviour("Pdet1"), std::nullopt, false, "Pdet1"},
                                     {zoo_behaviour("hardy"), hardy_realization(), false, "hardy"}};
    for (auto n : {"Pdet5", "Pdet6", "Pdet7", "Pdet8"}) hc.push_back({zoo_behaviour(n), std::nullopt, false, n});
    auto rh = flat_region_certificate(hf, hc);
    for (bool v : rh.verified) CHECK(v);
    CHECK(rh.dim_Q_lower == 5);

    // a candidate below the bound is rejected
    auto bad = flat_region_certificate(b2, {{zoo_behaviour("P0"), std::nullopt, false, "P0"}});
    CHECK_FALSE(bad.verified[0]);
}

TEST_CASE("Hardy family functionals") {
    auto pos = hardy_family_functional(0, 0, 1);
    CHECK((pos.g - zoo_functional("B_pos").g).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(local_bound(pos).value == doctest::Approx(1));
    CHECK(ns_bound(pos).value == doctest::Approx(1));
    CHECK((hardy_family_functional(1, 1, 1).g - zoo_functional("B_hardyfam").g).cwiseAbs().maxCoeff() < 1e-12);

    // value = a1 + a2 + a3 - 4 (a1 P(10|01) + a2 P(01|10) + a3 P(11|11)) on every behaviour
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    auto& verts = ns_vertices_2222();
    for (int t = 0; t < 50; ++t) {
        double a1 = u(rng), a2 = u(rng), a3 = u(rng);
        auto f = hardy_family_functional(a1, a2, a3);
        Behaviour p = mix(verts[t % 24], verts[(7 * t + 3) % 24], u(rng));
        double expect = a1 + a2 + a3 - 4 * (a1 * p(1, 2) + a2 * p(2, 1) + a3 * p(3, 3));
        CHECK(std::abs(bell_value(f, p) - expect) < 1e-12);
    }
    auto f = hardy_family_functional(1, 1, 1);
    for (auto n : {"Pdet1", "Pdet5", "Pdet6", "Pdet7", "Pdet8", "PR", "hardy"})
        CHECK(std::abs(bell_value(f, zoo_behaviour(n)) - 3) < 1e-12);
    auto single = ns_bound(hardy_family_functional(1, 0, 0));
    CHECK(single.value == doctest::Approx(1));
    CHECK_THROWS(hardy_family_functional(-1, 0, 0));
}
