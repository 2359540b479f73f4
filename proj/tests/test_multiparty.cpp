#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "bellgeom/multiparty.hpp"
#include "bellgeom/polytope.hpp"

using namespace bellgeom;

namespace {

const double r2 = std::sqrt(2.0);
using cd = std::complex<double>;

Eigen::Matrix2cd obs_xy(double th) {
    Eigen::Matrix2cd m;
    m << 0, std::polar(1.0, -th), std::polar(1.0, th), 0;
    return m;
}

// Werner-Wolf operator from Pauli products: A0B0C0 + A0B1C1 + A1B0C0 - A1B1C1.
Eigen::MatrixXcd ww_operator(double b, double c) {
    Eigen::Matrix2cd A[2] = {obs_xy(0), obs_xy(M_PI / 2)};
    Eigen::Matrix2cd B[2] = {obs_xy(b), obs_xy(-b)};
    Eigen::Matrix2cd C[2] = {obs_xy(c), obs_xy(-c)};
    auto kron = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
        Eigen::MatrixXcd k(x.rows() * y.rows(), x.cols() * y.cols());
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        return k;
    };
    auto k3 = [&](const Eigen::Matrix2cd& x, const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& z) {
        return kron(kron(x, y), z);
    };
    return k3(A[0], B[0], C[0]) + k3(A[0], B[1], C[1]) + k3(A[1], B[0], C[0]) - k3(A[1], B[1], C[1]);
}

double corr(const Behaviour& p, std::vector<int> k) { return prob_to_corr(p)[k]; }

bool low_body_zero(const Behaviour& p, double tol) {
    auto t = prob_to_corr(p);
    for (int ki = 1; ki < t.scenario.corr_dim(); ++ki) {
        auto k = t.scenario.decode_corr(ki);
        if ((k[0] && k[1] && k[2]) == false && std::abs(t.c[ki]) > tol) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("modulated CHSH bounds and endpoints") {
    auto m = modulated_chsh();
    CHECK(m.bounds.L == doctest::Approx(2).epsilon(1e-9));
    CHECK(std::abs(m.bounds.Q - 2 * r2) < 1e-6);
    CHECK(m.bounds.NS == doctest::Approx(4).epsilon(1e-9));
    for (int e = 0; e < 2; ++e) {
        const Behaviour& p = e ? m.endpoint2 : m.endpoint1;
        double s = e ? -1 : 1;
        CHECK(is_valid(p));
        CHECK(corr(p, {0, 0, 1}) == s);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                double v = ((x & y) ? -1 : 1) / r2;
                CHECK(std::abs(corr(p, {x + 1, y + 1, 1}) - v) < 1e-15);
                CHECK(std::abs(corr(p, {x + 1, y + 1, 0}) - s * v) < 1e-15);
                CHECK(corr(p, {x + 1, 0, 1}) == 0);
            }
        CHECK(std::abs(bell_value(m.functional, p) - 2 * r2) < 1e-12);
    }
}

TEST_CASE("modulated CHSH face is the segment between the endpoints") {
    auto m = modulated_chsh();
    for (double t : {0.0, 0.3, M_PI / 4, 1.2, M_PI / 2}) {
        auto p = realization_to_behaviour(modulated_realization(t), Scenario({2, 2, 1}));
        CHECK(std::abs(bell_value(m.functional, p) - 2 * r2) < 1e-12);
        auto fit = segment_decompose(p, m.endpoint1, m.endpoint2);
        CHECK(fit.residual < 1e-9);
        CHECK(std::abs(fit.t - std::sin(t) * std::sin(t)) < 1e-12);
    }
    auto mid = realization_to_behaviour(modulated_realization(M_PI / 4), Scenario({2, 2, 1}));
    CHECK(max_abs_diff(mid, mix(m.endpoint1, m.endpoint2, 0.5)) < 1e-12);
    // a local point is not on the line
    auto off = segment_decompose(uniform(Scenario({2, 2, 1})), m.endpoint1, m.endpoint2);
    CHECK(off.residual > 0.05);
}

TEST_CASE("GHZ eigenpairs of the Werner-Wolf operator") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, M_PI / 2);
    for (int it = 0; it < 100; ++it) {
        double b = u(rng), c = u(rng);
        auto W = ww_operator(b, c);
        auto pairs = ww_eigenvalues(b, c);
        REQUIRE(pairs.size() == 8);
        for (auto& e : pairs) {
            CHECK(e.residual < 1e-12);
            CHECK(std::abs(e.lambda - e.closed_form) < 1e-12);
            CHECK((W * e.vector - e.closed_form * e.vector).norm() < 1e-12);
        }
    }
}

TEST_CASE("Werner-Wolf eigenvalue examples") {
    double q = 3 * M_PI / 8;
    for (auto& e : ww_eigenvalues(q, q))
        if (e.k == -1) {
            CHECK(std::abs(e.lambda - 2 * r2) < 1e-12);
            CHECK(std::abs(e.vector[0] - cd(1 / r2)) < 1e-15);
            CHECK(std::abs(e.vector[7] - cd(-1 / r2)) < 1e-15);
        }
    for (auto& e : ww_eigenvalues(0, 0)) CHECK(std::abs(std::abs(e.lambda) - 2) < 1e-12);
    int top = 0;
    for (auto& e : ww_eigenvalues(M_PI / 4, 0)) top += std::abs(e.lambda - 2 * r2) < 1e-12;
    CHECK(top == 2);
}

TEST_CASE("Werner-Wolf face points") {
    auto f = zoo_functional("B8_ww");
    auto face = ww_face(64);
    REQUIRE(face.points.size() == 8);
    for (auto& p : face.points) {
        CHECK(check_no_signalling(p).ok);
        CHECK(is_valid(p));
        CHECK(std::abs(bell_value(f, p) - 2 * r2) < 1e-12);
    }
    auto& p1 = face.points[0];
    auto& p3 = face.points[2];
    auto& p4 = face.points[3];
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double v = ((x & y) ? -1 : 1) / r2;
            CHECK(std::abs(corr(p1, {x + 1, y + 1, 0}) - v) < 1e-15);
            CHECK(std::abs(corr(face.points[1], {x + 1, y + 1, 0}) + v) < 1e-15);
            double w = (((x + 1) * y) & 1 ? -1 : 1) / r2;
            CHECK(std::abs(corr(p3, {x + 1, y + 1, 0}) - w) < 1e-15);
            CHECK(std::abs(corr(p4, {x + 1, y + 1, 0}) + w) < 1e-15);
            for (int z = 0; z < 2; ++z) {
                CHECK(std::abs(corr(p1, {x + 1, y + 1, z + 1}) - v) < 1e-15);
                CHECK(corr(p1, {x + 1, 0, z + 1}) == 0);
                double t = (((x + 1) * y + z) & 1 ? -1 : 1) / r2;
                CHECK(std::abs(corr(p3, {x + 1, y + 1, z + 1}) - t) < 1e-15);
                CHECK(std::abs(corr(p4, {x + 1, y + 1, z + 1}) - t) < 1e-15);
            }
        }
    CHECK(corr(p1, {0, 0, 1}) == 1);
    CHECK(corr(p1, {0, 0, 2}) == 1);
    CHECK(corr(p3, {0, 0, 1}) == 1);
    CHECK(corr(p3, {0, 0, 2}) == -1);
    CHECK(corr(p4, {0, 0, 1}) == -1);
    CHECK(corr(face.points[1], {0, 0, 2}) == -1);
    for (int j = 0; j < 4; ++j) {
        CHECK(max_abs_diff(swap_parties(face.points[j + 4], 1, 2), face.points[j]) < 1e-15);
        CHECK(corr(face.points[j + 4], {0, 0, 1}) == 0);
    }
}

TEST_CASE("Werner-Wolf family") {
    auto f = zoo_functional("B8_ww");
    auto face = ww_face(64);
    REQUIRE(face.family.size() == 64);
    for (size_t i = 0; i < face.family.size(); ++i) {
        auto& p = face.family[i];
        double a = face.alphas[i];
        CHECK(is_valid(p, 1e-12));
        CHECK(low_body_zero(p, 1e-12));
        CHECK(std::abs(bell_value(f, p) - 2 * r2) < 1e-12);
        CHECK(std::abs(corr(p, {1, 1, 1}) - 1 / r2) < 1e-12);
        CHECK(std::abs(corr(p, {1, 2, 2}) - 1 / r2) < 1e-12);
        CHECK(std::abs(corr(p, {1, 1, 2}) - std::cos(a)) < 1e-12);
        CHECK(std::abs(corr(p, {1, 2, 1}) - std::cos(a)) < 1e-12);
        CHECK(std::abs(corr(p, {2, 1, 1}) - 1 / r2) < 1e-12);
        CHECK(std::abs(corr(p, {2, 2, 2}) + 1 / r2) < 1e-12);
        CHECK(std::abs(corr(p, {2, 1, 2}) - std::sin(a)) < 1e-12);
        CHECK(std::abs(corr(p, {2, 2, 1}) + std::sin(a)) < 1e-12);
        CHECK(std::abs(ww_alpha_of(p) - a) < 1e-9);
        // midpoints stay on the face and inside NS
        auto mid = mix(p, face.points[i % 8], 0.5);
        CHECK(is_valid(mid, 1e-12));
        CHECK(std::abs(bell_value(f, mid) - 2 * r2) < 1e-12);
    }
    auto pi = ww_family(M_PI);
    CHECK(std::abs(corr(pi, {1, 1, 2}) + 1) < 1e-15);
    CHECK(std::abs(corr(pi, {2, 1, 2})) < 1e-15);
    CHECK_THROWS(ww_face(0));
}

TEST_CASE("branch eigenvectors realize the family") {
    GhzFaceParams p{M_PI / 2, M_PI / 4, GhzBranch::sum_3pi4};
    REQUIRE(p.on_branch());
    CHECK(max_abs_diff(ww_branch_behaviour(p), ww_family(3 * M_PI / 4)) < 1e-10);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(M_PI / 4, M_PI / 2);
    for (int it = 0; it < 32; ++it) {
        double b = u(rng);
        GhzFaceParams q{b, 3 * M_PI / 4 - b, GhzBranch::sum_3pi4};
        auto beh = ww_branch_behaviour(q);
        CHECK(max_abs_diff(beh, ww_family(M_PI - (q.b - q.c))) < 1e-10);
    }
    GhzFaceParams off{0.3, 0.3, GhzBranch::sum_3pi4};
    CHECK_FALSE(off.on_branch());
    CHECK_THROWS_AS(ww_branch_behaviour(off), std::invalid_argument);
    CHECK(GhzFaceParams{M_PI / 4, 0, GhzBranch::diff_pi4}.on_branch());
    CHECK(GhzFaceParams{M_PI / 4, 0, GhzBranch::sum_pi4}.on_branch());
}

TEST_CASE("Mermin witnesses class 3a") {
    auto r = mermin_witness();
    CHECK(std::abs(r.beta_L - 2) < 1e-6);
    CHECK(std::abs(r.beta_Q_upper - 4) < 1e-6);
    CHECK(std::abs(r.beta_Q_lower - 4) < 1e-6);
    CHECK(std::abs(r.beta_NS - 4) < 1e-6);
    CHECK(r.label == FaceClass::c3a);
}
