#include "bellgeom/multiparty.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "bellgeom/npa.hpp"
#include "bellgeom/polytope.hpp"

namespace bellgeom {

namespace {

const double kR2 = 1 / std::sqrt(2.0);

Scenario s221() { return Scenario({2, 2, 1}); }
Scenario s222() { return Scenario({2, 2, 2}); }

// Party bits of k as observable indices, -1 when absent.
int obs(const std::vector<int>& k, int i) { return k[i] - 1; }

// Builds a behaviour from a rule on correlator indices.
template <class F>
Behaviour from_rule(const Scenario& s, F rule) {
    CorrelatorTable t(s);
    for (int ki = 1; ki < s.corr_dim(); ++ki) t.c[ki] = rule(s.decode_corr(ki));
    return corr_to_prob(t);
}

}  // namespace

ModulatedChsh modulated_chsh() {
    ModulatedChsh m;
    m.functional = zoo_functional("B7_mod");
    m.bounds.L = local_bound(m.functional).value;
    m.bounds.NS = ns_bound(m.functional).value;
    m.bounds.Q = npa_upper_bound(m.functional, default_level(m.functional)).optimum;
    for (int sgn : {1, -1}) {
        auto p = from_rule(s221(), [&](const std::vector<int>& k) {
            int x = obs(k, 0), y = obs(k, 1), z = obs(k, 2);
            double e = ((x & y) ? -1.0 : 1.0) * kR2;
            if (x >= 0 && y >= 0) return z >= 0 ? e : sgn * e;
            if (x < 0 && y < 0 && z >= 0) return double(sgn);
            return 0.0;
        });
        (sgn > 0 ? m.endpoint1 : m.endpoint2) = p;
    }
    return m;
}

QubitRealization modulated_realization(double t) {
    QubitRealization r;
    const Eigen::Vector3d x(1, 0, 0), z(0, 0, 1);
    r.bloch = {{x, z}, {(x + z) * kR2, (x - z) * kR2}, {z}};
    // |Phi+>|0> and |Psi->|1>, qubit order A B C
    r.state = Eigen::VectorXcd::Zero(8);
    r.state[0b000] += std::cos(t) * kR2;
    r.state[0b110] += std::cos(t) * kR2;
    r.state[0b011] += std::sin(t) * kR2;
    r.state[0b101] -= std::sin(t) * kR2;
    return r;
}

SegmentFit segment_decompose(const Behaviour& p, const Behaviour& e1, const Behaviour& e2) {
    if (p.scenario != e1.scenario || p.scenario != e2.scenario) throw ScenarioMismatch();
    Vec<double> d = e2.p - e1.p;
    SegmentFit f;
    f.t = d.dot(p.p - e1.p) / d.squaredNorm();
    f.residual = (e1.p + f.t * d - p.p).cwiseAbs().maxCoeff();
    return f;
}

bool GhzFaceParams::on_branch(double tol) const {
    if (b < -tol || c < -tol || b > M_PI / 2 + tol || c > M_PI / 2 + tol) return false;
    switch (branch) {
        case GhzBranch::sum_3pi4: return std::abs(b + c - 3 * M_PI / 4) <= tol;
        case GhzBranch::diff_minus_pi4: return std::abs(b - c + M_PI / 4) <= tol;
        case GhzBranch::diff_pi4: return std::abs(b - c - M_PI / 4) <= tol;
        case GhzBranch::sum_pi4: return std::abs(b + c - M_PI / 4) <= tol;
    }
    return false;
}

QubitRealization ww_realization(double a, double b, double c, const Eigen::VectorXcd& state) {
    QubitRealization r;
    auto v = [](double th) { return Eigen::Vector3d(std::cos(th), std::sin(th), 0); };
    r.bloch = {{v(0), v(a)}, {v(b), v(-b)}, {v(c), v(-c)}};
    r.state = state;
    return r;
}

std::vector<GhzEigenpair> ww_eigenvalues(double b, double c) {
    const Scenario s = s222();
    Eigen::VectorXd w = correlator_coefficients(zoo_functional("B8_ww"));
    Eigen::MatrixXcd W = bell_operator(s, w, ww_realization(M_PI / 2, b, c, Eigen::VectorXcd::Zero(8)));
    const double k2 = 2 * std::sqrt(2.0), q = M_PI / 4;
    // eigenvalue of Omega_{+k}; Omega_{-k} has the opposite sign
    const double plus[4] = {-k2 * std::sin(b + c - q), -k2 * std::sin(b - c - q), k2 * std::sin(b - c + q),
                            k2 * std::sin(b + c + q)};
    std::vector<GhzEigenpair> out;
    for (int j = 0; j < 4; ++j)
        for (int sgn : {1, -1}) {
            GhzEigenpair e;
            e.k = sgn * (j + 1);
            e.vector = Eigen::VectorXcd::Zero(8);
            e.vector[j] = kR2;
            e.vector[7 - j] = sgn * kR2;
            e.lambda = (e.vector.adjoint() * W * e.vector)(0, 0).real();
            e.closed_form = sgn * plus[j];
            e.residual = (W * e.vector - e.lambda * e.vector).norm();
            out.push_back(e);
        }
    return out;
}

Behaviour ww_family(double alpha) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    return from_rule(s222(), [&](const std::vector<int>& k) {
        int x = obs(k, 0), y = obs(k, 1), z = obs(k, 2);
        if (x < 0 || y < 0 || z < 0) return 0.0;
        if (y == z) return (x == 1 && y == 1) ? -kR2 : kR2;
        if (x == 0) return ca;
        return y == 0 ? sa : -sa;
    });
}

std::vector<Behaviour> ww_points() {
    const Scenario s = s222();
    std::vector<Behaviour> pts;
    // P1, P2: Charlie outputs +-1 for both inputs
    for (int sgn : {1, -1})
        pts.push_back(from_rule(s, [&](const std::vector<int>& k) {
            int x = obs(k, 0), y = obs(k, 1), z = obs(k, 2);
            double e = ((x & y) ? -1.0 : 1.0) * kR2;
            if (x >= 0 && y >= 0) return z >= 0 ? e : sgn * e;
            if (x < 0 && y < 0 && z >= 0) return double(sgn);
            return 0.0;
        }));
    // P3, P4: <C0> = -<C1> = +-1
    for (int sgn : {1, -1})
        pts.push_back(from_rule(s, [&](const std::vector<int>& k) {
            int x = obs(k, 0), y = obs(k, 1), z = obs(k, 2);
            if (x >= 0 && y >= 0) {
                int par = ((x + 1) * y) & 1;
                if (z < 0) return (par ^ (sgn < 0) ? -1.0 : 1.0) * kR2;
                return ((par + z) & 1 ? -1.0 : 1.0) * kR2;
            }
            if (x < 0 && y < 0 && z >= 0) return z == 0 ? double(sgn) : double(-sgn);
            return 0.0;
        }));
    for (int j = 0; j < 4; ++j) pts.push_back(swap_parties(pts[j], 1, 2));
    return pts;
}

WwFace ww_face(int sample_count) {
    if (sample_count < 1) throw std::invalid_argument("ww_face: sample_count must be positive");
    WwFace f;
    f.points = ww_points();
    for (int i = 0; i < sample_count; ++i) {
        double a = 2 * M_PI * i / sample_count;
        f.alphas.push_back(a);
        f.family.push_back(ww_family(a));
    }
    return f;
}

Behaviour ww_branch_behaviour(const GhzFaceParams& p) {
    if (!p.on_branch(1e-12)) throw std::invalid_argument("ww_branch_behaviour: (b, c) is not on the branch");
    // the branch fixes which GHZ vector carries 2 sqrt2, also at the degenerate corners
    int k = 0;
    switch (p.branch) {
        case GhzBranch::sum_3pi4: k = -1; break;
        case GhzBranch::diff_minus_pi4: k = 2; break;
        case GhzBranch::diff_pi4: k = 3; break;
        case GhzBranch::sum_pi4: k = 4; break;
    }
    for (auto& e : ww_eigenvalues(p.b, p.c))
        if (e.k == k) return realization_to_behaviour(ww_realization(M_PI / 2, p.b, p.c, e.vector), s222());
    throw std::logic_error("ww_branch_behaviour: missing eigenvector");
}

double ww_alpha_of(const Behaviour& p) {
    auto t = prob_to_corr(p);
    double a = std::atan2(t[{2, 1, 2}], t[{1, 1, 2}]);
    return a < 0 ? a + 2 * M_PI : a;
}

FaceReport mermin_witness() {
    ClassifyOptions opt;
    opt.level = NpaLevel::one;
    return classify(zoo_functional("Mermin"), opt);
}

}  // namespace bellgeom
