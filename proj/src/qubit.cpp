#include "bellgeom/qubit.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace bellgeom {

Eigen::Matrix2cd pauli(int k) {
    Eigen::Matrix2cd m;
    const cplx i(0, 1);
    switch (k) {
        case 0: m << 0, 1, 1, 0; break;
        case 1: m << 0, -i, i, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Eigen::Matrix2cd bloch_operator(const Eigen::Vector3d& a) {
    return a[0] * pauli(0) + a[1] * pauli(1) + a[2] * pauli(2);
}

Eigen::Matrix2cd QubitRealization::observable(int party, int input) const {
    return bloch_operator(bloch[party][input]);
}

bool QubitRealization::valid(double tol) const {
    if (std::abs(state.norm() - 1) > tol) return false;
    if (state.size() != (1 << parties())) return false;
    for (auto& p : bloch)
        for (auto& a : p)
            if (std::abs(a.norm() - 1) > tol) return false;
    return true;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Tensor product of single-qubit operators, party 0 leftmost.
Eigen::MatrixXcd tensor(const std::vector<Eigen::Matrix2cd>& ops) {
    Eigen::MatrixXcd m = ops[0];
    for (size_t i = 1; i < ops.size(); ++i) m = kron(m, ops[i]);
    return m;
}

Eigen::Matrix2cd op_or_id(const QubitRealization& r, int party, int k) {
    return k == 0 ? Eigen::Matrix2cd::Identity() : r.observable(party, k - 1);
}

}  // namespace

Eigen::MatrixXcd bell_operator(const Scenario& s, const Eigen::VectorXd& w, const QubitRealization& r) {
    const int d = 1 << s.parties();
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(d, d);
    for (int ki = 0; ki < s.corr_dim(); ++ki) {
        if (w[ki] == 0) continue;
        auto k = s.decode_corr(ki);
        std::vector<Eigen::Matrix2cd> ops;
        for (int i = 0; i < s.parties(); ++i) ops.push_back(op_or_id(r, i, k[i]));
        W += w[ki] * tensor(ops);
    }
    return W;
}

Behaviour realization_to_behaviour(const QubitRealization& r, const Scenario& s) {
    CorrelatorTable t(s);
    for (int ki = 1; ki < s.corr_dim(); ++ki) {
        auto k = s.decode_corr(ki);
        std::vector<Eigen::Matrix2cd> ops;
        for (int i = 0; i < s.parties(); ++i) ops.push_back(op_or_id(r, i, k[i]));
        t.c[ki] = (r.state.adjoint() * tensor(ops) * r.state)(0, 0).real();
    }
    return corr_to_prob(t);
}

double schmidt_lambda(const Eigen::VectorXcd& psi) {
    Eigen::Matrix2cd m;
    m << psi[0], psi[1], psi[2], psi[3];
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    double s0 = svd.singularValues()[0];
    return s0 * s0;
}

double observable_angle(const QubitRealization& r, int party) {
    double c = r.bloch[party][0].dot(r.bloch[party][1]);
    return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / M_PI;
}

QubitRealization random_realization(const Scenario& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0, 1);
    QubitRealization r;
    r.bloch.resize(s.parties());
    for (int i = 0; i < s.parties(); ++i)
        for (int x = 0; x < s.inputs(i); ++x) {
            Eigen::Vector3d a(N(rng), N(rng), N(rng));
            r.bloch[i].push_back(a.normalized());
        }
    const int d = 1 << s.parties();
    r.state = Eigen::VectorXcd(d);
    for (int i = 0; i < d; ++i) r.state[i] = cplx(N(rng), N(rng));
    r.state.normalize();
    return r;
}

namespace {

double expectation(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& W) {
    return (psi.adjoint() * W * psi)(0, 0).real();
}

void top_eigenvector(const Eigen::MatrixXcd& W, Eigen::VectorXcd& psi, double& val) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W);
    val = es.eigenvalues()(es.eigenvalues().size() - 1);
    psi = es.eigenvectors().col(es.eigenvalues().size() - 1);
}

// Optimal Bloch vectors of one party with the state and the other parties fixed.
void update_party(const Scenario& s, const Eigen::VectorXd& w, QubitRealization& r, int party) {
    for (int x = 0; x < s.inputs(party); ++x) {
        Eigen::Vector3d m = Eigen::Vector3d::Zero();
        for (int ki = 0; ki < s.corr_dim(); ++ki) {
            if (w[ki] == 0) continue;
            auto k = s.decode_corr(ki);
            if (k[party] != x + 1) continue;
            for (int c = 0; c < 3; ++c) {
                std::vector<Eigen::Matrix2cd> ops;
                for (int i = 0; i < s.parties(); ++i) ops.push_back(i == party ? pauli(c) : op_or_id(r, i, k[i]));
                m[c] += w[ki] * expectation(r.state, tensor(ops));
            }
        }
        if (m.norm() > 1e-15) r.bloch[party][x] = m.normalized();
    }
}

}  // namespace

SeesawRun seesaw_run(const Scenario& s, const Eigen::VectorXd& w, QubitRealization r, const SeesawOptions& opt) {
    SeesawRun run;
    double last = -1e300, val = 0;
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        top_eigenvector(bell_operator(s, w, r), r.state, val);
        for (int i = 0; i < s.parties(); ++i) update_party(s, w, r, i);
        val = expectation(r.state, bell_operator(s, w, r));
        run.trace.push_back(val);
        if (std::abs(val - last) < opt.tol) break;
        last = val;
    }
    top_eigenvector(bell_operator(s, w, r), r.state, val);
    run.value = val;
    run.realization = r;
    return run;
}

SeesawResult seesaw_lower_bound(const BellFunctional& f, int restarts, std::uint64_t seed, const SeesawOptions& opt) {
    const Scenario& s = f.scenario;
    auto w = correlator_coefficients(f);
    std::vector<SeesawRun> runs;
    std::mt19937_64 seeder(seed);
    SeesawResult res;
    for (int t = 0; t < restarts; ++t) {
        auto run = seesaw_run(s, w, random_realization(s, seeder()), opt);
        for (size_t i = 1; i < run.trace.size(); ++i)
            if (run.trace[i] < run.trace[i - 1] - 1e-12) res.monotone = false;
        runs.push_back(std::move(run));
    }
    for (auto& run : runs)
        if (run.value > res.value) {
            res.value = run.value;
            res.realization = run.realization;
        }
    res.behaviour = realization_to_behaviour(res.realization, s);
    res.value = bell_value(f, res.behaviour);
    for (auto& run : runs) {
        if (run.value < res.value - opt.optimum_tol) continue;
        Behaviour b = realization_to_behaviour(run.realization, s);
        bool fresh = true;
        for (auto& q : res.all_optima)
            if (max_abs_diff(b, q) <= opt.distinct_tol) fresh = false;
        if (fresh) {
            res.all_optima.push_back(b);
            res.optima_realizations.push_back(run.realization);
        }
    }
    return res;
}

}  // namespace bellgeom
