#include "bellgeom/sdp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bellgeom {

std::string to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::optimal: return "optimal";
        case SdpStatus::max_iterations: return "max-iterations";
        case SdpStatus::numerical_failure: return "numerical-failure";
    }
    return "?";
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Entry {
    int r, c;
    double v;
};

// Constraint matrices kept as sparse entry lists; the Schur complement is sum over entries.
struct SparseSet {
    std::vector<std::vector<Entry>> mats;

    explicit SparseSet(const std::vector<MatrixXd>& A) {
        for (auto& a : A) {
            std::vector<Entry> e;
            for (int j = 0; j < a.cols(); ++j)
                for (int i = 0; i < a.rows(); ++i)
                    if (a(i, j) != 0) e.push_back({i, j, a(i, j)});
            mats.push_back(std::move(e));
        }
    }
    int size() const { return int(mats.size()); }

    double inner(int i, const MatrixXd& X) const {
        double s = 0;
        for (auto& e : mats[i]) s += e.v * X(e.r, e.c);
        return s;
    }
    void axpy(int i, double a, MatrixXd& out) const {
        for (auto& e : mats[i]) out(e.r, e.c) += a * e.v;
    }
};

// Largest step in (0, 1] keeping M + a dM positive definite, scaled by tau.
double step_length(const MatrixXd& M, const MatrixXd& dM, double tau) {
    Eigen::LLT<MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) return 0;
    MatrixXd L = llt.matrixL();
    MatrixXd T1 = L.triangularView<Eigen::Lower>().solve(dM);
    MatrixXd T1t = T1.transpose();
    MatrixXd T2 = L.triangularView<Eigen::Lower>().solve(T1t);
    MatrixXd T = 0.5 * (T2 + T2.transpose());
    double lmin = min_eigenvalue(T);
    if (lmin >= 0) return 1.0;
    return std::min(1.0, tau * (-1.0 / lmin));
}

}  // namespace

SdpResult sdp_solve(const SdpProblem& p, const SdpOptions& opt) {
    const int n = int(p.C.rows());
    const int m = int(p.A.size());
    SparseSet A(p.A);
    SdpResult res;

    double scale = 1.0;
    {
        double cn = p.C.cwiseAbs().maxCoeff();
        double bn = p.b.size() ? p.b.cwiseAbs().maxCoeff() : 0.0;
        scale = std::max({1.0, cn, bn});
    }
    MatrixXd X = scale * MatrixXd::Identity(n, n);
    MatrixXd Z = scale * MatrixXd::Identity(n, n);
    VectorXd y = VectorXd::Zero(m);

    auto opA = [&](const MatrixXd& M) {
        VectorXd v(m);
        for (int i = 0; i < m; ++i) v[i] = A.inner(i, M);
        return v;
    };
    auto adjA = [&](const VectorXd& v) {
        MatrixXd M = MatrixXd::Zero(n, n);
        for (int i = 0; i < m; ++i) A.axpy(i, v[i], M);
        return M;
    };

    const double bnorm = 1 + p.b.norm(), cnorm = 1 + p.C.norm();
    for (int it = 0; it < opt.max_iter; ++it) {
        res.iterations = it;
        VectorXd rp = p.b - opA(X);
        MatrixXd Rd = p.C - Z - adjA(y);
        double pobj = (p.C.cwiseProduct(X)).sum();
        double dobj = p.b.dot(y);
        double mu = X.cwiseProduct(Z).sum() / n;
        double gap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
        res.primal_infeasibility = rp.norm() / bnorm;
        res.dual_infeasibility = Rd.norm() / cnorm;
        res.gap = gap;
        if (opt.verbose)
            std::fprintf(stderr, "sdp %3d pobj %.12g dobj %.12g gap %.2e pinf %.2e dinf %.2e mu %.2e\n", it, pobj, dobj,
                         gap, res.primal_infeasibility, res.dual_infeasibility, mu);
        if (gap < opt.gap_tol && res.primal_infeasibility < opt.feas_tol && res.dual_infeasibility < opt.feas_tol) {
            res.status = SdpStatus::optimal;
            break;
        }

        Eigen::LLT<MatrixXd> zllt(Z);
        if (zllt.info() != Eigen::Success) {
            res.status = SdpStatus::numerical_failure;
            break;
        }
        MatrixXd Zi = zllt.solve(MatrixXd::Identity(n, n));
        Zi = 0.5 * (Zi + Zi.transpose()).eval();

        // Schur complement M_ij = tr(A_i X A_j Z^{-1})
        MatrixXd M(m, m);
        {
            std::vector<MatrixXd> XAZ(m);
            for (int j = 0; j < m; ++j) {
                MatrixXd T = MatrixXd::Zero(n, n);
                // X A_j Z^{-1}: sum over entries (r,c,v): v X[:,r] Zi[c,:]
                for (auto& e : A.mats[j]) T.noalias() += e.v * X.col(e.r) * Zi.row(e.c);
                XAZ[j] = std::move(T);
            }
            for (int i = 0; i < m; ++i)
                for (int j = i; j < m; ++j) {
                    double s = 0;
                    for (auto& e : A.mats[i]) s += e.v * XAZ[j](e.c, e.r);
                    M(i, j) = M(j, i) = s;
                }
        }
        Eigen::LDLT<MatrixXd> mldlt(M);
        bool m_ok = mldlt.info() == Eigen::Success;
        Eigen::CompleteOrthogonalDecomposition<MatrixXd> mcod;
        if (!m_ok) mcod.compute(M);

        auto solveM = [&](const VectorXd& r) -> VectorXd {
            VectorXd s = m_ok ? VectorXd(mldlt.solve(r)) : VectorXd(mcod.solve(r));
            if (!s.allFinite()) s = M.completeOrthogonalDecomposition().solve(r);
            return s;
        };

        // direction for target sigma*mu with optional second-order correction K (added to X Z rhs)
        auto direction = [&](double sigma_mu, const MatrixXd* K, MatrixXd& dX, VectorXd& dy, MatrixXd& dZ) {
            MatrixXd G = sigma_mu * Zi - X - X * Rd * Zi;
            if (K) G -= *K * Zi;
            dy = solveM(rp - opA(G));
            dZ = Rd - adjA(dy);
            dX = sigma_mu * Zi - X - X * dZ * Zi;
            if (K) dX -= *K * Zi;
            dX = 0.5 * (dX + dX.transpose()).eval();
        };

        MatrixXd dXa, dZa, dX, dZ;
        VectorXd dya, dy;
        direction(0.0, nullptr, dXa, dya, dZa);
        double ap = step_length(X, dXa, 1.0), ad = step_length(Z, dZa, 1.0);
        double mu_aff = (X + ap * dXa).cwiseProduct(Z + ad * dZa).sum() / n;
        double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3);
        sigma = std::clamp(sigma, 0.0, 1.0);
        MatrixXd K = dXa * dZa;
        direction(sigma * mu, &K, dX, dy, dZ);
        if (!dX.allFinite() || !dZ.allFinite() || !dy.allFinite()) {
            res.status = SdpStatus::numerical_failure;
            break;
        }
        ap = step_length(X, dX, 0.98);
        ad = step_length(Z, dZ, 0.98);
        if (opt.verbose)
            std::fprintf(stderr, "    sigma %.3e ap %.3e ad %.3e eigX %.3e eigZ %.3e\n", sigma, ap, ad, min_eigenvalue(X),
                         min_eigenvalue(Z));
        if (ap < 1e-12 && ad < 1e-12) {
            res.status = SdpStatus::numerical_failure;
            break;
        }
        X += ap * dX;
        y += ad * dy;
        Z += ad * dZ;
        X = 0.5 * (X + X.transpose()).eval();
        Z = 0.5 * (Z + Z.transpose()).eval();
        res.status = SdpStatus::max_iterations;
    }
    res.X = X;
    res.Z = Z;
    res.y = y;
    res.primal_objective = (p.C.cwiseProduct(X)).sum();
    res.dual_objective = p.b.dot(y);
    return res;
}

}  // namespace bellgeom
