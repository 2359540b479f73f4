#pragma once
// Small dense primal-dual interior-point SDP solver (HKM direction, Mehrotra predictor-corrector).
//
//   dual:    maximize b.y  s.t.  Z = C - sum_i y_i A_i  PSD
//   primal:  minimize <C,X> s.t. <A_i,X> = b_i, X PSD

#include <Eigen/Core>
#include <string>
#include <vector>

namespace bellgeom {

struct SdpProblem {
    Eigen::MatrixXd C;
    std::vector<Eigen::MatrixXd> A;  // symmetric
    Eigen::VectorXd b;
};

enum class SdpStatus { optimal, max_iterations, numerical_failure };
std::string to_string(SdpStatus s);

struct SdpOptions {
    double gap_tol = 1e-10;
    double feas_tol = 1e-10;
    int max_iter = 120;
    bool verbose = false;  // per-iteration trace on stderr
};

struct SdpResult {
    SdpStatus status = SdpStatus::numerical_failure;
    Eigen::MatrixXd X, Z;
    Eigen::VectorXd y;
    double primal_objective = 0;  // <C,X>
    double dual_objective = 0;    // b.y
    double gap = 0;               // relative duality gap
    double primal_infeasibility = 0, dual_infeasibility = 0;
    int iterations = 0;
    bool ok() const { return status == SdpStatus::optimal; }
};

SdpResult sdp_solve(const SdpProblem& p, const SdpOptions& opt = {});

double min_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace bellgeom
