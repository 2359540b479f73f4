#include "bellgeom/lp.hpp"

#include <algorithm>
#include <mutex>

namespace bellgeom {

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::numerical_failure: return "numerical-failure";
    }
    return "?";
}

LinearProgramT<Rational> to_rational(const LinearProgram& lp) {
    auto conv_vec = [](const Vec<double>& v) {
        Vec<Rational> out(v.size());
        for (int i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
        return out;
    };
    auto conv_mat = [](const Mat<double>& a) {
        Mat<Rational> out(a.rows(), a.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
        return out;
    };
    LinearProgramT<Rational> r;
    r.c = conv_vec(lp.c);
    r.A_eq = conv_mat(lp.A_eq);
    r.b_eq = conv_vec(lp.b_eq);
    r.A_ub = conv_mat(lp.A_ub);
    r.b_ub = conv_vec(lp.b_ub);
    r.free_var = lp.free_var;
    r.upper.resize(lp.upper.size());
    for (size_t j = 0; j < lp.upper.size(); ++j)
        if (lp.upper[j]) r.upper[j] = Rational(*lp.upper[j]);
    return r;
}

namespace {
std::mutex audit_mutex;
LpAudit audit_state;
}  // namespace

LpAudit lp_audit() {
    std::lock_guard<std::mutex> lock(audit_mutex);
    return audit_state;
}

void lp_audit_record(const LpResult& r) {
    if (!r.ok()) return;
    std::lock_guard<std::mutex> lock(audit_mutex);
    ++audit_state.solved;
    audit_state.worst_gap = std::max(audit_state.worst_gap, r.gap);
    audit_state.worst_dual_infeasibility = std::max(audit_state.worst_dual_infeasibility, r.dual_infeasibility);
}

LpResult solve(const LinearProgram& lp) {
    LpResult r = lp_solve(lp);
    lp_audit_record(r);
    return r;
}

}  // namespace bellgeom
