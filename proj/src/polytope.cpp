#include "bellgeom/polytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bellgeom {

NsConstraints ns_constraints(const Scenario& s) {
    const int n = s.parties(), dim = s.dim();
    std::vector<Vec<double>> rows;
    std::vector<double> rhs;
    for (int xi = 0; xi < s.input_tuples(); ++xi) {
        Vec<double> r = Vec<double>::Zero(dim);
        for (int ai = 0; ai < s.output_tuples(); ++ai) r[s.index(xi, ai)] = 1;
        rows.push_back(r);
        rhs.push_back(1);
    }
    // marginal of the other parties must not depend on x_j
    for (int j = 0; j < n; ++j) {
        for (int xi = 0; xi < s.input_tuples(); ++xi) {
            auto x = s.decode_input(xi);
            if (x[j] == 0) continue;
            auto x0 = x;
            x0[j] = 0;
            int xi0 = s.encode_input(x0);
            for (int ai = 0; ai < s.output_tuples(); ++ai) {
                if (s.output_bit(ai, j) != 0) continue;
                int aj1 = ai | (1 << (n - 1 - j));
                Vec<double> r = Vec<double>::Zero(dim);
                r[s.index(xi, ai)] += 1;
                r[s.index(xi, aj1)] += 1;
                r[s.index(xi0, ai)] -= 1;
                r[s.index(xi0, aj1)] -= 1;
                rows.push_back(r);
                rhs.push_back(0);
            }
        }
    }
    NsConstraints c;
    c.A.resize(rows.size(), dim);
    c.b.resize(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        c.A.row(i) = rows[i].transpose();
        c.b[i] = rhs[i];
    }
    return c;
}

PolyFace local_bound(const BellFunctional& f, double tol) {
    PolyFace face;
    face.functional = f;
    auto det = enumerate_deterministic(f.scenario);
    double best = -1e300;
    for (auto& d : det) best = std::max(best, bell_value(f, d));
    face.value = best;
    for (auto& d : det)
        if (bell_value(f, d) >= best - tol) face.vertices.push_back(d);
    face.dim = affine_dimension(face.vertices);
    return face;
}

namespace {

LinearProgram ns_lp(const Scenario& s, const Vec<double>& objective) {
    LinearProgram lp(s.dim());
    lp.c = objective;
    auto c = ns_constraints(s);
    lp.A_eq = c.A;
    lp.b_eq = c.b;
    return lp;
}

void add_unique(std::vector<Behaviour>& pts, const Behaviour& p, double tol) {
    for (auto& q : pts)
        if (max_abs_diff(p, q) <= tol) return;
    pts.push_back(p);
}

}  // namespace

const std::vector<Behaviour>& ns_vertices_2222() {
    static const std::vector<Behaviour> verts = [] {
        Scenario s = scenario_2222();
        auto c = ns_constraints(s);
        std::vector<Behaviour> out;
        // vertex = unique solution with support inside an 8-subset of coordinates
        const int dim = s.dim(), k = 8;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Mat<double> sub(c.A.rows(), k);
            for (int i = 0; i < k; ++i) sub.col(i) = c.A.col(idx[i]);
            Eigen::ColPivHouseholderQR<Mat<double>> qr(sub);
            qr.setThreshold(1e-10);
            if (qr.rank() == k) {
                Vec<double> sol = qr.solve(c.b);
                if ((sub * sol - c.b).cwiseAbs().maxCoeff() < 1e-9 && sol.minCoeff() > -1e-12) {
                    Behaviour p(s, Vec<double>::Zero(dim));
                    for (int i = 0; i < k; ++i) p.p[idx[i]] = std::max(0.0, sol[i]);
                    add_unique(out, p, 1e-9);
                }
            }
            int i = k - 1;
            while (i >= 0 && idx[i] == dim - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return out;
    }();
    return verts;
}

PolyFace ns_bound(const BellFunctional& f, double tol, int samples, std::uint64_t seed) {
    const Scenario& s = f.scenario;
    PolyFace face;
    face.functional = f;
    auto r = solve(ns_lp(s, f.g));
    if (!r.ok()) throw std::runtime_error("ns_bound: LP failed (" + to_string(r.status) + ")");
    face.value = r.optimum;
    if (s == scenario_2222()) {
        double best = -1e300;
        for (auto& v : ns_vertices_2222()) best = std::max(best, bell_value(f, v));
        face.value = best;  // exact vertex maximum; agrees with the LP within its gap
        for (auto& v : ns_vertices_2222())
            if (bell_value(f, v) >= best - tol) face.vertices.push_back(v);
    } else {
        // sample vertices of the optimal face with random secondary objectives
        face.complete = false;
        face.vertices.push_back(Behaviour(s, r.x));
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> N(0, 1);
        LinearProgram lp = ns_lp(s, f.g);
        lp.add_ub(-f.g, -(face.value - 1e-3 * tol));
        for (int t = 0; t < samples; ++t) {
            for (int i = 0; i < s.dim(); ++i) lp.c[i] = N(rng);
            auto q = solve(lp);
            if (q.ok()) add_unique(face.vertices, Behaviour(s, q.x), 1e-9);
        }
    }
    face.dim = affine_dimension(face.vertices);
    return face;
}

MembershipResult local_membership(const Behaviour& p, double tol) {
    const Scenario& s = p.scenario;
    auto det = enumerate_deterministic(s);
    const int nd = int(det.size());
    MembershipResult out;
    {
        LinearProgram lp(nd);
        for (int i = 0; i < s.dim(); ++i) {
            Vec<double> row(nd);
            for (int j = 0; j < nd; ++j) row[j] = det[j].p[i];
            lp.add_eq(row, p.p[i]);
        }
        lp.add_eq(Vec<double>::Ones(nd), 1);
        auto r = solve(lp);
        if (r.ok()) {
            Vec<double> rec = Vec<double>::Zero(s.dim());
            for (int j = 0; j < nd; ++j) rec += r.x[j] * det[j].p;
            out.residual = (rec - p.p).cwiseAbs().maxCoeff();
            if (out.residual <= tol) {
                out.inside = true;
                out.weights = r.x;
                return out;
            }
        }
    }
    // separation: max B.p - t s.t. B.D_j <= t, |B_i| <= 1
    const int dim = s.dim();
    LinearProgram lp(dim + 1);
    for (int i = 0; i < dim; ++i) {
        lp.c[i] = p.p[i];
        lp.free_var[i] = true;
        lp.upper[i] = 1.0;
        Vec<double> low = Vec<double>::Zero(dim + 1);
        low[i] = -1;
        lp.add_ub(low, 1);
    }
    lp.c[dim] = -1;
    lp.free_var[dim] = true;
    for (int j = 0; j < nd; ++j) {
        Vec<double> row(dim + 1);
        row.head(dim) = det[j].p;
        row[dim] = -1;
        lp.add_ub(row, 0);
    }
    auto r = solve(lp);
    if (!r.ok()) throw std::runtime_error("local_membership: separation LP failed");
    BellFunctional sep(s, r.x.head(dim), "separating");
    double lb = local_bound(sep).value;
    out.margin = bell_value(sep, p) - lb;
    out.inside = out.margin <= tol;
    if (!out.inside) out.separating = sep;
    return out;
}

BellFunctional chsh_variant(int k) {
    int al = (k >> 2) & 1, be = (k >> 1) & 1, ga = k & 1;
    std::array<double, 9> t{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) t[(x + 1) * 3 + y + 1] = ((x * y) ^ (al * x) ^ (be * y) ^ ga) ? -1 : 1;
    return functional_2222(t, "CHSH_" + std::to_string(k));
}

Behaviour pr_variant(int k) {
    auto w = correlator_coefficients(chsh_variant(k));
    CorrelatorTable t(scenario_2222());
    for (int i = 1; i < 9; ++i) t.c[i] = w[i];
    return corr_to_prob(t);
}

double chsh_value(const Behaviour& p, int k) { return bell_value(chsh_variant(k), p); }

std::pair<int, double> max_chsh(const Behaviour& p) {
    int best = 0;
    double v = -1e300;
    for (int k = 0; k < 8; ++k) {
        double c = chsh_value(p, k);
        if (c > v) {
            v = c;
            best = k;
        }
    }
    return {best, v};
}

BierhorstResult bierhorst_decompose(const Behaviour& p) {
    if (p.scenario != scenario_2222()) throw ScenarioMismatch();
    int violated = 0, k = -1;
    for (int j = 0; j < 8; ++j)
        if (chsh_value(p, j) > 2 + 1e-9) {
            ++violated;
            k = j;
        }
    if (violated == 0) throw std::domain_error("no violation");
    if (violated > 1) throw std::logic_error("ill-posed: several CHSH variants violated");
    BierhorstResult res;
    res.variant = k;
    res.beta = chsh_value(p, k);
    auto f = chsh_variant(k);
    for (auto& d : enumerate_deterministic(scenario_2222()))
        if (std::abs(bell_value(f, d) - 2) < 1e-12) res.points.push_back(d);
    Behaviour pr = pr_variant(k);
    const int nv = 1 + int(res.points.size());
    LinearProgram lp(nv);
    lp.c[0] = 1;
    for (int i = 0; i < 16; ++i) {
        Vec<double> row(nv);
        row[0] = pr.p[i];
        for (size_t j = 0; j < res.points.size(); ++j) row[j + 1] = res.points[j].p[i];
        lp.add_eq(row, p.p[i]);
    }
    lp.add_eq(Vec<double>::Ones(nv), 1);
    auto r = solve(lp);
    if (!r.ok()) throw std::runtime_error("bierhorst_decompose: LP " + to_string(r.status));
    res.v0 = r.x[0];
    Vec<double> rec = res.v0 * pr.p;
    for (size_t j = 0; j < res.points.size(); ++j) {
        res.weights.push_back(r.x[j + 1]);
        rec += r.x[j + 1] * res.points[j].p;
    }
    res.residual = (rec - p.p).cwiseAbs().maxCoeff();
    return res;
}

double visibility_lp(const Behaviour& p, const Behaviour& noise) {
    auto det = enumerate_deterministic(p.scenario);
    const int nd = int(det.size()), dim = p.scenario.dim();
    // variables: w (nd), v ; sum w D + v (p - noise) = p
    LinearProgram lp(nd + 1);
    lp.c[nd] = -1;
    lp.upper[nd] = 1.0;
    for (int i = 0; i < dim; ++i) {
        Vec<double> row(nd + 1);
        for (int j = 0; j < nd; ++j) row[j] = det[j].p[i];
        row[nd] = p.p[i] - noise.p[i];
        lp.add_eq(row, p.p[i]);
    }
    Vec<double> norm = Vec<double>::Zero(nd + 1);
    norm.head(nd).setOnes();
    lp.add_eq(norm, 1);
    auto r = solve(lp);
    if (!r.ok()) throw std::runtime_error("visibility_lp: " + to_string(r.status));
    return r.x[nd];
}

namespace {

// min v with noise ranging over L (cone of deterministic points) or NS (cone form).
double optimal_noise_visibility(const Behaviour& p, bool ns_noise) {
    const Scenario& s = p.scenario;
    auto det = enumerate_deterministic(s);
    const int nd = int(det.size()), dim = s.dim();
    const int nq = ns_noise ? dim : nd;
    // variables: w (nd), u (nq), v
    const int nv = nd + nq + 1, iv = nd + nq;
    LinearProgram lp(nv);
    lp.c[iv] = -1;
    lp.upper[iv] = 1.0;
    for (int i = 0; i < dim; ++i) {
        Vec<double> row = Vec<double>::Zero(nv);
        for (int j = 0; j < nd; ++j) row[j] = det[j].p[i];
        if (ns_noise)
            row[nd + i] = -1;
        else
            for (int j = 0; j < nd; ++j) row[nd + j] = -det[j].p[i];
        row[iv] = p.p[i];
        lp.add_eq(row, p.p[i]);
    }
    Vec<double> norm = Vec<double>::Zero(nv);
    norm.head(nd).setOnes();
    lp.add_eq(norm, 1);
    if (ns_noise) {
        auto c = ns_constraints(s);
        for (int r = 0; r < c.A.rows(); ++r) {
            Vec<double> row = Vec<double>::Zero(nv);
            row.segment(nd, dim) = c.A.row(r).transpose();
            row[iv] = -c.b[r];  // normalisation rows scale with v
            lp.add_eq(row, 0);
        }
    } else {
        Vec<double> row = Vec<double>::Zero(nv);
        row.segment(nd, nd).setOnes();
        row[iv] = -1;
        lp.add_eq(row, 0);
    }
    auto r = solve(lp);
    if (!r.ok()) throw std::runtime_error("optimal_noise_visibility: " + to_string(r.status));
    return r.x[iv];
}

}  // namespace

VisibilityReport visibilities(const Behaviour& p) {
    if (p.scenario != scenario_2222()) throw ScenarioMismatch();
    auto [k, beta] = max_chsh(p);
    VisibilityReport rep;
    rep.beta = beta;
    if (beta <= 2 + 1e-12) {
        rep.already_local = true;
        return rep;
    }
    rep.v_white = (beta - 2) / beta;
    rep.v_local = (beta - 2) / (beta + 2);
    rep.v_ns = (beta - 2) / (beta + 4);
    Behaviour p0 = uniform(p.scenario);
    Behaviour anti = pr_variant(k ^ 1);
    rep.lp_white = visibility_lp(p, p0);
    rep.lp_local = visibility_lp(p, mix(p0, anti, 0.5));
    rep.lp_ns = visibility_lp(p, anti);
    rep.lp_local_opt = optimal_noise_visibility(p, false);
    rep.lp_ns_opt = optimal_noise_visibility(p, true);
    return rep;
}

}  // namespace bellgeom
