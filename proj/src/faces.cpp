#include "bellgeom/faces.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "bellgeom/quantum.hpp"

namespace bellgeom {

std::string to_string(FaceClass c) {
    switch (c) {
        case FaceClass::c1: return "1";
        case FaceClass::c2a: return "2a";
        case FaceClass::c2b: return "2b";
        case FaceClass::c3a: return "3a";
        case FaceClass::c4a: return "4a";
        case FaceClass::c4b: return "4b";
        case FaceClass::c4d: return "4d";
        case FaceClass::undecided: return "undecided";
    }
    return "?";
}

QuantumBounds quantum_bounds(const BellFunctional& f, std::optional<NpaLevel> level, int restarts,
                             std::uint64_t seed, double tol) {
    QuantumBounds qb;
    qb.lower = seesaw_lower_bound(f, restarts, seed);
    if (level) {
        qb.upper = npa_upper_bound(f, *level);
        return qb;
    }
    NpaLevel l = default_level(f);
    qb.upper = npa_upper_bound(f, l);
    while (qb.upper.optimum - qb.lower.value > tol && l != NpaLevel::two) {
        l = l == NpaLevel::one ? NpaLevel::one_ab : NpaLevel::two;
        auto next = npa_upper_bound(f, l);
        if (next.status != SdpStatus::numerical_failure) qb.upper = next;
    }
    return qb;
}

namespace {

bool is_nonlocal(const Behaviour& p, double margin = 0) {
    auto m = local_membership(p);
    return !m.inside && m.margin > margin;
}

Eigen::VectorXd corr_vec(const Behaviour& p) { return prob_to_corr_unchecked(p).c; }

}  // namespace

std::optional<std::pair<Behaviour, QubitRealization>> nonlocal_quantum_maximizer(const BellFunctional& f,
                                                                                  double beta, double tol,
                                                                                  int restarts, std::uint64_t seed,
                                                                                  double margin) {
    const Scenario& s = f.scenario;
    auto plain = seesaw_lower_bound(f, restarts, seed);
    for (size_t i = 0; i < plain.all_optima.size(); ++i) {
        auto& p = plain.all_optima[i];
        if (bell_value(f, p) >= beta - tol && is_nonlocal(p, margin)) return std::make_pair(p, plain.optima_realizations[i]);
    }
    if (s != scenario_2222()) return std::nullopt;
    // tilt towards each CHSH variant and follow the maximizer as the tilt vanishes
    Eigen::VectorXd w = correlator_coefficients(f);
    std::mt19937_64 seeder(seed + 17);
    for (int k = 0; k < 8; ++k) {
        Eigen::VectorXd g = correlator_coefficients(chsh_variant(k));
        QubitRealization best;
        double bestv = -1e300;
        for (int t = 0; t < std::max(4, restarts / 8); ++t) {
            auto run = seesaw_run(s, w + 1e-2 * g, random_realization(s, seeder()));
            if (run.value > bestv) {
                bestv = run.value;
                best = run.realization;
            }
        }
        for (double t : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) best = seesaw_run(s, w + t * g, best).realization;
        Behaviour p = realization_to_behaviour(best, s);
        if (bell_value(f, p) >= beta - tol && is_nonlocal(p, margin)) return std::make_pair(p, best);
    }
    return std::nullopt;
}

FaceReport classify(const BellFunctional& f, const ClassifyOptions& opt) {
    FaceReport r;
    r.functional = f;
    auto lf = local_bound(f);
    r.beta_L = lf.value;
    r.dim_L = lf.dim;
    auto nf = ns_bound(f);
    r.beta_NS = nf.value;
    r.dim_NS = nf.dim;
    r.ns_face_complete = nf.complete;
    auto qb = quantum_bounds(f, opt.level, opt.restarts, opt.seed, opt.tol);
    r.level = qb.upper.level;
    r.beta_Q_upper = std::min(qb.upper.optimum, r.beta_NS);
    r.beta_Q_lower = std::max(qb.lower.value, r.beta_L);

    // equal when the sandwich closes, strict when the other bound separates, otherwise open
    const bool lq = r.beta_Q_upper - r.beta_L <= opt.tol;
    const bool l_lt_q = r.beta_Q_lower - r.beta_L > opt.tol;
    const bool qns = r.beta_NS - r.beta_Q_lower <= opt.tol;
    const bool q_lt_ns = r.beta_NS - r.beta_Q_upper > opt.tol;

    std::vector<Behaviour> qpoints;
    if (lq) qpoints = lf.vertices;
    for (auto& p : qb.lower.all_optima)
        if (bell_value(f, p) >= r.beta_Q_upper - opt.tol) qpoints.push_back(p);

    // nonlocal NS vertex on the face: never quantum, so F_Q is strictly inside F_NS
    std::optional<Behaviour> ns_nonlocal;
    bool all_ns_local = true;
    for (auto& v : nf.vertices) {
        if (is_nonlocal(v)) {
            all_ns_local = false;
            if (!ns_nonlocal) ns_nonlocal = v;
        }
    }
    if (ns_nonlocal)
        r.evidence.push_back({"nonlocal-ns-vertex", "NS vertex on the face outside L", ns_nonlocal, bell_value(f, *ns_nonlocal)});

    auto lq_faces = [&](FaceClass strict, FaceClass equal) -> FaceClass {
        auto wit = nonlocal_quantum_maximizer(f, r.beta_Q_upper, opt.tol, opt.restarts, opt.seed, opt.witness_margin);
        if (wit) {
            r.evidence.push_back({"nonlocal-quantum-maximizer", "qubit realization saturating the bound outside L",
                                  wit->first, bell_value(f, wit->first)});
            qpoints.push_back(wit->first);
            return strict;
        }
        if (f.scenario != scenario_2222()) return FaceClass::undecided;
        // directional test: slope of the quantum value along every CHSH variant stays at the local value 2
        NpaLevel lvl = qb.upper.level;
        const double t = 1e-3;
        double worst = -1e300;
        for (int k = 0; k < 8; ++k) {
            BellFunctional tilted(f.scenario, f.g + t * chsh_variant(k).g);
            auto up = npa_upper_bound(tilted, lvl);
            double kappa = (up.optimum - r.beta_L) / t;
            worst = std::max(worst, kappa);
        }
        std::ostringstream os;
        os << "max directional CHSH slope " << worst << " at tilt " << t;
        r.evidence.push_back({"directional-npa", os.str(), std::nullopt, worst});
        return worst <= 2 + opt.slope_margin ? equal : FaceClass::undecided;
    };

    if ((!lq && !l_lt_q) || (!qns && !q_lt_ns)) {
        r.label = FaceClass::undecided;
        r.evidence.push_back({"open-sandwich", "quantum bounds do not separate or meet the polytope values", std::nullopt,
                              r.beta_Q_upper - r.beta_Q_lower});
    } else if (l_lt_q && q_lt_ns) {
        r.label = FaceClass::c1;
    } else if (lq && q_lt_ns) {
        r.label = lq_faces(FaceClass::c2a, FaceClass::c2b);
    } else if (l_lt_q && qns) {
        r.label = ns_nonlocal ? FaceClass::c3a : FaceClass::undecided;
    } else {
        if (all_ns_local && nf.complete) {
            r.label = FaceClass::c4d;
            r.evidence.push_back({"local-ns-face", "every NS vertex on the face is deterministic", std::nullopt, r.beta_NS});
        } else if (ns_nonlocal) {
            r.label = lq_faces(FaceClass::c4a, FaceClass::c4b);
        } else {
            r.label = FaceClass::undecided;
        }
    }
    r.dim_Q_lower = affine_dimension(qpoints);
    return r;
}

BellFunctional exposing_functional(const Behaviour& p) {
    for (int i = 0; i < p.p.size(); ++i)
        if (p.p[i] != 0 && p.p[i] != 1) throw std::invalid_argument("exposing_functional: point is not deterministic");
    return {p.scenario, p.p, "exposing"};
}

std::vector<Eigen::VectorXd> realization_tangents(const QubitRealization& r, const Scenario& s) {
    std::vector<Eigen::VectorXd> out;
    auto corr_of = [&](const QubitRealization& q) { return prob_to_corr_unchecked(realization_to_behaviour(q, s)).c; };
    auto base = corr_of(r);
    // observables: correlators are linear in each observable, so the derivative replaces a by e
    for (int i = 0; i < r.parties(); ++i)
        for (int x = 0; x < s.inputs(i); ++x) {
            Eigen::Vector3d a = r.bloch[i][x];
            Eigen::Vector3d e1 = a.unitOrthogonal(), e2 = a.cross(e1);
            for (auto& e : {e1, e2}) {
                QubitRealization q = r;
                q.bloch[i][x] = e;
                // only terms containing (i, x) change: take the difference of the two linear pieces
                Eigen::VectorXd d = corr_of(q);
                for (int ki = 0; ki < s.corr_dim(); ++ki)
                    if (s.decode_corr(ki)[i] != x + 1) d[ki] = 0;
                out.push_back(d);
            }
        }
    // state: d<psi|O|psi> = 2 Re <delta|O|psi> for delta orthogonal to psi
    const int dim = int(r.state.size());
    for (int j = 0; j < dim; ++j)
        for (cplx ph : {cplx(1, 0), cplx(0, 1)}) {
            Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(dim);
            delta[j] = ph;
            delta -= r.state * (r.state.adjoint() * delta)(0, 0);
            if (delta.norm() < 1e-12) continue;
            Eigen::VectorXd d = Eigen::VectorXd::Zero(s.corr_dim());
            for (int ki = 1; ki < s.corr_dim(); ++ki) {
                Eigen::VectorXd unit = Eigen::VectorXd::Zero(s.corr_dim());
                unit[ki] = 1;
                Eigen::MatrixXcd O = bell_operator(s, unit, r);
                d[ki] = 2 * (delta.adjoint() * O * r.state)(0, 0).real();
            }
            out.push_back(d);
        }
    (void)base;
    return out;
}

std::optional<BellFunctional> tangent_bell_search(const std::vector<Behaviour>& points,
                                                  const std::vector<Eigen::VectorXd>& tangents) {
    if (points.empty()) return std::nullopt;
    const Scenario& s = points[0].scenario;
    const int cd = s.corr_dim();
    // orthonormal basis of the tangent span
    std::vector<Eigen::VectorXd> basis;
    if (!tangents.empty()) {
        Eigen::MatrixXd T(cd, tangents.size());
        for (size_t k = 0; k < tangents.size(); ++k) T.col(k) = tangents[k];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeThinU);
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] > 1e-9 * std::max(1.0, svd.singularValues()[0])) basis.push_back(svd.matrixU().col(i));
    }
    // variables (u, v, t) with w = u - v; t bounds every |w_i| in the second stage
    const int nv = 2 * cd + 1;
    auto split = [&](const Eigen::VectorXd& v) {
        Vec<double> row = Vec<double>::Zero(nv);
        row.head(cd) = v;
        row.segment(cd, cd) = -v;
        return row;
    };
    LinearProgram lp(nv);
    for (auto& p : points) {
        if (p.scenario != s) throw ScenarioMismatch();
        lp.add_eq(split(corr_vec(p)), 1);
    }
    for (auto& v : basis) lp.add_eq(split(v), 0);
    for (auto& d : enumerate_deterministic(s)) lp.add_ub(split(corr_vec(d)), 1);
    // no constant term, otherwise the constant functional 1 always qualifies
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(cd);
    e0[0] = 1;
    lp.add_eq(split(e0), 0);

    // stage 1: minimal l1 norm
    Vec<double> l1 = Vec<double>::Zero(nv);
    l1.head(2 * cd).setOnes();
    lp.c = -l1;
    auto r = solve(lp);
    if (!r.ok()) return std::nullopt;

    // stage 2: among those, minimal max |w_i|, which spreads weight and avoids needless ties with
    // extra deterministic points
    LinearProgram lp2 = lp;
    lp2.add_ub(l1, -r.optimum + 1e-9 * std::max(1.0, -r.optimum));
    for (int i = 0; i < cd; ++i) {
        Vec<double> row = Vec<double>::Zero(nv);
        row[i] = row[cd + i] = 1;
        row[2 * cd] = -1;
        lp2.add_ub(row, 0);
    }
    lp2.c = Vec<double>::Zero(nv);
    lp2.c[2 * cd] = -1;
    auto r2 = solve(lp2);
    if (r2.ok()) r = r2;
    Eigen::VectorXd w = r.x.head(cd) - r.x.segment(cd, cd);
    return from_correlators(s, w, "tangent");
}

namespace {

using Q5 = Quad<5>;

// (A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1) of a deterministic point
std::vector<Q5> det_coords(int a0, int a1, int b0, int b1) {
    return {a0, a1, b0, b1, a0 * b0, a0 * b1, a1 * b0, a1 * b1};
}

}  // namespace

ExposureCertificate hardy_exposure_lp() {
    ExposureCertificate cert;
    const Q5 s5 = Q5::root();
    cert.point = {Q5(5) - Q5(2) * s5, s5 - Q5(2), Q5(5) - Q5(2) * s5, s5 - Q5(2),
                  Q5(6) * s5 - Q5(13), Q5(3) * s5 - Q5(6), Q5(3) * s5 - Q5(6), Q5(2) * s5 - Q5(5)};
    cert.tangent = {Q5(1), Q5(0), Q5(1), Q5(0), s5 - Q5(1), Q5(-1), Q5(-1), Q5(0)};

    // deterministic points, outputs (a0, a1, b0, b1) in {+1, -1}, party A slowest
    std::vector<std::vector<Q5>> dets;
    std::vector<std::array<int, 4>> labels;
    for (int code = 0; code < 16; ++code) {
        int a0 = (code >> 3 & 1) ? -1 : 1, a1 = (code >> 2 & 1) ? -1 : 1;
        int b0 = (code >> 1 & 1) ? -1 : 1, b1 = (code & 1) ? -1 : 1;
        dets.push_back(det_coords(a0, a1, b0, b1));
        labels.push_back({a0, a1, b0, b1});
    }

    LinearProgramT<Q5> lp(8);
    for (int i = 0; i < 8; ++i) {
        lp.c[i] = cert.point[i];
        lp.free_var[i] = true;
    }
    Vec<Q5> t(8);
    for (int i = 0; i < 8; ++i) t[i] = cert.tangent[i];
    lp.add_eq(t, Q5(0));
    for (auto& d : dets) {
        Vec<Q5> row(8);
        for (int i = 0; i < 8; ++i) row[i] = d[i];
        lp.add_ub(row, Q5(1));
    }
    auto r = lp_solve(lp);
    if (!r.ok()) throw std::runtime_error("hardy_exposure_lp: " + to_string(r.status));
    cert.lp_value = r.optimum;
    cert.dual_value = r.dual_objective;
    for (int i = 0; i < 8; ++i) cert.functional.push_back(r.x[i]);
    // The optimal set is not a single point; report a facet of L when one is optimal,
    // preferring the one invariant under exchanging the parties.
    // Positivity facet of P(ab|xy) in this normalisation: -s A_x - t B_y - s t A_x B_y with s, t = +-1.
    auto value = [](const std::vector<Q5>& u, const std::vector<Q5>& v) {
        Q5 acc(0);
        for (int i = 0; i < 8; ++i) acc += u[i] * v[i];
        return acc;
    };
    bool found = false;
    for (int x = 0; x < 2 && !found; ++x)
        for (int y = 0; y < 2 && !found; ++y)
            for (int s : {1, -1})
                for (int t : {1, -1}) {
                    std::vector<Q5> b(8, Q5(0));
                    b[x] = Q5(-s);
                    b[2 + y] = Q5(-t);
                    b[4 + 2 * x + y] = Q5(-s * t);
                    bool symmetric = x == y && s == t;
                    if (!found && symmetric && value(b, cert.tangent) == Q5(0) && value(b, cert.point) == r.optimum) {
                        cert.functional = b;
                        found = true;
                    }
                }
    for (int j = 0; j < 16; ++j) cert.dual_weights.push_back(r.y_ub[j]);
    cert.dual_tangent = r.y_eq[0];

    auto dual_ok = [&](const std::vector<Q5>& y, const Q5& z) {
        Q5 total(0);
        for (auto& v : y) {
            if (v.sign() < 0) return false;
            total += v;
        }
        for (int i = 0; i < 8; ++i) {
            Q5 acc = z * cert.tangent[i];
            for (int j = 0; j < 16; ++j) acc += y[j] * dets[j][i];
            if (acc != cert.point[i]) return false;
        }
        return total == cert.lp_value;
    };
    cert.solver_dual_feasible = dual_ok(cert.dual_weights, cert.dual_tangent);

    // published dual: weight on Pdet1 (all +1), Pdet5 (B1 = -1) and Pdet6 (A1 = -1)
    std::vector<Q5> y(16, Q5(0));
    for (int j = 0; j < 16; ++j) {
        auto l = labels[j];
        if (l == std::array<int, 4>{1, 1, 1, 1}) y[j] = s5 - Q5(2);
        if (l == std::array<int, 4>{1, 1, 1, -1} || l == std::array<int, 4>{1, -1, 1, 1})
            y[j] = (Q5(3) - s5) / Q5(2);
    }
    cert.reference_dual_feasible = dual_ok(y, Q5(4) - Q5(2) * s5);
    cert.conclusion = cert.lp_value == Q5(1)
                          ? "every tangent functional at the Hardy point has equal local and quantum value 1: "
                            "the Hardy point is not exposed"
                          : "tangent functionals exceed the local bound";
    return cert;
}

FlatRegionReport flat_region_certificate(const BellFunctional& f, const std::vector<QuantumCandidate>& candidates,
                                         std::optional<NpaLevel> level, std::optional<double> reference) {
    FlatRegionReport rep;
    std::vector<bool> quantum;
    std::vector<double> values;
    double best = -std::numeric_limits<double>::infinity();
    for (auto& c : candidates) {
        bool q = false;
        if (c.realization) {
            q = max_abs_diff(realization_to_behaviour(*c.realization, f.scenario), c.point) < 1e-9;
        } else if (c.tlm_witness) {
            try {
                q = tlm_check(prob_to_corr(c.point)).member;
            } catch (const std::exception&) {
                q = false;
            }
        } else {
            q = local_membership(c.point).inside;
        }
        quantum.push_back(q);
        values.push_back(bell_value(f, c.point));
        if (q) best = std::max(best, values.back());
    }
    NpaLevel l = level.value_or(default_level(f));
    NpaSolution up = npa_upper_bound(f, l);
    // escalate while the relaxation sits above every quantum candidate
    while (!level && l != NpaLevel::two && up.optimum > best + 1e-6) {
        l = l == NpaLevel::one ? NpaLevel::one_ab : NpaLevel::two;
        auto next = npa_upper_bound(f, l);
        if (next.status != SdpStatus::numerical_failure) up = next;
    }
    rep.beta_Q_upper = up.optimum;
    rep.target = reference.value_or(up.optimum);
    rep.relaxation_tight = std::abs(up.optimum - reference.value_or(best)) <= 1e-6;
    std::vector<Behaviour> ok;
    for (size_t i = 0; i < candidates.size(); ++i) {
        bool good = quantum[i] && std::abs(values[i] - rep.target) <= 1e-6;
        rep.verified.push_back(good);
        rep.values.push_back(values[i]);
        if (good) ok.push_back(candidates[i].point);
    }
    rep.dim_Q_lower = affine_dimension(ok);
    return rep;
}

BellFunctional hardy_family_functional(double a1, double a2, double a3) {
    if (a1 < 0 || a2 < 0 || a3 < 0) throw std::invalid_argument("hardy_family_functional: coefficients must be >= 0");
    return functional_2222({0, a2, a3 - a1, a1, 0, a1, a3 - a2, a2, -a3}, "B_hardyfam");
}

QubitRealization hardy_realization() {
    QubitRealization r;
    const double a = std::sqrt(std::sqrt(5.0) - 2);
    const double b = std::sqrt((1 - a * a) / 2);
    r.state = Eigen::VectorXcd::Zero(4);
    r.state << 0, b, b, a;
    Eigen::Vector3d o0(2 * a, 0, std::sqrt(1 - 4 * a * a)), o1(0, 0, -1);
    r.bloch = {{o0, o1}, {o0, o1}};
    return r;
}

QubitRealization chsh_realization() {
    QubitRealization r;
    const double h = 1 / std::sqrt(2.0);
    r.state = Eigen::VectorXcd::Zero(4);
    r.state << h, 0, 0, h;
    r.bloch = {{Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 0, 0)},
               {Eigen::Vector3d(h, 0, h), Eigen::Vector3d(-h, 0, h)}};
    return r;
}

}  // namespace bellgeom
