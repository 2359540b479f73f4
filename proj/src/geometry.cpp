#include "bellgeom/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "bellgeom/polytope.hpp"
#include "bellgeom/quantum.hpp"
#include "bellgeom/qubit.hpp"
#include "bellgeom/zoo.hpp"
#include "json.hpp"

namespace bellgeom {

std::string to_string(CurveKind k) {
    switch (k) {
        case CurveKind::local: return "L";
        case CurveKind::q_inner: return "Q_inner";
        case CurveKind::q_outer: return "Q_outer";
        case CurveKind::ns: return "NS";
    }
    return "?";
}

std::string to_string(FeatureType t) {
    switch (t) {
        case FeatureType::flat_segment: return "flat-segment";
        case FeatureType::kink: return "kink";
        case FeatureType::smooth_join: return "smooth-join";
    }
    return "?";
}

const std::vector<double>& BoundaryCurve::radii(CurveKind k) const {
    switch (k) {
        case CurveKind::local: return r_L;
        case CurveKind::q_inner: return r_Q_inner;
        case CurveKind::q_outer: return r_Q_outer;
        case CurveKind::ns: return r_NS;
    }
    return r_NS;
}

Eigen::Vector2d BoundaryCurve::point(CurveKind k, int i) const {
    double r = radii(k)[i];
    return origin + r * Eigen::Vector2d(std::cos(theta[i]), std::sin(theta[i]));
}

double BoundaryCurve::max_gap() const {
    double g = 0;
    for (int i = 0; i < size(); ++i) g = std::max(g, r_Q_outer[i] - r_Q_inner[i]);
    return g;
}

namespace {

// Runs fn(i) for i in [0, n) on worker threads; results are written by index, so order is fixed.
template <class F>
void parallel_for(int n, F fn) {
    int workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::vector<double> angle_grid(int n) {
    std::vector<double> th(n);
    for (int i = 0; i < n; ++i) th[i] = 2 * M_PI * i / n;
    return th;
}

Vec<double> corr_of(const Scenario& s, const Vec<double>& v) { return prob_to_corr_unchecked(Behaviour(s, v)).c; }

// max r with c0 + r d in the convex hull of the given correlator vectors.
double hull_radius(const std::vector<Vec<double>>& pts, const Vec<double>& c0, const Vec<double>& d) {
    const int n = int(pts.size());
    const int cd = int(c0.size());
    LinearProgram lp(n + 1);
    lp.c[n] = 1;
    for (int k = 0; k < cd; ++k) {
        Vec<double> row(n + 1);
        for (int j = 0; j < n; ++j) row[j] = pts[j][k];
        row[n] = -d[k];
        lp.add_eq(row, c0[k]);
    }
    auto r = solve(lp);
    if (!r.ok()) throw std::runtime_error("hull_radius: LP " + to_string(r.status));
    return r.optimum;
}

// Largest r with p + r d >= 0 componentwise.
double ratio_radius(const Vec<double>& p, const Vec<double>& d) {
    double r = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.size(); ++i)
        if (d[i] < -1e-15) r = std::min(r, std::max(0.0, p[i]) / -d[i]);
    return r;
}

bool zero_marginals(const Scenario& s, const Vec<double>& c) {
    for (int ki = 1; ki < s.corr_dim(); ++ki) {
        auto k = s.decode_corr(ki);
        int present = 0;
        for (int x : k) present += x != 0;
        if (present < s.parties() && std::abs(c[ki]) > 1e-15) return false;
    }
    return true;
}

void check_direction(const Scenario& s, const Vec<double>& d) {
    if (d.size() != s.dim()) throw std::invalid_argument("slice direction has the wrong dimension");
    CorrelatorTable t(s, corr_of(s, d));
    if (std::abs(t.c[0]) > 1e-12 || (corr_to_prob(t).p - d).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("slice direction leaves the no-signalling subspace");
}

// Halfplanes n.z <= h; radius from `o` along u.
struct Halfplane {
    Eigen::Vector2d n;
    double h;
};

double halfplane_radius(const std::vector<Halfplane>& hs, const Eigen::Vector2d& o, const Eigen::Vector2d& u) {
    double r = std::numeric_limits<double>::infinity();
    for (auto& hp : hs) {
        double nu = hp.n.dot(u);
        if (nu > 1e-14) r = std::min(r, (hp.h - hp.n.dot(o)) / nu);
    }
    return r;
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

// Edges of the convex hull (counter-clockwise, monotone chain) as halfplanes.
std::vector<Halfplane> hull_halfplanes(std::vector<Eigen::Vector2d> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    std::vector<Eigen::Vector2d> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 1e-14) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 1e-14) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    std::vector<Halfplane> hs;
    for (size_t i = 0; i < h.size(); ++i) {
        Eigen::Vector2d e = h[(i + 1) % h.size()] - h[i];
        Eigen::Vector2d n(e.y(), -e.x());
        n.normalize();
        hs.push_back({n, n.dot(h[i])});
    }
    return hs;
}

}  // namespace

BoundaryCurve slice_boundary(const SliceSpec& spec) {
    const Scenario& s = spec.center.scenario;
    if (spec.resolution < 3) throw std::invalid_argument("slice resolution must be at least 3");
    check_direction(s, spec.dir1);
    check_direction(s, spec.dir2);
    Eigen::MatrixXd D(s.dim(), 2);
    D << spec.dir1, spec.dir2;
    if (Eigen::FullPivLU<Eigen::MatrixXd>(D).rank() < 2) throw std::invalid_argument("slice directions are dependent");
    if (!is_valid(spec.center, 1e-9) || !local_membership(spec.center).inside)
        throw std::domain_error("slice center outside L");

    BoundaryCurve c;
    c.name = spec.name;
    c.x_label = spec.x_label;
    c.y_label = spec.y_label;
    c.theta = angle_grid(spec.resolution);
    const int n = spec.resolution;
    c.r_L.assign(n, 0);
    c.r_NS.assign(n, 0);
    c.r_Q_inner.assign(n, 0);
    c.r_Q_outer.assign(n, 0);

    CorrelatorTable c0(s, corr_of(s, spec.center.p));
    Vec<double> e1 = corr_of(s, spec.dir1), e2 = corr_of(s, spec.dir2);
    c.exact_inner = s == scenario_2222() && zero_marginals(s, c0.c) && zero_marginals(s, e1) && zero_marginals(s, e2);

    std::vector<Vec<double>> dets;
    for (auto& d : enumerate_deterministic(s)) dets.push_back(corr_of(s, d.p));

    std::vector<std::vector<Behaviour>> found(n);
    parallel_for(n, [&](int i) {
        double ct = std::cos(c.theta[i]), st = std::sin(c.theta[i]);
        Vec<double> dp = ct * spec.dir1 + st * spec.dir2;
        Vec<double> dc = ct * e1 + st * e2;
        c.r_NS[i] = ratio_radius(spec.center.p, dp);
        c.r_L[i] = hull_radius(dets, c0.c, dc);
        std::optional<SupportingFunctional> sup;
        c.r_Q_outer[i] = npa_max_radius(c0, dc, spec.level, c.exact_inner ? nullptr : &sup);
        if (c.exact_inner) {
            auto member = [&](double r) {
                CorrelatorTable t(s, c0.c + r * dc);
                return tlm_check(t).member;
            };
            double lo = 0, hi = c.r_NS[i];
            if (member(hi)) {
                lo = hi;
            } else {
                while (hi - lo > spec.radial_tol) {
                    double mid = 0.5 * (lo + hi);
                    (member(mid) ? lo : hi) = mid;
                }
            }
            c.r_Q_inner[i] = lo;
        } else if (sup) {
            auto r = seesaw_lower_bound(from_correlators(s, sup->w), spec.restarts, spec.seed + i);
            found[i] = r.all_optima;
        }
    });

    if (!c.exact_inner) {
        // every seesaw optimum is a qubit-realized point, so their hull with L lies inside Q
        std::vector<Vec<double>> pool = dets;
        for (auto& f : found)
            for (auto& b : f) {
                Vec<double> v = corr_of(s, b.p);
                bool dup = false;
                for (auto& q : pool) dup = dup || (q - v).cwiseAbs().maxCoeff() < 1e-9;
                if (!dup) pool.push_back(v);
            }
        parallel_for(n, [&](int i) {
            Vec<double> dc = std::cos(c.theta[i]) * e1 + std::sin(c.theta[i]) * e2;
            c.r_Q_inner[i] = hull_radius(pool, c0.c, dc);
        });
    }
    return c;
}

BoundaryCurve projection_boundary(const ProjectionSpec& spec) {
    const Scenario& s = spec.f1.scenario;
    if (spec.f2.scenario != s) throw ScenarioMismatch();
    if (spec.resolution < 3) throw std::invalid_argument("projection resolution must be at least 3");
    Eigen::MatrixXd G(s.dim(), 2);
    G << spec.f1.g, spec.f2.g;
    // constants do not count: compare the correlator parts
    Eigen::MatrixXd W(s.corr_dim() - 1, 2);
    W << correlator_coefficients(spec.f1).tail(s.corr_dim() - 1), correlator_coefficients(spec.f2).tail(s.corr_dim() - 1);
    if (Eigen::FullPivLU<Eigen::MatrixXd>(W).rank() < 2) throw std::invalid_argument("projection functionals are dependent");

    auto project = [&](const Behaviour& p) { return Eigen::Vector2d(bell_value(spec.f1, p), bell_value(spec.f2, p)); };

    BoundaryCurve c;
    c.name = spec.name;
    c.projection = true;
    c.x_label = spec.x_label;
    c.y_label = spec.y_label;
    c.origin = project(uniform(s));
    c.theta = angle_grid(spec.resolution);
    const int n = spec.resolution;

    std::vector<Eigen::Vector2d> local_pts;
    for (auto& d : enumerate_deterministic(s)) local_pts.push_back(project(d));
    auto hl = hull_halfplanes(local_pts);

    std::vector<Halfplane> hns;
    if (s == scenario_2222()) {
        std::vector<Eigen::Vector2d> v;
        for (auto& p : ns_vertices_2222()) v.push_back(project(p));
        hns = hull_halfplanes(v);
    } else {
        hns.resize(n);
        parallel_for(n, [&](int j) {
            Eigen::Vector2d u(std::cos(c.theta[j]), std::sin(c.theta[j]));
            BellFunctional f(s, u.x() * spec.f1.g + u.y() * spec.f2.g);
            hns[j] = {u, ns_bound(f).value};
        });
    }

    auto npa_halfplane = [&](const Eigen::Vector2d& u) {
        BellFunctional f(s, u.x() * spec.f1.g + u.y() * spec.f2.g);
        return Halfplane{u, npa_upper_bound(f, spec.level).optimum};
    };
    std::vector<Halfplane> hq(n);
    std::vector<std::vector<Behaviour>> found(n);
    parallel_for(n, [&](int j) {
        Eigen::Vector2d u(std::cos(c.theta[j]), std::sin(c.theta[j]));
        hq[j] = npa_halfplane(u);
        BellFunctional f(s, u.x() * spec.f1.g + u.y() * spec.f2.g);
        found[j] = seesaw_lower_bound(f, spec.restarts, spec.seed + j).all_optima;
    });
    std::vector<Eigen::Vector2d> inner = local_pts;
    for (auto& f : found)
        for (auto& b : f) inner.push_back(project(b));
    auto hi = hull_halfplanes(inner);
    // support lines along the inner edges as well, so flat pieces are not cut by grid corners
    std::vector<Halfplane> extra(hi.size());
    parallel_for(int(hi.size()), [&](int k) { extra[k] = npa_halfplane(hi[k].n); });
    hq.insert(hq.end(), extra.begin(), extra.end());

    c.r_L.resize(n);
    c.r_NS.resize(n);
    c.r_Q_inner.resize(n);
    c.r_Q_outer.resize(n);
    for (int i = 0; i < n; ++i) {
        Eigen::Vector2d u(std::cos(c.theta[i]), std::sin(c.theta[i]));
        c.r_L[i] = halfplane_radius(hl, c.origin, u);
        c.r_NS[i] = halfplane_radius(hns, c.origin, u);
        c.r_Q_inner[i] = halfplane_radius(hi, c.origin, u);
        c.r_Q_outer[i] = halfplane_radius(hq, c.origin, u);
    }
    return c;
}

BoundaryCurve projection_boundary(const BellFunctional& f1, const BellFunctional& f2, int resolution) {
    ProjectionSpec spec;
    spec.f1 = f1;
    spec.f2 = f2;
    spec.resolution = resolution;
    spec.x_label = f1.name.empty() ? "f1" : f1.name;
    spec.y_label = f2.name.empty() ? "f2" : f2.name;
    return projection_boundary(spec);
}

bool is_projection_preset(const std::string& name) { return name == "fig4"; }

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}; }

SliceSpec slice_preset(const std::string& name) {
    SliceSpec sp;
    sp.name = name;
    sp.center = zoo_behaviour("P0");
    auto dir = [&](const std::string& b) { return Vec<double>(zoo_behaviour(b).p - sp.center.p); };
    if (name == "fig2") {
        // PR and PR3 directions; the quantum slice is a disc
        sp.dir1 = dir("PR");
        sp.dir2 = dir("PR3");
        sp.resolution = 360;
        sp.radial_tol = 1e-12;
        sp.x_label = "PR";
        sp.y_label = "PR3";
    } else if (name == "fig3") {
        sp.dir1 = dir("Pdet1");
        sp.dir2 = dir("pCHSH");
        sp.level = NpaLevel::two;
        sp.x_label = "Pdet1";
        sp.y_label = "pCHSH";
    } else if (name == "fig5") {
        // x = <A0B0> = <A0B1> = <A1B0>, y = <A1B1>, unbiased marginals
        sp.dir1 = 0.5 * (dir("P_L3") + dir("PR"));
        sp.dir2 = 0.5 * (dir("P_L3") - dir("PR"));
        sp.radial_tol = 1e-12;
        sp.x_label = "alpha";
        sp.y_label = "<A1B1>";
    } else if (name == "fig6" || name == "fig7") {
        sp.dir1 = dir("PR");
        sp.dir2 = dir("hardy");
        sp.level = NpaLevel::two;
        sp.x_label = "PR";
        sp.y_label = "hardy";
    } else {
        throw std::invalid_argument("unknown slice preset '" + name + "'");
    }
    return sp;
}

ProjectionSpec projection_preset(const std::string& name) {
    if (name != "fig4") throw std::invalid_argument("unknown projection preset '" + name + "'");
    ProjectionSpec sp;
    sp.name = name;
    // x: the marginal part of B2, so that B2 = x + sqrt2 * CHSH
    auto b2 = correlator_coefficients(zoo_functional("B2"));
    Vec<double> w = Vec<double>::Zero(9);
    for (int k : {1, 2, 3, 6}) w[k] = b2[k];
    sp.f1 = from_correlators(scenario_2222(), w, "B2 marginals");
    sp.f2 = zoo_functional("B1");
    sp.level = NpaLevel::two;
    sp.x_label = "B2 marginals";
    sp.y_label = "CHSH";
    return sp;
}

std::vector<double> turn_cross_products(const BoundaryCurve& c, CurveKind which) {
    const int n = c.size();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        Eigen::Vector2d a = c.point(which, (i + n - 1) % n), b = c.point(which, i), d = c.point(which, (i + 1) % n);
        out[i] = cross(b - a, d - b);
    }
    return out;
}

namespace {

double collinear_residual(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& d) {
    Eigen::Vector2d e = d - a;
    double len = e.norm();
    if (len < 1e-300) return (b - a).norm();
    return std::abs(cross(e, b - a)) / len;
}

// Slope mismatch where a flat segment ending at `end` (direction u) meets the arc `arc` (at least 4 points).
// Fits the arc's offset from the line by a cubic in the line coordinate, finds where it comes closest to
// the line between `end` and the first arc point and compares slopes there.
std::pair<double, Eigen::Vector2d> join_mismatch(const Eigen::Vector2d& end, const Eigen::Vector2d& u,
                                                 const std::vector<Eigen::Vector2d>& arc) {
    Eigen::Vector2d nrm(-u.y(), u.x());
    Eigen::Matrix4d V;
    Eigen::Vector4d y;
    for (int k = 0; k < 4; ++k) {
        double t = u.dot(arc[k] - end);
        V.row(k) << 1, t, t * t, t * t * t;
        y[k] = nrm.dot(arc[k] - end);
    }
    Eigen::Vector4d a = V.colPivHouseholderQr().solve(y);
    double t1 = u.dot(arc[0] - end);
    double best_t = 0, best = std::numeric_limits<double>::infinity();
    const int steps = 4000;
    for (int k = 0; k <= steps; ++k) {
        double t = -0.5 * t1 + 1.5 * t1 * k / steps;
        double v = std::abs(a[0] + t * (a[1] + t * (a[2] + t * a[3])));
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    double slope = a[1] + best_t * (2 * a[2] + 3 * best_t * a[3]);
    return {std::abs(slope), end + best_t * u};
}

}  // namespace

std::vector<BoundaryFeature> kink_detect(const BoundaryCurve& c, const KinkOptions& opt) {
    return kink_detect(c, c.exact_inner ? CurveKind::q_inner : CurveKind::q_outer, opt);
}

std::vector<BoundaryFeature> kink_detect(const BoundaryCurve& c, CurveKind which, const KinkOptions& opt) {
    const int n = c.size();
    if (n < 8) throw std::invalid_argument("kink_detect: too few samples");
    std::vector<Eigen::Vector2d> P(n);
    for (int i = 0; i < n; ++i) P[i] = c.point(which, i);
    auto at = [&](int i) { return P[((i % n) + n) % n]; };
    std::vector<bool> col(n);
    for (int i = 0; i < n; ++i) col[i] = collinear_residual(at(i - 1), at(i), at(i + 1)) < opt.collinear_tol;

    std::vector<BoundaryFeature> out;
    int start = -1;
    for (int i = 0; i < n; ++i)
        if (!col[i]) {
            start = i;
            break;
        }
    if (start < 0) return out;  // degenerate: every sample on one line

    // maximal runs [s, e] of collinear-centred samples; the segment spans s-1 .. e+1
    struct Run {
        int s, e;
    };
    std::vector<Run> runs;
    for (int k = 1; k <= n; ++k) {
        int i = start + k;
        if (col[i % n] && !col[(i - 1) % n]) runs.push_back({i, i});
        if (col[i % n]) runs.back().e = i;
    }
    auto angle_of = [&](const Eigen::Vector2d& p) {
        double th = std::atan2(p.y() - c.origin.y(), p.x() - c.origin.x());
        return th < 0 ? th + 2 * M_PI : th;
    };
    auto is_seg_end = [&](int idx, bool at_start) {
        for (auto& r : runs)
            if (((at_start ? r.s - 1 : r.e + 1) - idx) % n == 0) return true;
        return false;
    };
    for (auto& r : runs) {
        int a = r.s - 1, b = r.e + 1;
        BoundaryFeature f{FeatureType::flat_segment};
        f.point = at(a);
        f.end = at(b);
        f.theta = c.theta[((a % n) + n) % n];
        f.theta_end = c.theta[b % n];
        out.push_back(f);
        Eigen::Vector2d u = (at(b) - at(a)).normalized();
        // forward end at b, backward end at a
        for (int side = 0; side < 2; ++side) {
            int idx = side == 0 ? b : a;
            int step = side == 0 ? 1 : -1;
            Eigen::Vector2d dir = side == 0 ? u : Eigen::Vector2d(-u);
            BoundaryFeature j{FeatureType::kink};
            j.point = at(idx);
            if (is_seg_end(idx, side == 0)) {
                // two flat segments meet at a sample
                Eigen::Vector2d v = (at(idx + 2 * step) - at(idx)).normalized();
                j.slope_mismatch = std::abs(cross(dir, v));
            } else {
                std::vector<Eigen::Vector2d> arc;
                for (int k = 1; k <= 4; ++k) arc.push_back(at(idx + k * step));
                auto [mm, pt] = join_mismatch(at(idx), dir, arc);
                j.slope_mismatch = mm;
                j.point = pt;
                if (mm < opt.slope_tol) j.type = FeatureType::smooth_join;
            }
            j.theta = angle_of(j.point);
            // a corner shared by two segments is reported once, from the segment that ends there
            if (side == 1 && is_seg_end(idx, false)) continue;
            out.push_back(j);
        }
    }
    return out;
}

std::string emit_csv(const BoundaryCurve& c) {
    std::string s = "theta,r_L,r_Q_inner,r_Q_outer,r_NS\n";
    char buf[256];
    for (int i = 0; i < c.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", c.theta[i], c.r_L[i], c.r_Q_inner[i],
                      c.r_Q_outer[i], c.r_NS[i]);
        s += buf;
    }
    return s;
}

std::string emit_svg(const BoundaryCurve& c) {
    const double size = 600, pad = 40;
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (auto k : {CurveKind::local, CurveKind::q_inner, CurveKind::q_outer, CurveKind::ns})
        for (int i = 0; i < c.size(); ++i) {
            auto p = c.point(k, i);
            lo_x = std::min(lo_x, p.x());
            hi_x = std::max(hi_x, p.x());
            lo_y = std::min(lo_y, p.y());
            hi_y = std::max(hi_y, p.y());
        }
    double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    double scale = (size - 2 * pad) / span;
    auto X = [&](double x) { return pad + (x - lo_x) * scale; };
    auto Y = [&](double y) { return size - pad - (y - lo_y) * scale; };
    char buf[256];
    std::string s;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  size, size + 60, size, size + 60);
    s += buf;
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    struct Style {
        CurveKind k;
        const char* color;
        const char* dash;
        const char* label;
    };
    const Style styles[] = {{CurveKind::ns, "black", "", "NS"},
                            {CurveKind::q_outer, "darkorange", "6,3", "Q outer"},
                            {CurveKind::q_inner, "seagreen", "", "Q inner"},
                            {CurveKind::local, "royalblue", "", "L"}};
    for (auto& st : styles) {
        s += "<polygon fill=\"none\" stroke=\"";
        s += st.color;
        s += "\" stroke-width=\"1.5\"";
        if (*st.dash) s += std::string(" stroke-dasharray=\"") + st.dash + "\"";
        s += " points=\"";
        for (int i = 0; i < c.size(); ++i) {
            auto p = c.point(st.k, i);
            std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", X(p.x()), Y(p.y()));
            s += buf;
        }
        s += "\"/>\n";
    }
    double ly = size + 10;
    for (int i = 0; i < 4; ++i) {
        double lx = pad + i * 130;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"%s\" stroke-width=\"2\"%s/>\n"
                      "<text x=\"%.0f\" y=\"%.0f\" font-size=\"14\" font-family=\"sans-serif\">%s</text>\n",
                      lx, ly + 10, lx + 30, ly + 10, styles[i].color,
                      *styles[i].dash ? (std::string(" stroke-dasharray=\"") + styles[i].dash + "\"").c_str() : "",
                      lx + 36, ly + 15, styles[i].label);
        s += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.0f\" y=\"%.0f\" font-size=\"13\" font-family=\"sans-serif\">%s: x = %s, y = %s</text>\n",
                  pad, ly + 40, c.name.c_str(), c.x_label.c_str(), c.y_label.c_str());
    s += buf;
    s += "</svg>\n";
    return s;
}

std::string emit_json(const BoundaryCurve& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["projection"] = c.projection;
    j["exact_inner"] = c.exact_inner;
    j["origin"] = {c.origin.x(), c.origin.y()};
    j["x_label"] = c.x_label;
    j["y_label"] = c.y_label;
    j["theta"] = c.theta;
    j["r_L"] = c.r_L;
    j["r_Q_inner"] = c.r_Q_inner;
    j["r_Q_outer"] = c.r_Q_outer;
    j["r_NS"] = c.r_NS;
    return j.dump(1);
}

BoundaryCurve curve_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    BoundaryCurve c;
    c.name = j.at("name").get<std::string>();
    c.projection = j.at("projection").get<bool>();
    c.exact_inner = j.at("exact_inner").get<bool>();
    c.origin = Eigen::Vector2d(j.at("origin")[0].get<double>(), j.at("origin")[1].get<double>());
    c.x_label = j.at("x_label").get<std::string>();
    c.y_label = j.at("y_label").get<std::string>();
    c.theta = j.at("theta").get<std::vector<double>>();
    c.r_L = j.at("r_L").get<std::vector<double>>();
    c.r_Q_inner = j.at("r_Q_inner").get<std::vector<double>>();
    c.r_Q_outer = j.at("r_Q_outer").get<std::vector<double>>();
    c.r_NS = j.at("r_NS").get<std::vector<double>>();
    const size_t n = c.theta.size();
    if (c.r_L.size() != n || c.r_Q_inner.size() != n || c.r_Q_outer.size() != n || c.r_NS.size() != n)
        throw std::invalid_argument("curve json: column lengths differ");
    return c;
}

void emit(const BoundaryCurve& c, const std::string& path) {
    auto ext = path.substr(path.find_last_of('.') + 1);
    std::string text;
    if (ext == "csv")
        text = emit_csv(c);
    else if (ext == "svg")
        text = emit_svg(c);
    else if (ext == "json")
        text = emit_json(c);
    else
        throw std::invalid_argument("emit: unknown extension '" + ext + "'");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit: cannot write " + path);
    f << text;
}

}  // namespace bellgeom
