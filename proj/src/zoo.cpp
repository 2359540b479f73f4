#include "bellgeom/zoo.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bellgeom/faces.hpp"
#include "bellgeom/polytope.hpp"

namespace bellgeom {

double Radical::value() const {
    using F = boost::multiprecision::cpp_dec_float_50;
    F v = F(a) + F(b) * boost::multiprecision::sqrt(F(d));
    return static_cast<double>(v);
}

std::string Radical::str() const {
    if (b.is_zero() || d == 1) return Rational(a + b * d).str();
    std::string s = a.is_zero() ? "" : a.str() + (b.sign() > 0 ? "+" : "");
    return s + b.str() + "*sqrt(" + std::to_string(d) + ")";
}

namespace {

Radical R(Rational a) { return {a, 0, 1}; }
Radical R2(Rational a, Rational b) { return {a, b, 2}; }
Radical R5(Rational a, Rational b) { return {a, b, 5}; }

Vec<double> values(const std::vector<Radical>& r) {
    Vec<double> v(r.size());
    for (size_t i = 0; i < r.size(); ++i) v[i] = r[i].value();
    return v;
}

NamedObject behaviour_obj(std::string name, Scenario s, std::vector<Radical> t, std::string desc) {
    NamedObject o;
    o.name = std::move(name);
    o.kind = Kind::behaviour;
    o.scenario = s;
    o.exact = std::move(t);
    o.behaviour = corr_to_prob(CorrelatorTable(s, values(o.exact)));
    o.description = std::move(desc);
    return o;
}

NamedObject functional_obj(std::string name, Scenario s, std::vector<Radical> t, Bounds b, std::string desc) {
    NamedObject o;
    o.name = name;
    o.kind = Kind::functional;
    o.scenario = s;
    o.exact = std::move(t);
    o.functional = from_correlators(s, values(o.exact), name);
    o.bounds = b;
    o.description = std::move(desc);
    return o;
}

// 2222 table from 8 integers/radicals [B0, B1; A0, A0B0, A0B1; A1, A1B0, A1B1] with leading 1.
std::vector<Radical> tab(Radical b0, Radical b1, Radical a0, Radical e00, Radical e01, Radical a1, Radical e10,
                         Radical e11, Radical corner = R(1)) {
    return {corner, b0, b1, a0, e00, e01, a1, e10, e11};
}

std::vector<Radical> det_table(int a0, int a1, int b0, int b1) {
    return tab(R(b0), R(b1), R(a0), R(a0 * b0), R(a0 * b1), R(a1), R(a1 * b0), R(a1 * b1));
}

std::vector<Radical> corr_only(Radical e00, Radical e01, Radical e10, Radical e11, Radical corner = R(1)) {
    return tab(R(0), R(0), R(0), e00, e01, R(0), e10, e11, corner);
}

// Tripartite correlator table from a callback on k = (kA, kB, kC).
template <class F>
std::vector<Radical> tri_table(const Scenario& s, F f) {
    std::vector<Radical> t(s.corr_dim(), R(0));
    for (int ki = 0; ki < s.corr_dim(); ++ki) t[ki] = f(s.decode_corr(ki));
    return t;
}

std::map<std::string, NamedObject> build_zoo() {
    std::map<std::string, NamedObject> z;
    auto add = [&](NamedObject o) { z.emplace(o.name, std::move(o)); };
    const Scenario s2 = scenario_2222();
    const Radical h = R2(0, Rational(1, 2));  // 1/sqrt2
    const Radical mh = R2(0, Rational(-1, 2));

    add(behaviour_obj("P0", s2, corr_only(R(0), R(0), R(0), R(0)), "maximally mixed point"));
    add(behaviour_obj("pCHSH", s2, corr_only(h, h, h, mh), "Tsirelson point, unique quantum CHSH maximizer"));
    add(behaviour_obj("PR", s2, corr_only(R(1), R(1), R(1), R(-1)), "Popescu-Rohrlich box"));
    add(behaviour_obj("PR1", s2, corr_only(R(1), R(1), R(1), R(-1)), "PR box variant 1"));
    add(behaviour_obj("PR2", s2, corr_only(R(-1), R(-1), R(-1), R(1)), "PR box variant 2"));
    add(behaviour_obj("PR3", s2, corr_only(R(-1), R(1), R(1), R(1)), "PR box variant 3"));
    add(behaviour_obj("PR4", s2, corr_only(R(1), R(-1), R(-1), R(-1)), "PR box variant 4"));
    add(behaviour_obj("Pdet1", s2, det_table(1, 1, 1, 1), "deterministic, all outputs 0"));
    add(behaviour_obj("Pdet2", s2, det_table(-1, -1, -1, -1), "deterministic, all outputs 1"));
    add(behaviour_obj("Pdet3", s2, det_table(-1, -1, -1, 1), "deterministic point on the B3 face"));
    add(behaviour_obj("Pdet4", s2, det_table(-1, 1, -1, -1), "Pdet3 with parties swapped"));
    add(behaviour_obj("Pdet5", s2, det_table(1, 1, 1, -1), "deterministic point on the Hardy face"));
    add(behaviour_obj("Pdet6", s2, det_table(1, -1, 1, 1), "deterministic point on the Hardy face"));
    add(behaviour_obj("Pdet7", s2, det_table(-1, 1, 1, -1), "deterministic point on the Hardy face"));
    add(behaviour_obj("Pdet8", s2, det_table(1, -1, -1, 1), "deterministic point on the Hardy face"));
    {
        Radical m = R5(5, -2), n = R5(-2, 1);
        add(behaviour_obj("hardy", s2, tab(m, n, m, R5(-13, 6), R5(-6, 3), n, R5(-6, 3), R5(-5, 2)),
                          "Hardy point, extremal but not exposed"));
    }
    add(behaviour_obj("P_NE", s2, corr_only(R(Rational(1, 2)), R(Rational(1, 2)), R(Rational(1, 2)), R(-1)),
                      "non-exposed point of the unbiased-marginal slice"));
    {
        Radical t = R(Rational(-1, 3));
        add(behaviour_obj("P_L1", s2, tab(t, t, t, t, t, t, t, t), "local point of the B2 slice"));
    }
    add(behaviour_obj("P_L2", s2, corr_only(R(Rational(1, 3)), R(Rational(1, 3)), R(Rational(1, 3)), R(-1)),
                      "local point of the symmetric slice"));
    add(behaviour_obj("P_L3", s2, corr_only(R(1), R(1), R(1), R(1)), "local point of the symmetric slice"));
    {
        // (1 + 2 sqrt5)/19 Pdet1 + (9 - sqrt5)/38 (Pdet5 + Pdet6 + Pdet7 + Pdet8)
        Radical p{Rational(1, 19), Rational(2, 19), 5}, q{Rational(9, 38), Rational(-1, 38), 5};
        std::vector<std::vector<Radical>> dets = {det_table(1, 1, 1, 1), det_table(1, 1, 1, -1), det_table(1, -1, 1, 1),
                                                  det_table(-1, 1, 1, -1), det_table(1, -1, -1, 1)};
        std::vector<Radical> t(9, R5(0, 0));
        for (int i = 0; i < 9; ++i) {
            Rational sa = p.a * dets[0][i].a, sb = p.b * dets[0][i].a;
            for (int j = 1; j < 5; ++j) {
                sa += q.a * dets[j][i].a;
                sb += q.b * dets[j][i].a;
            }
            t[i] = R5(sa, sb);
        }
        add(behaviour_obj("P_L4", s2, t, "local point on the PR-Hardy line with CHSH value 2"));
    }

    add(functional_obj("B1", s2, corr_only(R(1), R(1), R(1), R(-1), R(0)), {2, 2 * std::sqrt(2.0), 4}, "CHSH"));
    {
        Radical s = R2(0, 1), ms = R2(0, -1), t = R2(1, -1), ut = R2(-1, 1);
        add(functional_obj("B2", s2, tab(t, R(1), t, s, s, R(1), s, ms, R(0)), {4, 4, 4 * std::sqrt(2.0)},
                           "flat face through pCHSH and Pdet1"));
        add(functional_obj("B2*", s2, tab(ut, R(-1), ut, s, s, R(-1), s, ms, R(0)), {4, 4, 4 * std::sqrt(2.0)},
                           "B2 with all outcomes flipped"));
    }
    add(functional_obj("B4", s2, corr_only(R(0), R(0), R(0), R(-1), R(0)), {1, 1, 1}, "-<A1B1>"));
    add(functional_obj("B5", s2, corr_only(R(1), R(1), R(0), R(0), R(0)), {2, 2, 2}, "<A0B0> + <A0B1>"));
    add(functional_obj("B_4d", s2, corr_only(R(1), R(1), R(1), R(1), R(0)), {4, 4, 4},
                       "sum of all correlators, face is a line"));
    add(functional_obj("B_pos", s2, tab(R(0), R(1), R(0), R(0), R(0), R(1), R(0), R(-1), R(0)), {1, 1, 1},
                       "positivity of P(11|11)"));
    add(functional_obj("B_hardyfam", s2, tab(R(1), R(0), R(1), R(0), R(1), R(0), R(1), R(-1), R(0)), {3, 3, 3},
                       "Hardy family with a1 = a2 = a3 = 1"));
    {
        Scenario s({3, 3});
        const int sign[3][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}};
        std::vector<Radical> t(s.corr_dim(), R(0));
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) t[s.encode_corr({x + 1, y + 1})] = R(sign[x][y]);
        add(functional_obj("B6", s, t, {4, 5, 8}, "correlation part of I3322"));
    }
    {
        Scenario s({2, 2, 1});
        auto t = tri_table(s, [](const std::vector<int>& k) {
            if (k[0] && k[1] && k[2]) return R(((k[0] - 1) & (k[1] - 1)) ? -1 : 1);
            return R(0);
        });
        add(functional_obj("B7_mod", s, t, {2, 2 * std::sqrt(2.0), 4}, "CHSH modulated by Charlie"));
    }
    {
        Scenario s({2, 2, 2});
        auto t = tri_table(s, [](const std::vector<int>& k) {
            if (!(k[0] && k[1] && k[2])) return R(0);
            int x = k[0] - 1, y = k[1] - 1, z = k[2] - 1;
            if (z != y) return R(0);
            return R((x & y) ? -1 : 1);
        });
        add(functional_obj("B8_ww", s, t, {2, 2 * std::sqrt(2.0), 4}, "Werner-Wolf functional"));
        auto m = tri_table(s, [](const std::vector<int>& k) {
            if (!(k[0] && k[1] && k[2])) return R(0);
            int x = k[0] - 1, y = k[1] - 1, z = k[2] - 1;
            if ((x + y + z) % 2 == 0) return R(0);
            return R(x + y + z == 3 ? -1 : 1);
        });
        add(functional_obj("Mermin", s, m, {2, 4, 4}, "tripartite Mermin functional"));
    }
    return z;
}

const std::map<std::string, NamedObject>& zoo() {
    static const auto z = build_zoo();
    return z;
}

}  // namespace

const NamedObject& named(const std::string& name) {
    auto it = zoo().find(name);
    if (it == zoo().end()) throw UnknownName(name);
    return it->second;
}

std::vector<std::string> zoo_names() {
    std::vector<std::string> out;
    for (auto& [k, v] : zoo()) out.push_back(k);
    return out;
}

Behaviour zoo_behaviour(const std::string& name) {
    auto& o = named(name);
    if (!o.behaviour) throw std::invalid_argument("'" + name + "' is not a behaviour");
    return *o.behaviour;
}

BellFunctional zoo_functional(const std::string& name) {
    auto& o = named(name);
    if (!o.functional) throw std::invalid_argument("'" + name + "' is not a functional");
    return *o.functional;
}

BellFunctional b3_functional(double a, double c) {
    return functional_2222({0, -a, 1, -a, c, c, 1, c, -(c + 1 - 2 * a)}, "B3");
}

Bounds b3_bounds(double a, double c) { return {2 * c + 1, 2 * c + 1, 4 * c + 1 - 2 * a}; }

double b3_region(double a, double c) {
    double lhs = (c - 2 * a + 1) * (2 * a * a * a - 3 * a * a + (3 * a - 1) * c * c - 5 * (a - 1) * a * c - c * c * c);
    double q = -2 * a * a + 3 * (a - 1) * c + a + c * c;
    return lhs - a * a / (4 * c * c) * q * q;
}

double b3_cmax(double a) {
    if (!(a > 0 && a < 1)) throw std::domain_error("b3_cmax: a must lie in (0, 1)");
    // c = a is always a root; scan down from 2 for the last sign change
    const int n = 20000;
    double hi = 2, fhi = b3_region(a, hi);
    double lo = hi;
    bool found = false;
    for (int i = n - 1; i >= 0; --i) {
        double c = a + (2 - a) * (i + 0.5) / n;
        double fc = b3_region(a, c);
        if ((fc >= 0) != (fhi >= 0)) {
            lo = c;
            found = true;
            break;
        }
        hi = c;
        fhi = fc;
    }
    if (!found) throw std::domain_error("b3_cmax: no bracket found");
    double flo = b3_region(a, lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi), fm = b3_region(a, mid);
        if ((fm >= 0) == (flo >= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

B3Maximizer b3_nonlocal_maximizer(double a, int restarts, std::uint64_t seed) {
    B3Maximizer m;
    m.a = a;
    m.c = b3_cmax(a);
    auto f = b3_functional(m.a, m.c);
    SeesawOptions opt;
    opt.optimum_tol = 1e-6;
    auto res = seesaw_lower_bound(f, restarts, seed, opt);
    m.beta_q = res.value;
    double best = 2 + 1e-6;
    for (size_t i = 0; i < res.all_optima.size(); ++i) {
        double chsh = max_chsh(res.all_optima[i]).second;
        if (chsh > best) {
            best = chsh;
            m.found = true;
            m.beta_chsh = chsh;
            m.realization = res.optima_realizations[i];
            m.behaviour = res.all_optima[i];
        }
    }
    if (m.found) {
        m.lambda = schmidt_lambda(m.realization.state);
        m.phi = observable_angle(m.realization, 0);
        m.phi_bob = observable_angle(m.realization, 1);
    }
    return m;
}

}  // namespace bellgeom
