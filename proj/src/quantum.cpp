#include "bellgeom/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellgeom {

double tlm_lhs(double e00, double e01, double e10, double e11) {
    auto root = [](double e) { return std::sqrt(std::max(0.0, 1 - e * e)); };
    return 1 + e00 * e01 * e10 * e11 + root(e00) * root(e01) * root(e10) * root(e11) -
           0.5 * (e00 * e00 + e01 * e01 + e10 * e10 + e11 * e11);
}

TlmResult tlm_check(const CorrelatorTable& c, double tol) {
    if (c.scenario != scenario_2222()) throw ScenarioMismatch();
    for (int k : {1, 2, 3, 6})
        if (std::abs(c.c[k]) > 1e-12) throw std::invalid_argument("tlm_check: marginals must vanish");
    for (int k : {4, 5, 7, 8})
        if (std::abs(c.c[k]) > 1 + 1e-12) throw std::invalid_argument("tlm_check: correlator outside [-1, 1]");
    TlmResult r;
    r.lhs = tlm_lhs(c.c[4], c.c[5], c.c[7], c.c[8]);
    r.member = r.lhs >= -tol;
    return r;
}

namespace {

Word normal_word(const Word& w) {
    Word s = w;
    std::stable_sort(s.begin(), s.end(), [](const Letter& a, const Letter& b) { return a.party < b.party; });
    Word out;
    for (auto& l : s) {
        if (!out.empty() && out.back() == l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

}  // namespace

NcPoly nc_normal(const NcPoly& p) {
    NcPoly out;
    for (auto& [w, c] : p) out[normal_word(w)] += c;
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

NcPoly nc_mul(const NcPoly& a, const NcPoly& b) {
    NcPoly out;
    for (auto& [wa, ca] : a)
        for (auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out[normal_word(w)] += ca * cb;
        }
    return nc_normal(out);
}

NcPoly nc_adjoint(const NcPoly& a) {
    NcPoly out;
    for (auto& [w, c] : a) out[normal_word(Word(w.rbegin(), w.rend()))] += c;
    return nc_normal(out);
}

NcPoly nc_add(const NcPoly& a, const NcPoly& b, const Rational& scale) {
    NcPoly out = a;
    for (auto& [w, c] : b) out[w] += scale * c;
    return nc_normal(out);
}

NcPoly nc_letter(int party, int input, const Rational& coef) { return NcPoly{{Word{{party, input}}, coef}}; }

SosReport verify_sos(const std::vector<NcPoly>& V, const Rational& weight, const NcPoly& target) {
    SosReport rep;
    NcPoly sum;
    for (auto& v : V) sum = nc_add(sum, nc_mul(nc_adjoint(v), v));
    for (auto& [w, c] : sum) rep.expansion[w] = weight * c;
    rep.expansion = nc_normal(rep.expansion);
    NcPoly diff = nc_add(rep.expansion, target, -1);
    for (auto& [w, c] : diff) rep.residual.push_back({word_string(w), c});
    rep.ok = rep.residual.empty();
    return rep;
}

std::vector<NcPoly> b6_sos_terms() {
    auto A = [](int x, int s = 1) { return nc_letter(0, x, s); };
    auto B = [](int y, int s = 1) { return nc_letter(1, y, s); };
    auto sum = [](std::initializer_list<NcPoly> ps) {
        NcPoly out;
        for (auto& p : ps) out = nc_add(out, p);
        return out;
    };
    return {sum({A(0), A(1), B(0, -1), B(1, -1)}), sum({A(0), A(1, -1), B(2, -1)}), sum({A(2), B(0, -1), B(1)})};
}

NcPoly b6_shifted_operator() {
    // W = A0(B0 + B1 + B2) + A1(B0 + B1 - B2) + A2(B0 - B1)
    const int sign[3][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}};
    NcPoly p{{Word{}, Rational(5)}};
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (sign[x][y]) p[normal_word(Word{{0, x}, {1, y}})] -= sign[x][y];
    return nc_normal(p);
}

SosReport verify_sos_b6() { return verify_sos(b6_sos_terms(), Rational(1, 2), b6_shifted_operator()); }

BellFunctional b6_functional() {
    Scenario s({3, 3});
    const int sign[3][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}};
    Vec<double> w = Vec<double>::Zero(s.corr_dim());
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) w[s.encode_corr({x + 1, y + 1})] = sign[x][y];
    return from_correlators(s, w, "B6");
}

QubitRealization b6_realization(double alpha) {
    QubitRealization r;
    r.state = Eigen::VectorXcd::Zero(4);
    r.state[1] = 1 / std::sqrt(2.0);
    r.state[2] = -1 / std::sqrt(2.0);
    const double h = std::sqrt(3.0) / 2, ca = std::cos(alpha), sa = std::sin(alpha);
    r.bloch = {{Eigen::Vector3d(h, ca / 2, sa / 2), Eigen::Vector3d(h, -ca / 2, -sa / 2), Eigen::Vector3d(0, 1, 0)},
               {Eigen::Vector3d(-h, -0.5, 0), Eigen::Vector3d(-h, 0.5, 0), Eigen::Vector3d(0, -ca, -sa)}};
    return r;
}

Behaviour b6_family(double alpha) { return realization_to_behaviour(b6_realization(alpha), Scenario({3, 3})); }

}  // namespace bellgeom
