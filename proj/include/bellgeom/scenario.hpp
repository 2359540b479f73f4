#pragma once
// Bell scenarios with binary outcomes, behaviours, correlator tables and functionals.
//
// Behaviour vectors are indexed P[x][a]: input tuple x (mixed radix, party 0
// slowest) times output tuple a (binary, party 0 most significant).
// Correlator vectors are indexed by k with k_i in {0..m_i}: k_i = 0 means party
// i is absent, k_i = x+1 means observable x of party i. Entry 0 is the constant.

#include <Eigen/Core>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellgeom {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

class Scenario {
public:
    Scenario() = default;
    explicit Scenario(std::vector<int> inputs, std::vector<int> outputs = {});

    int parties() const { return int(inputs_.size()); }
    const std::vector<int>& inputs() const { return inputs_; }
    int inputs(int party) const { return inputs_[party]; }

    int input_tuples() const { return n_in_; }
    int output_tuples() const { return 1 << parties(); }
    int dim() const { return n_in_ * output_tuples(); }
    int corr_dim() const { return n_corr_; }

    int index(int xi, int ai) const { return xi * output_tuples() + ai; }
    std::vector<int> decode_input(int xi) const;
    int encode_input(const std::vector<int>& x) const;
    int output_bit(int ai, int party) const { return (ai >> (parties() - 1 - party)) & 1; }

    std::vector<int> decode_corr(int ki) const;
    int encode_corr(const std::vector<int>& k) const;

    std::string name() const;  // e.g. "2222", "3322", "222-222-122"

    friend bool operator==(const Scenario& a, const Scenario& b) { return a.inputs_ == b.inputs_; }
    friend bool operator!=(const Scenario& a, const Scenario& b) { return !(a == b); }

private:
    std::vector<int> inputs_;
    int n_in_ = 0, n_corr_ = 0;
};

inline Scenario scenario_2222() { return Scenario({2, 2}); }

struct ScenarioMismatch : std::invalid_argument {
    ScenarioMismatch() : std::invalid_argument("scenario mismatch") {}
};

template <class S>
struct BehaviourT {
    Scenario scenario;
    Vec<S> p;

    BehaviourT() = default;
    BehaviourT(Scenario s, Vec<S> v) : scenario(std::move(s)), p(std::move(v)) {}

    const S& operator()(int xi, int ai) const { return p[scenario.index(xi, ai)]; }
    S& operator()(int xi, int ai) { return p[scenario.index(xi, ai)]; }
};
using Behaviour = BehaviourT<double>;

template <class S>
struct CorrelatorTableT {
    Scenario scenario;
    Vec<S> c;

    CorrelatorTableT() = default;
    CorrelatorTableT(Scenario s, Vec<S> v) : scenario(std::move(s)), c(std::move(v)) {}
    explicit CorrelatorTableT(Scenario s) : scenario(std::move(s)), c(Vec<S>::Zero(scenario.corr_dim())) {
        c[0] = S(1);
    }

    const S& operator[](const std::vector<int>& k) const { return c[scenario.encode_corr(k)]; }
    S& operator[](const std::vector<int>& k) { return c[scenario.encode_corr(k)]; }
};
using CorrelatorTable = CorrelatorTableT<double>;

// Linear functional, stored in the probability basis.
template <class S>
struct BellFunctionalT {
    Scenario scenario;
    Vec<S> g;
    std::string name;

    BellFunctionalT() = default;
    BellFunctionalT(Scenario s, Vec<S> v, std::string n = {})
        : scenario(std::move(s)), g(std::move(v)), name(std::move(n)) {}
};
using BellFunctional = BellFunctionalT<double>;

// Sign (-1)^{sum of a_i over parties present in k}.
inline int corr_sign(const Scenario& s, const std::vector<int>& k, int ai) {
    int par = 0;
    for (int i = 0; i < s.parties(); ++i)
        if (k[i] != 0) par ^= s.output_bit(ai, i);
    return par ? -1 : 1;
}

inline bool compatible(const std::vector<int>& k, const std::vector<int>& x) {
    for (size_t i = 0; i < k.size(); ++i)
        if (k[i] != 0 && k[i] != x[i] + 1) return false;
    return true;
}

// P(a|x) = 2^{-n} sum_k (-1)^{a_S} c[k] over k compatible with x.
template <class S>
BehaviourT<S> corr_to_prob(const CorrelatorTableT<S>& t) {
    const Scenario& s = t.scenario;
    Vec<S> p = Vec<S>::Zero(s.dim());
    const S scale = S(1) / S(s.output_tuples());
    for (int xi = 0; xi < s.input_tuples(); ++xi) {
        auto x = s.decode_input(xi);
        for (int ki = 0; ki < s.corr_dim(); ++ki) {
            auto k = s.decode_corr(ki);
            if (!compatible(k, x)) continue;
            for (int ai = 0; ai < s.output_tuples(); ++ai) {
                if (corr_sign(s, k, ai) > 0)
                    p[s.index(xi, ai)] += t.c[ki];
                else
                    p[s.index(xi, ai)] -= t.c[ki];
            }
        }
    }
    for (int i = 0; i < p.size(); ++i) p[i] *= scale;
    return {s, p};
}

// Correlators averaged over the inputs of absent parties (exact for NS points).
template <class S>
CorrelatorTableT<S> prob_to_corr_unchecked(const BehaviourT<S>& b) {
    const Scenario& s = b.scenario;
    Vec<S> c = Vec<S>::Zero(s.corr_dim());
    for (int ki = 0; ki < s.corr_dim(); ++ki) {
        auto k = s.decode_corr(ki);
        int count = 0;
        S acc(0);
        for (int xi = 0; xi < s.input_tuples(); ++xi) {
            auto x = s.decode_input(xi);
            if (!compatible(k, x)) continue;
            ++count;
            for (int ai = 0; ai < s.output_tuples(); ++ai) {
                if (corr_sign(s, k, ai) > 0)
                    acc += b(xi, ai);
                else
                    acc -= b(xi, ai);
            }
        }
        c[ki] = acc / S(count);
    }
    return {s, c};
}

struct NsReport {
    bool ok;
    double max_violation;
};
NsReport check_no_signalling(const Behaviour& p, double tol = 1e-9);

struct SignallingError : std::invalid_argument {
    explicit SignallingError(double v);
    double violation;
};

// Rejects behaviours whose marginals depend on remote inputs by more than 1e-9.
CorrelatorTable prob_to_corr(const Behaviour& p);

struct NegativeCell {
    std::vector<int> a, x;
    double value;
};
// Cells with P < -tol, i.e. evidence that a correlator table lies outside NS.
std::vector<NegativeCell> negative_cells(const Behaviour& p, double tol = 1e-12);
double normalisation_error(const Behaviour& p);
bool is_valid(const Behaviour& p, double tol = 1e-12);

std::vector<Behaviour> enumerate_deterministic(const Scenario& s);
// Deterministic point from per-party output functions out[i][x].
Behaviour deterministic(const Scenario& s, const std::vector<std::vector<int>>& out);

Behaviour uniform(const Scenario& s);

// Correlator-basis coefficients w (w[0] = constant term) -> probability basis.
template <class S>
BellFunctionalT<S> from_correlators(const Scenario& s, const Vec<S>& w, std::string name = {}) {
    Vec<S> g = Vec<S>::Zero(s.dim());
    for (int ki = 0; ki < s.corr_dim(); ++ki) {
        if (w[ki] == S(0)) continue;
        auto k = s.decode_corr(ki);
        int n_compat = 1;
        for (int i = 0; i < s.parties(); ++i)
            if (k[i] == 0) n_compat *= s.inputs(i);
        S share = w[ki] / S(n_compat);
        for (int xi = 0; xi < s.input_tuples(); ++xi) {
            auto x = s.decode_input(xi);
            if (!compatible(k, x)) continue;
            for (int ai = 0; ai < s.output_tuples(); ++ai) {
                if (corr_sign(s, k, ai) > 0)
                    g[s.index(xi, ai)] += share;
                else
                    g[s.index(xi, ai)] -= share;
            }
        }
    }
    return {s, g, std::move(name)};
}

// Correlator view: w[k] = 2^{-n} sum over compatible (x, a) of g(x,a) (-1)^{a_S}.
template <class S>
Vec<S> correlator_coefficients(const BellFunctionalT<S>& f) {
    const Scenario& s = f.scenario;
    Vec<S> w = Vec<S>::Zero(s.corr_dim());
    for (int ki = 0; ki < s.corr_dim(); ++ki) {
        auto k = s.decode_corr(ki);
        S acc(0);
        for (int xi = 0; xi < s.input_tuples(); ++xi) {
            auto x = s.decode_input(xi);
            if (!compatible(k, x)) continue;
            for (int ai = 0; ai < s.output_tuples(); ++ai) {
                if (corr_sign(s, k, ai) > 0)
                    acc += f.g[s.index(xi, ai)];
                else
                    acc -= f.g[s.index(xi, ai)];
            }
        }
        w[ki] = acc / S(s.output_tuples());
    }
    return w;
}

template <class S>
S bell_value(const BellFunctionalT<S>& f, const BehaviourT<S>& p) {
    if (f.scenario != p.scenario) throw ScenarioMismatch();
    S v(0);
    for (int i = 0; i < f.g.size(); ++i) v += f.g[i] * p.p[i];
    return v;
}

inline Behaviour mix(const Behaviour& p, const Behaviour& q, double t) {
    if (p.scenario != q.scenario) throw ScenarioMismatch();
    return {p.scenario, (1 - t) * p.p + t * q.p};
}

// 2222 helpers using the 3x3 table layout [1, B0, B1; A0, A0B0, A0B1; A1, A1B0, A1B1].
CorrelatorTable table_2222(const std::array<double, 9>& t);
Behaviour behaviour_2222(double a0, double a1, double b0, double b1, double e00, double e01, double e10,
                         double e11);
BellFunctional functional_2222(const std::array<double, 9>& t, std::string name = {});

// Relabelings: flip the outcome of (party, input), swap two parties.
Behaviour flip_output(const Behaviour& p, int party, int input);
Behaviour swap_parties(const Behaviour& p, int i, int j);
BellFunctional flip_output(const BellFunctional& f, int party, int input);

// Affine dimension of a point set (rank of the centered matrix).
int affine_dimension(const std::vector<Behaviour>& pts, double tol = 1e-9);
double max_abs_diff(const Behaviour& p, const Behaviour& q);

}  // namespace bellgeom
