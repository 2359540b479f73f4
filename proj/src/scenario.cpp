#include "bellgeom/scenario.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace bellgeom {

Scenario::Scenario(std::vector<int> inputs, std::vector<int> outputs) : inputs_(std::move(inputs)) {
    if (inputs_.empty() || inputs_.size() > 3)
        throw std::invalid_argument("scenario: need 1 to 3 parties, got " + std::to_string(inputs_.size()));
    for (int m : inputs_)
        if (m < 1 || m > 3) throw std::invalid_argument("scenario: inputs per party must be 1..3, got " + std::to_string(m));
    if (!outputs.empty()) {
        if (outputs.size() != inputs_.size()) throw std::invalid_argument("scenario: outputs list length mismatch");
        for (int d : outputs)
            if (d != 2) throw std::invalid_argument("scenario: only binary outcomes are supported, got " + std::to_string(d));
    }
    n_in_ = 1;
    n_corr_ = 1;
    for (int m : inputs_) {
        n_in_ *= m;
        n_corr_ *= m + 1;
    }
}

std::vector<int> Scenario::decode_input(int xi) const {
    std::vector<int> x(parties());
    for (int i = parties() - 1; i >= 0; --i) {
        x[i] = xi % inputs_[i];
        xi /= inputs_[i];
    }
    return x;
}

int Scenario::encode_input(const std::vector<int>& x) const {
    int xi = 0;
    for (int i = 0; i < parties(); ++i) xi = xi * inputs_[i] + x[i];
    return xi;
}

std::vector<int> Scenario::decode_corr(int ki) const {
    std::vector<int> k(parties());
    for (int i = parties() - 1; i >= 0; --i) {
        k[i] = ki % (inputs_[i] + 1);
        ki /= inputs_[i] + 1;
    }
    return k;
}

int Scenario::encode_corr(const std::vector<int>& k) const {
    int ki = 0;
    for (int i = 0; i < parties(); ++i) ki = ki * (inputs_[i] + 1) + k[i];
    return ki;
}

std::string Scenario::name() const {
    std::ostringstream os;
    bool same = std::all_of(inputs_.begin(), inputs_.end(), [&](int m) { return m == inputs_[0]; });
    if (same && parties() == 2) {
        os << inputs_[0] << inputs_[0] << "22";
    } else {
        for (int i = 0; i < parties(); ++i) os << (i ? "-" : "") << inputs_[i] << "2";
    }
    return os.str();
}

NsReport check_no_signalling(const Behaviour& p, double tol) {
    const Scenario& s = p.scenario;
    const int n = s.parties();
    double worst = 0;
    // marginal over every proper subset of parties must not depend on the others' inputs
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        // group by (x restricted to mask, a restricted to mask)
        std::vector<double> lo, hi;
        std::vector<int> key_x(s.input_tuples()), key_a(s.output_tuples());
        int nx = 1, na = 1;
        for (int i = 0; i < n; ++i)
            if (mask >> (n - 1 - i) & 1) {
                nx *= s.inputs(i);
                na *= 2;
            }
        lo.assign(nx * na, 1e300);
        hi.assign(nx * na, -1e300);
        for (int xi = 0; xi < s.input_tuples(); ++xi) {
            auto x = s.decode_input(xi);
            int kx = 0;
            for (int i = 0; i < n; ++i)
                if (mask >> (n - 1 - i) & 1) kx = kx * s.inputs(i) + x[i];
            std::vector<double> marg(na, 0.0);
            for (int ai = 0; ai < s.output_tuples(); ++ai) {
                int ka = 0;
                for (int i = 0; i < n; ++i)
                    if (mask >> (n - 1 - i) & 1) ka = ka * 2 + s.output_bit(ai, i);
                marg[ka] += p(xi, ai);
            }
            for (int ka = 0; ka < na; ++ka) {
                lo[kx * na + ka] = std::min(lo[kx * na + ka], marg[ka]);
                hi[kx * na + ka] = std::max(hi[kx * na + ka], marg[ka]);
            }
        }
        for (size_t i = 0; i < lo.size(); ++i) worst = std::max(worst, hi[i] - lo[i]);
    }
    return {worst <= tol, worst};
}

SignallingError::SignallingError(double v)
    : std::invalid_argument("behaviour is signalling (violation " + std::to_string(v) + ")"), violation(v) {}

CorrelatorTable prob_to_corr(const Behaviour& p) {
    auto r = check_no_signalling(p);
    if (!r.ok) throw SignallingError(r.max_violation);
    return prob_to_corr_unchecked(p);
}

std::vector<NegativeCell> negative_cells(const Behaviour& p, double tol) {
    std::vector<NegativeCell> out;
    const Scenario& s = p.scenario;
    for (int xi = 0; xi < s.input_tuples(); ++xi)
        for (int ai = 0; ai < s.output_tuples(); ++ai)
            if (p(xi, ai) < -tol) {
                std::vector<int> a(s.parties());
                for (int i = 0; i < s.parties(); ++i) a[i] = s.output_bit(ai, i);
                out.push_back({a, s.decode_input(xi), p(xi, ai)});
            }
    return out;
}

double normalisation_error(const Behaviour& p) {
    const Scenario& s = p.scenario;
    double worst = 0;
    for (int xi = 0; xi < s.input_tuples(); ++xi) {
        double sum = 0;
        for (int ai = 0; ai < s.output_tuples(); ++ai) sum += p(xi, ai);
        worst = std::max(worst, std::abs(sum - 1));
    }
    return worst;
}

bool is_valid(const Behaviour& p, double tol) {
    return p.p.size() == p.scenario.dim() && p.p.minCoeff() >= -tol && normalisation_error(p) <= tol &&
           check_no_signalling(p).ok;
}

Behaviour deterministic(const Scenario& s, const std::vector<std::vector<int>>& out) {
    Behaviour b(s, Vec<double>::Zero(s.dim()));
    for (int xi = 0; xi < s.input_tuples(); ++xi) {
        auto x = s.decode_input(xi);
        int ai = 0;
        for (int i = 0; i < s.parties(); ++i) ai = ai * 2 + out[i][x[i]];
        b(xi, ai) = 1.0;
    }
    return b;
}

std::vector<Behaviour> enumerate_deterministic(const Scenario& s) {
    const int n = s.parties();
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 1 << s.inputs(i);
    std::vector<Behaviour> pts;
    pts.reserve(total);
    for (int code = 0; code < total; ++code) {
        // party 0 strategy is the slowest digit; within a party, input 0 is the high bit
        std::vector<std::vector<int>> out(n);
        int rest = code;
        for (int i = n - 1; i >= 0; --i) {
            int m = s.inputs(i);
            int strat = rest % (1 << m);
            rest /= 1 << m;
            out[i].resize(m);
            for (int x = 0; x < m; ++x) out[i][x] = (strat >> (m - 1 - x)) & 1;
        }
        pts.push_back(deterministic(s, out));
    }
    return pts;
}

Behaviour uniform(const Scenario& s) {
    return {s, Vec<double>::Constant(s.dim(), 1.0 / s.output_tuples())};
}

CorrelatorTable table_2222(const std::array<double, 9>& t) {
    Scenario s = scenario_2222();
    return {s, Eigen::Map<const Eigen::VectorXd>(t.data(), 9)};
}

Behaviour behaviour_2222(double a0, double a1, double b0, double b1, double e00, double e01, double e10,
                         double e11) {
    return corr_to_prob(table_2222({1, b0, b1, a0, e00, e01, a1, e10, e11}));
}

BellFunctional functional_2222(const std::array<double, 9>& t, std::string name) {
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(t.data(), 9);
    return from_correlators(scenario_2222(), w, std::move(name));
}

namespace {
template <class V>
V flip_vec(const Scenario& s, const V& v, int party, int input) {
    V out = v;
    for (int xi = 0; xi < s.input_tuples(); ++xi) {
        if (s.decode_input(xi)[party] != input) continue;
        for (int ai = 0; ai < s.output_tuples(); ++ai) {
            int bj = ai ^ (1 << (s.parties() - 1 - party));
            out[s.index(xi, bj)] = v[s.index(xi, ai)];
        }
    }
    return out;
}
}  // namespace

Behaviour flip_output(const Behaviour& p, int party, int input) {
    return {p.scenario, flip_vec(p.scenario, p.p, party, input)};
}

BellFunctional flip_output(const BellFunctional& f, int party, int input) {
    return {f.scenario, flip_vec(f.scenario, f.g, party, input), f.name};
}

Behaviour swap_parties(const Behaviour& p, int i, int j) {
    const Scenario& s = p.scenario;
    if (s.inputs(i) != s.inputs(j)) throw std::invalid_argument("swap_parties: input counts differ");
    Behaviour out = p;
    for (int xi = 0; xi < s.input_tuples(); ++xi) {
        auto x = s.decode_input(xi);
        std::swap(x[i], x[j]);
        int yi = s.encode_input(x);
        for (int ai = 0; ai < s.output_tuples(); ++ai) {
            std::vector<int> a(s.parties());
            for (int k = 0; k < s.parties(); ++k) a[k] = s.output_bit(ai, k);
            std::swap(a[i], a[j]);
            int bj = 0;
            for (int k = 0; k < s.parties(); ++k) bj = bj * 2 + a[k];
            out(yi, bj) = p(xi, ai);
        }
    }
    return out;
}

int affine_dimension(const std::vector<Behaviour>& pts, double tol) {
    if (pts.size() <= 1) return 0;
    Eigen::MatrixXd m(pts[0].p.size(), pts.size() - 1);
    for (size_t i = 1; i < pts.size(); ++i) m.col(i - 1) = pts[i].p - pts[0].p;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(tol);
    return int(lu.rank());
}

double max_abs_diff(const Behaviour& p, const Behaviour& q) {
    return (p.p - q.p).cwiseAbs().maxCoeff();
}

}  // namespace bellgeom
