#include "bellgeom/npa.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bellgeom {

namespace {

Word canonical_operator(const Word& w) {
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

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

}  // namespace

Word canonical(const Word& w) {
    Word a = canonical_operator(w);
    Word b = canonical_operator(reversed(w));
    return std::min(a, b);
}

std::string word_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (auto& l : w) s += char('A' + l.party) + std::to_string(l.input);
    return s;
}

NpaLevel parse_level(const std::string& s) {
    if (s == "1") return NpaLevel::one;
    if (s == "1ab" || s == "1+ab" || s == "1+AB") return NpaLevel::one_ab;
    if (s == "2") return NpaLevel::two;
    throw std::invalid_argument("unknown NPA level '" + s + "' (expected 1, 1ab or 2)");
}

std::string to_string(NpaLevel l) {
    switch (l) {
        case NpaLevel::one: return "1";
        case NpaLevel::one_ab: return "1ab";
        case NpaLevel::two: return "2";
    }
    return "?";
}

MomentProblem::MomentProblem(const Scenario& s, NpaLevel level) : scenario_(s) {
    const int n = s.parties();
    std::vector<Letter> letters;
    for (int i = 0; i < n; ++i)
        for (int x = 0; x < s.inputs(i); ++x) letters.push_back({i, x});

    std::set<Word> seen;
    auto add = [&](const Word& w) {
        Word c = canonical_operator(w);
        if (seen.insert(c).second) words_.push_back(c);
    };
    add({});
    for (auto& l : letters) add({l});
    // three parties: cross-party pairs already at level 1 so that three-body moments appear
    bool pairs = level != NpaLevel::one || n == 3;
    if (pairs)
        for (auto& a : letters)
            for (auto& b : letters)
                if (a.party < b.party) add({a, b});
    if (level == NpaLevel::two)
        for (auto& a : letters)
            for (auto& b : letters)
                if (a.party == b.party && !(a == b)) add({a, b});

    const int N = size();
    entry_.assign(N * N, -1);
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v) {
            Word w = reversed(words_[u]);
            w.insert(w.end(), words_[v].begin(), words_[v].end());
            Word c = canonical(w);
            if (c.empty()) continue;
            auto it = index_.find(c);
            if (it == index_.end()) {
                it = index_.emplace(c, int(moments_.size())).first;
                moments_.push_back(c);
            }
            entry_[u * N + v] = it->second;
        }

    corr_moment_.assign(s.corr_dim(), -1);
    for (int ki = 1; ki < s.corr_dim(); ++ki) {
        auto k = s.decode_corr(ki);
        Word w;
        for (int i = 0; i < n; ++i)
            if (k[i]) w.push_back({i, k[i] - 1});
        auto it = index_.find(canonical(w));
        if (it == index_.end())
            throw std::invalid_argument("moment " + word_string(w) + " not present at level " + to_string(level));
        corr_moment_[ki] = it->second;
    }
}

Eigen::MatrixXd MomentProblem::E0() const {
    const int N = size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v)
            if (entry(u, v) < 0) m(u, v) = 1;
    return m;
}

Eigen::MatrixXd MomentProblem::E(int k) const {
    const int N = size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v)
            if (entry(u, v) == k) m(u, v) = 1;
    return m;
}

namespace {

Eigen::MatrixXd psd_part(const Eigen::MatrixXd& X) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

// Valid bound from any X: moments are bounded by one in modulus.
double replay_bound(const SdpProblem& p, const Eigen::MatrixXd& X) {
    Eigen::MatrixXd Xp = psd_part(X);
    double bound = p.C.cwiseProduct(Xp).sum();
    for (size_t i = 0; i < p.A.size(); ++i) bound += std::abs(p.A[i].cwiseProduct(Xp).sum() - p.b[i]);
    return bound;
}

}  // namespace

NpaLevel default_level(const BellFunctional& f) {
    auto w = correlator_coefficients(f);
    const Scenario& s = f.scenario;
    bool pure_correlation = true;
    for (int ki = 1; ki < s.corr_dim(); ++ki) {
        auto k = s.decode_corr(ki);
        int present = int(std::count_if(k.begin(), k.end(), [](int v) { return v != 0; }));
        if (present < s.parties() && std::abs(w[ki]) > 1e-12) pure_correlation = false;
    }
    return pure_correlation ? NpaLevel::one : NpaLevel::one_ab;
}

NpaSolution npa_upper_bound(const BellFunctional& f, NpaLevel level) {
    MomentProblem mp(f.scenario, level);
    auto w = correlator_coefficients(f);
    SdpProblem p;
    p.C = mp.E0();
    p.b = Eigen::VectorXd::Zero(mp.num_moments());
    for (int k = 0; k < mp.num_moments(); ++k) p.A.push_back(-mp.E(k));
    for (int ki = 1; ki < f.scenario.corr_dim(); ++ki) p.b[mp.correlator_moment(ki)] += w[ki];
    auto r = sdp_solve(p);
    NpaSolution s;
    s.status = r.status;
    s.level = level;
    s.size = mp.size();
    s.optimum = r.primal_objective + w[0];
    s.certified = replay_bound(p, r.X) + w[0];
    s.gap = r.gap;
    s.moment_matrix = r.Z;
    s.dual_matrix = r.X;
    s.moments = r.y;
    s.min_eig_moment = min_eigenvalue(r.Z);
    s.min_eig_dual = min_eigenvalue(r.X);
    return s;
}

double npa_membership_margin(const CorrelatorTable& corr, NpaLevel level) {
    MomentProblem mp(corr.scenario, level);
    const int nm = mp.num_moments();
    std::vector<int> observed(nm, 0);
    Eigen::MatrixXd F0 = mp.E0();
    for (int ki = 1; ki < corr.scenario.corr_dim(); ++ki) {
        int m = mp.correlator_moment(ki);
        observed[m] = 1;
        F0 += corr.c[ki] * mp.E(m);
    }
    SdpProblem p;
    p.C = F0;
    for (int k = 0; k < nm; ++k)
        if (!observed[k]) p.A.push_back(-mp.E(k));
    p.A.push_back(Eigen::MatrixXd::Identity(mp.size(), mp.size()));
    p.b = Eigen::VectorXd::Zero(p.A.size());
    p.b[p.b.size() - 1] = 1;
    auto r = sdp_solve(p);
    return r.dual_objective;
}

double npa_max_radius(const CorrelatorTable& center, const Eigen::VectorXd& dir, NpaLevel level,
                      std::optional<SupportingFunctional>* support) {
    const Scenario& s = center.scenario;
    MomentProblem mp(s, level);
    const int nm = mp.num_moments();
    std::vector<int> observed(nm, 0);
    Eigen::MatrixXd F0 = mp.E0();
    Eigen::MatrixXd Fr = Eigen::MatrixXd::Zero(mp.size(), mp.size());
    for (int ki = 1; ki < s.corr_dim(); ++ki) {
        int m = mp.correlator_moment(ki);
        observed[m] = 1;
        Eigen::MatrixXd Em = mp.E(m);
        F0 += center.c[ki] * Em;
        Fr += dir[ki] * Em;
    }
    SdpProblem p;
    p.C = F0;
    p.A.push_back(-Fr);
    for (int k = 0; k < nm; ++k)
        if (!observed[k]) p.A.push_back(-mp.E(k));
    p.b = Eigen::VectorXd::Zero(p.A.size());
    p.b[0] = 1;
    auto r = sdp_solve(p);
    if (support) {
        SupportingFunctional sf;
        sf.w = Eigen::VectorXd::Zero(s.corr_dim());
        // <Gamma, X> >= 0 gives sum_k g_k c_k >= -<E0, X> on the relaxation
        for (int ki = 1; ki < s.corr_dim(); ++ki) sf.w[ki] = -mp.E(mp.correlator_moment(ki)).cwiseProduct(r.X).sum();
        sf.bound = mp.E0().cwiseProduct(r.X).sum();
        *support = sf;
    }
    return r.dual_objective;
}

}  // namespace bellgeom
