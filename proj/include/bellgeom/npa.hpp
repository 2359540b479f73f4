#pragma once
// Moment-matrix relaxations of the quantum set for binary-outcome scenarios.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellgeom/scenario.hpp"
#include "bellgeom/sdp.hpp"

namespace bellgeom {

// A letter is observable `input` of `party`; a word is a product of letters.
struct Letter {
    int party, input;
    friend bool operator==(const Letter& a, const Letter& b) { return a.party == b.party && a.input == b.input; }
    friend bool operator<(const Letter& a, const Letter& b) {
        return a.party != b.party ? a.party < b.party : a.input < b.input;
    }
};
using Word = std::vector<Letter>;

// Letters commute across parties, square to one, and the relaxation is real (w ~ reverse(w)).
Word canonical(const Word& w);
std::string word_string(const Word& w);

enum class NpaLevel { one, one_ab, two };
NpaLevel parse_level(const std::string& s);
std::string to_string(NpaLevel l);

class MomentProblem {
public:
    MomentProblem(const Scenario& s, NpaLevel level);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<Word>& words() const { return words_; }
    int size() const { return int(words_.size()); }
    int num_moments() const { return int(moments_.size()); }
    const std::vector<Word>& moments() const { return moments_; }

    // Moment variable at matrix entry (u,v), or -1 for the identity.
    int entry(int u, int v) const { return entry_[u * size() + v]; }
    // Moment variable for correlator index k (k = 0 is the identity, returns -1).
    int correlator_moment(int ki) const { return corr_moment_[ki]; }

    // Basis matrices: Gamma(y) = E0 + sum_k y_k E_k.
    Eigen::MatrixXd E0() const;
    Eigen::MatrixXd E(int k) const;

private:
    Scenario scenario_;
    std::vector<Word> words_;
    std::vector<Word> moments_;
    std::map<Word, int> index_;
    std::vector<int> entry_;
    std::vector<int> corr_moment_;
};

struct NpaSolution {
    double optimum = 0;      // upper bound on the quantum value
    double certified = 0;    // bound replayed from the dual matrix
    double gap = 0;          // relative duality gap
    SdpStatus status = SdpStatus::numerical_failure;
    Eigen::MatrixXd moment_matrix;  // Gamma at the optimum
    Eigen::MatrixXd dual_matrix;    // PSD certificate
    Eigen::VectorXd moments;
    double min_eig_moment = 0, min_eig_dual = 0;
    NpaLevel level = NpaLevel::one_ab;
    int size = 0;
    bool ok() const { return status == SdpStatus::optimal; }
};

NpaSolution npa_upper_bound(const BellFunctional& f, NpaLevel level = NpaLevel::one_ab);
NpaLevel default_level(const BellFunctional& f);

// The correlator coefficients of the supporting functional read off the dual matrix:
// w.dot(corr) <= bound holds on the whole relaxation and is tight at the optimum.
struct SupportingFunctional {
    Eigen::VectorXd w;  // correlator basis, w[0] = 0
    double bound = 0;
};

// Outer relaxation membership: max t with Gamma - t I PSD and the observed moments
// fixed to `corr`. Returns t (>= 0 means inside up to tolerance).
double npa_membership_margin(const CorrelatorTable& corr, NpaLevel level = NpaLevel::one_ab);

// max r such that center + r * dir (correlator tables) stays in the relaxation.
double npa_max_radius(const CorrelatorTable& center, const Eigen::VectorXd& dir, NpaLevel level = NpaLevel::one_ab,
                      std::optional<SupportingFunctional>* support = nullptr);

}  // namespace bellgeom
