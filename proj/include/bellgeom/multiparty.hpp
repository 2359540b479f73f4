#pragma once
// Tripartite functionals: CHSH modulated by a third party, the Werner-Wolf face, the Mermin witness.

#include <Eigen/Core>
#include <vector>

#include "bellgeom/faces.hpp"
#include "bellgeom/qubit.hpp"
#include "bellgeom/scenario.hpp"
#include "bellgeom/zoo.hpp"

namespace bellgeom {

struct ModulatedChsh {
    BellFunctional functional;
    Bounds bounds;                  // L and NS by LP, Q by the moment relaxation
    Behaviour endpoint1, endpoint2;  // Charlie outputs +1 / -1 deterministically
};
ModulatedChsh modulated_chsh();
// Fixed observables with the state cos t |Phi+>|0> + sin t |Psi->|1>.
QubitRealization modulated_realization(double t);

struct SegmentFit {
    double t = 0;         // p ~ (1 - t) e1 + t e2
    double residual = 0;  // max-norm reconstruction error
};
SegmentFit segment_decompose(const Behaviour& p, const Behaviour& e1, const Behaviour& e2);

// Branches of maximal violation in the (b, c) square, Alice at a = pi/2.
enum class GhzBranch { sum_3pi4, diff_minus_pi4, diff_pi4, sum_pi4 };
struct GhzFaceParams {
    double b = 0, c = 0;
    GhzBranch branch = GhzBranch::sum_3pi4;
    bool on_branch(double tol = 1e-12) const;
};

// Observables A0 = x, A1 = cos a x + sin a y, B_{0,1} = cos b x +- sin b y, C likewise with c.
QubitRealization ww_realization(double a, double b, double c, const Eigen::VectorXcd& state);

struct GhzEigenpair {
    int k = 1;                  // +-1 .. +-4
    Eigen::VectorXcd vector;    // (|j> +- |7 - j>) / sqrt2
    double lambda = 0;          // <v|W|v> from the Bell operator
    double closed_form = 0;
    double residual = 0;        // |W v - lambda v|
};
std::vector<GhzEigenpair> ww_eigenvalues(double b, double c);

Behaviour ww_family(double alpha);
// P1..P8: CHSH between Alice and one of Bob or Charlie, the other deterministic.
std::vector<Behaviour> ww_points();
struct WwFace {
    std::vector<Behaviour> points;
    std::vector<double> alphas;
    std::vector<Behaviour> family;
};
WwFace ww_face(int sample_count);
// Statistics of the maximal GHZ eigenvector selected by the branch.
Behaviour ww_branch_behaviour(const GhzFaceParams& p);
// The family parameter reproducing a behaviour with the family's three-body pattern.
double ww_alpha_of(const Behaviour& p);

FaceReport mermin_witness();

}  // namespace bellgeom
