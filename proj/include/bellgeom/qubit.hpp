#pragma once
// Qubit realizations (pure state, projective +-1 observables) and the seesaw lower bound.

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <vector>

#include "bellgeom/scenario.hpp"

namespace bellgeom {

using cplx = std::complex<double>;

// Party 0 is the leftmost tensor factor; observable O = a.sigma for a unit Bloch vector a.
struct QubitRealization {
    Eigen::VectorXcd state;
    std::vector<std::vector<Eigen::Vector3d>> bloch;  // [party][input]

    int parties() const { return int(bloch.size()); }
    Eigen::Matrix2cd observable(int party, int input) const;
    bool valid(double tol = 1e-12) const;
};

Eigen::Matrix2cd pauli(int k);  // 0: x, 1: y, 2: z
Eigen::Matrix2cd bloch_operator(const Eigen::Vector3d& a);

Behaviour realization_to_behaviour(const QubitRealization& r, const Scenario& s);

// Bell operator sum_k w[k] O_k for correlator coefficients w.
Eigen::MatrixXcd bell_operator(const Scenario& s, const Eigen::VectorXd& w, const QubitRealization& r);

// Squared larger Schmidt coefficient of a two-qubit state.
double schmidt_lambda(const Eigen::VectorXcd& psi);
// Angle in degrees between a party's two observables.
double observable_angle(const QubitRealization& r, int party);

struct SeesawRun {
    double value = 0;
    QubitRealization realization;
    std::vector<double> trace;  // objective after each full sweep
};

struct SeesawResult {
    double value = -1e300;
    QubitRealization realization;
    Behaviour behaviour;
    std::vector<Behaviour> all_optima;          // distinct maximizers (max-norm > 1e-6)
    std::vector<QubitRealization> optima_realizations;
    bool monotone = true;                        // every run's trace was non-decreasing
};

struct SeesawOptions {
    int max_sweeps = 4000;
    double tol = 1e-14;
    double optimum_tol = 1e-7;     // runs within this of the best count as optima
    double distinct_tol = 1e-6;    // behaviour max-norm separating distinct optima
};

QubitRealization random_realization(const Scenario& s, std::uint64_t seed);
SeesawRun seesaw_run(const Scenario& s, const Eigen::VectorXd& w, QubitRealization start,
                     const SeesawOptions& opt = {});
SeesawResult seesaw_lower_bound(const BellFunctional& f, int restarts = 64, std::uint64_t seed = 1,
                                const SeesawOptions& opt = {});

}  // namespace bellgeom
