#pragma once
// Face classification, flat-region and exposure certificates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellgeom/exact.hpp"
#include "bellgeom/npa.hpp"
#include "bellgeom/polytope.hpp"
#include "bellgeom/qubit.hpp"
#include "bellgeom/scenario.hpp"

namespace bellgeom {

// Realizable classes only: 3b and 4c cannot occur and have no representation.
enum class FaceClass { c1, c2a, c2b, c3a, c4a, c4b, c4d, undecided };
std::string to_string(FaceClass c);

struct Evidence {
    std::string kind;    // e.g. "nonlocal-quantum-maximizer", "nonlocal-ns-vertex"
    std::string detail;
    std::optional<Behaviour> point;
    double value = 0;
};

struct FaceReport {
    BellFunctional functional;
    double beta_L = 0, beta_Q_lower = 0, beta_Q_upper = 0, beta_NS = 0;
    FaceClass label = FaceClass::undecided;
    std::vector<Evidence> evidence;
    int dim_L = 0, dim_NS = 0, dim_Q_lower = 0;
    bool ns_face_complete = true;
    NpaLevel level = NpaLevel::one_ab;
};

struct ClassifyOptions {
    double tol = 1e-6;
    int restarts = 64;
    std::uint64_t seed = 1;
    std::optional<NpaLevel> level;  // default: escalate 1 -> 1ab -> 2 until the sandwich closes
    double slope_margin = 0.05;     // allowance in the directional F_L = F_Q test
    double witness_margin = 1e-4;   // minimal violation of a separating local inequality by a witness
};

// Upper and lower quantum bounds with level escalation.
struct QuantumBounds {
    NpaSolution upper;
    SeesawResult lower;
};
QuantumBounds quantum_bounds(const BellFunctional& f, std::optional<NpaLevel> level, int restarts,
                             std::uint64_t seed, double tol = 1e-6);

FaceReport classify(const BellFunctional& f, const ClassifyOptions& opt = {});

// Nonlocal quantum point maximizing f, from plain or tilted seesaw; nullopt if none found.
std::optional<std::pair<Behaviour, QubitRealization>> nonlocal_quantum_maximizer(const BellFunctional& f,
                                                                                  double beta, double tol,
                                                                                  int restarts, std::uint64_t seed,
                                                                                  double margin = 1e-4);

BellFunctional exposing_functional(const Behaviour& deterministic_point);

// Tangent vectors of the quantum set at a realization: derivatives of the correlator table
// along rotations of every observable and every state direction.
std::vector<Eigen::VectorXd> realization_tangents(const QubitRealization& r, const Scenario& s);

// Functional (correlator basis, no constant) with w.P_j = 1, w.V_k = 0 and local bound <= 1, minimal l1 norm.
std::optional<BellFunctional> tangent_bell_search(const std::vector<Behaviour>& points,
                                                  const std::vector<Eigen::VectorXd>& tangents);

struct ExposureCertificate {
    std::vector<Quad<5>> point;     // Hardy point in (A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1)
    std::vector<Quad<5>> tangent;   // T
    Quad<5> lp_value;               // primal optimum
    std::vector<Quad<5>> functional;  // optimal B in the same coordinates
    std::vector<Quad<5>> dual_weights;  // one per deterministic point
    Quad<5> dual_tangent;           // z
    Quad<5> dual_value;
    bool reference_dual_feasible = false;  // y1 = sqrt5 - 2, y5 = y6 = (3 - sqrt5)/2, z = 4 - 2 sqrt5
    bool solver_dual_feasible = false;
    std::string conclusion;
};
ExposureCertificate hardy_exposure_lp();

struct QuantumCandidate {
    Behaviour point;
    std::optional<QubitRealization> realization;
    bool tlm_witness = false;   // zero-marginal point on or inside the TLM boundary
    std::string label;
};
struct FlatRegionReport {
    double beta_Q_upper = 0;  // relaxation value
    double target = 0;        // value the candidates must reach: the reference bound when given
    bool relaxation_tight = false;
    std::vector<bool> verified;
    std::vector<double> values;
    int dim_Q_lower = 0;
};
// `reference` is an analytically known quantum value, used where the relaxation is not tight.
FlatRegionReport flat_region_certificate(const BellFunctional& f, const std::vector<QuantumCandidate>& candidates,
                                         std::optional<NpaLevel> level = {}, std::optional<double> reference = {});

// a1 P(10|01) + a2 P(01|10) + a3 P(11|11) >= 0 written as a functional bounded by a1 + a2 + a3.
BellFunctional hardy_family_functional(double a1, double a2, double a3);

QubitRealization hardy_realization();
QubitRealization chsh_realization();

}  // namespace bellgeom
