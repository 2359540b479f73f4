#pragma once
// Local and no-signalling polytopes: bounds, faces, membership, CHSH structure.

#include <cstdint>
#include <optional>
#include <vector>

#include "bellgeom/lp.hpp"
#include "bellgeom/scenario.hpp"

namespace bellgeom {

struct PolyFace {
    BellFunctional functional;
    double value = 0;
    std::vector<Behaviour> vertices;  // saturating vertices
    int dim = 0;                      // affine dimension of the vertex set
    bool complete = true;             // false when vertices were sampled rather than enumerated
};

// Rows of the NS polytope in probability coordinates: normalisation and no-signalling.
// With homogeneous = true the normalisation right-hand side is zero (cone form).
struct NsConstraints {
    Mat<double> A;
    Vec<double> b;
};
NsConstraints ns_constraints(const Scenario& s);

PolyFace local_bound(const BellFunctional& f, double tol = 1e-9);
PolyFace ns_bound(const BellFunctional& f, double tol = 1e-9, int samples = 96, std::uint64_t seed = 1);

// The 24 vertices of NS in 2222 (16 local, 8 PR variants), by brute-force basis enumeration.
const std::vector<Behaviour>& ns_vertices_2222();

struct MembershipResult {
    bool inside = false;
    Vec<double> weights;                    // over enumerate_deterministic order
    std::optional<BellFunctional> separating;
    double margin = 0;                      // B.p - max_det B.P_det for the separating functional
    double residual = 0;                    // reconstruction error when inside
};
MembershipResult local_membership(const Behaviour& p, double tol = 1e-9);

// CHSH variants in 2222: sum_xy (-1)^{xy + alpha x + beta y + gamma} <A_x B_y>, k = 4 alpha + 2 beta + gamma.
BellFunctional chsh_variant(int k);
Behaviour pr_variant(int k);  // the PR box attaining 4 on variant k
double chsh_value(const Behaviour& p, int k);
std::pair<int, double> max_chsh(const Behaviour& p);

struct BierhorstResult {
    int variant = 0;
    double beta = 0;
    double v0 = 0;
    std::vector<Behaviour> points;  // the 8 deterministic points saturating the variant
    std::vector<double> weights;
    double residual = 0;
};
// Throws std::domain_error("no violation") or std::logic_error("ill-posed").
BierhorstResult bierhorst_decompose(const Behaviour& p);

struct VisibilityReport {
    double beta = 0;
    double v_white = 0, v_local = 0, v_ns = 0;      // closed forms
    double lp_white = 0, lp_local = 0, lp_ns = 0;   // LP with the fixed optimal noise points
    double lp_local_opt = 0, lp_ns_opt = 0;         // LP optimizing the noise over L and NS
    bool already_local = false;                     // no CHSH variant exceeds 2; every visibility is 0
};
VisibilityReport visibilities(const Behaviour& p);

// min v such that (1-v) p + v noise is local.
double visibility_lp(const Behaviour& p, const Behaviour& noise);

}  // namespace bellgeom
