#pragma once
// Two-dimensional slices and projections of L, Q and NS, kink detection and file output.

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "bellgeom/npa.hpp"
#include "bellgeom/scenario.hpp"

namespace bellgeom {

// Slice through `center` spanned by two behaviour-space directions.
struct SliceSpec {
    std::string name;
    Behaviour center;
    Vec<double> dir1, dir2;
    int resolution = 720;
    double radial_tol = 1e-6;   // bisection tolerance for the TLM inner radius
    NpaLevel level = NpaLevel::one_ab;
    int restarts = 32;          // seesaw restarts per angle for the hull inner radius
    std::uint64_t seed = 1;
    std::string x_label = "d1", y_label = "d2";
};

// Projection onto the values of two functionals.
struct ProjectionSpec {
    std::string name;
    BellFunctional f1, f2;
    int resolution = 720;
    NpaLevel level = NpaLevel::one_ab;
    int restarts = 32;
    std::uint64_t seed = 1;
    std::string x_label = "f1", y_label = "f2";
};

enum class CurveKind { local, q_inner, q_outer, ns };
std::string to_string(CurveKind k);

// Radii along theta from an origin in plane coordinates; the plane point is origin + r (cos, sin).
struct BoundaryCurve {
    std::string name;
    bool projection = false;
    bool exact_inner = false;   // inner radius from the TLM criterion (zero-marginal slice)
    Eigen::Vector2d origin = Eigen::Vector2d::Zero();
    std::string x_label, y_label;
    std::vector<double> theta, r_L, r_Q_inner, r_Q_outer, r_NS;

    int size() const { return int(theta.size()); }
    const std::vector<double>& radii(CurveKind k) const;
    Eigen::Vector2d point(CurveKind k, int i) const;
    double max_gap() const;     // largest r_Q_outer - r_Q_inner
};

BoundaryCurve slice_boundary(const SliceSpec& spec);
BoundaryCurve projection_boundary(const ProjectionSpec& spec);
BoundaryCurve projection_boundary(const BellFunctional& f1, const BellFunctional& f2, int resolution);

// Presets: fig2, fig3, fig5, fig7 (fig6 is the same Hardy slice) and the fig4 projection.
bool is_projection_preset(const std::string& name);
SliceSpec slice_preset(const std::string& name);
ProjectionSpec projection_preset(const std::string& name);
std::vector<std::string> preset_names();

enum class FeatureType { flat_segment, kink, smooth_join };
std::string to_string(FeatureType t);

struct BoundaryFeature {
    FeatureType type;
    double theta = 0;            // join or kink angle; segment start for flat segments
    double theta_end = 0;        // segment end (flat segments only)
    Eigen::Vector2d point = Eigen::Vector2d::Zero();
    Eigen::Vector2d end = Eigen::Vector2d::Zero();
    double slope_mismatch = 0;   // joins and kinks at segment ends
};

struct KinkOptions {
    double collinear_tol = 1e-7;
    double slope_tol = 1e-4;
};
// Defaults to the inner curve when it is exact and to the outer curve otherwise.
std::vector<BoundaryFeature> kink_detect(const BoundaryCurve& c, const KinkOptions& opt = {});
std::vector<BoundaryFeature> kink_detect(const BoundaryCurve& c, CurveKind which, const KinkOptions& opt = {});

// Signed turn of consecutive boundary edges; all entries share a sign for a convex curve.
std::vector<double> turn_cross_products(const BoundaryCurve& c, CurveKind which);

std::string emit_csv(const BoundaryCurve& c);
std::string emit_svg(const BoundaryCurve& c);
std::string emit_json(const BoundaryCurve& c);
BoundaryCurve curve_from_json(const std::string& text);
// Format from the extension: .csv, .svg or .json.
void emit(const BoundaryCurve& c, const std::string& path);

}  // namespace bellgeom
