// Command-line front end: bounds, classification, slices, projections, the zoo, certificates and scans.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "bellgeom/faces.hpp"
#include "bellgeom/geometry.hpp"
#include "bellgeom/io.hpp"
#include "bellgeom/multiparty.hpp"
#include "bellgeom/npa.hpp"
#include "bellgeom/polytope.hpp"
#include "bellgeom/qubit.hpp"
#include "bellgeom/zoo.hpp"

using namespace bellgeom;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kInvalid = 2, kUndecided = 3;

struct Common {
    std::string level;
    int restarts = 0;  // 0: the module default
    std::uint64_t seed = 1;
    double tol = 1e-6;
    std::string out;
    bool json = false;
    bool strict = false;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--level", c.level, "relaxation level: 1, 1ab or 2 (default: escalate)")
        ->check(CLI::IsMember({"1", "1ab", "2"}));
    app->add_option("--restarts", c.restarts, "seesaw restarts")->check(CLI::PositiveNumber);
    app->add_option("--seed", c.seed, "seed for every stochastic step");
    app->add_option("--tol", c.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "output path");
    app->add_flag("--json", c.json, "print the JSON report");
    app->add_flag("--strict", c.strict, "exit 3 when a classification is undecided");
}

int restarts_or(const Common& c, int fallback) { return c.restarts > 0 ? c.restarts : fallback; }

std::optional<NpaLevel> level_of(const Common& c) {
    if (c.level.empty()) return std::nullopt;
    return parse_level(c.level);
}

// Numbers are reported to 12 significant digits.
double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

void round_numbers(json& j) {
    if (j.is_number_float())
        j = round12(j.get<double>());
    else if (j.is_structured())
        for (auto& v : j) round_numbers(v);
}

std::vector<double> parse_args(const std::string& s) {
    std::vector<double> v;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) v.push_back(std::stod(tok));
    return v;
}

// zoo:NAME, zoo:B3(a,c), zoo:B_hardyfam(a1,a2,a3), zoo:exposing(NAME) or a JSON file.
BellFunctional functional_spec(const std::string& spec) {
    if (spec.rfind("zoo:", 0) != 0) return functional_from_json(read_json_file(spec));
    std::string body = spec.substr(4);
    std::smatch m;
    if (std::regex_match(body, m, std::regex(R"((\w+)\(([^)]*)\))"))) {
        std::string name = m[1];
        if (name == "exposing") return exposing_functional(zoo_behaviour(m[2]));
        auto a = parse_args(m[2]);
        if (name == "B3" && a.size() == 2) return b3_functional(a[0], a[1]);
        if (name == "B_hardyfam" && a.size() == 3) return hardy_family_functional(a[0], a[1], a[2]);
        throw std::invalid_argument("unknown parametrised functional '" + body + "'");
    }
    return zoo_functional(body);
}

Behaviour behaviour_spec(const std::string& spec) {
    if (spec.rfind("zoo:", 0) == 0) return zoo_behaviour(spec.substr(4));
    return behaviour_from_json(read_json_file(spec));
}

json corr_json(const Behaviour& p) { return to_json(prob_to_corr(p))["correlators"]; }

json functional_summary(const BellFunctional& f) {
    json j = {{"name", f.name}, {"scenario", f.scenario.name()}};
    j["correlators"] = to_json(f)["correlators"];
    return j;
}

json report_json(const FaceReport& r) {
    json j;
    j["functional"] = functional_summary(r.functional);
    j["class"] = to_string(r.label);
    j["beta_L"] = r.beta_L;
    j["beta_Q_lower"] = r.beta_Q_lower;
    j["beta_Q_upper"] = r.beta_Q_upper;
    j["beta_NS"] = r.beta_NS;
    j["level"] = to_string(r.level);
    j["dim_L"] = r.dim_L;
    j["dim_NS"] = r.dim_NS;
    j["dim_Q_lower"] = r.dim_Q_lower;
    j["ns_face_complete"] = r.ns_face_complete;
    json ev = json::array();
    for (auto& e : r.evidence) {
        json x = {{"kind", e.kind}, {"detail", e.detail}, {"value", e.value}};
        if (e.point) x["point"] = corr_json(*e.point);
        ev.push_back(x);
    }
    j["evidence"] = ev;
    return j;
}

json features_json(const std::vector<BoundaryFeature>& fs) {
    json out = json::array();
    for (auto& f : fs) {
        json x = {{"type", to_string(f.type)}, {"theta", f.theta}, {"point", {f.point.x(), f.point.y()}}};
        if (f.type == FeatureType::flat_segment) {
            x["theta_end"] = f.theta_end;
            x["end"] = {f.end.x(), f.end.y()};
        } else {
            x["slope_mismatch"] = f.slope_mismatch;
        }
        out.push_back(x);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

std::string dump(json j) {
    round_numbers(j);
    return j.dump(2) + "\n";
}

void print_plain(const json& j) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        json v = it.value();
        round_numbers(v);
        std::cout << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

// Reports go to stdout as JSON with --json, else as key: value lines; --out also receives the JSON.
void finish(const json& report, const Common& c, bool out_is_report = true) {
    if (c.json)
        std::cout << dump(report);
    else
        print_plain(report);
    if (out_is_report && !c.out.empty()) write_text(c.out, dump(report));
}

// Figure plus CSV and a JSON report next to it.
json write_curve(const BoundaryCurve& curve, const std::string& out) {
    json files = json::array();
    if (out.empty()) return files;
    fs::path p(out);
    emit(curve, p.string());
    files.push_back(p.string());
    if (p.extension() != ".csv") {
        fs::path csv = p;
        csv.replace_extension(".csv");
        emit(curve, csv.string());
        files.push_back(csv.string());
    }
    return files;
}

json curve_report(const BoundaryCurve& c, const std::vector<BoundaryFeature>& features) {
    json j;
    j["name"] = c.name;
    j["kind"] = c.projection ? "projection" : "slice";
    j["resolution"] = c.size();
    j["exact_inner"] = c.exact_inner;
    j["x_label"] = c.x_label;
    j["y_label"] = c.y_label;
    j["max_gap"] = c.max_gap();
    j["features"] = features_json(features);
    return j;
}

int run_curve(const BoundaryCurve& curve, const Common& c) {
    auto report = curve_report(curve, kink_detect(curve));
    report["files"] = write_curve(curve, c.out);
    if (!c.out.empty()) {
        fs::path rp(c.out);
        rp.replace_extension(".report.json");
        report["files"].push_back(rp.string());
        write_text(rp.string(), dump(report));
    }
    finish(report, c, false);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometry of the local, quantum and no-signalling correlation sets"};
    app.require_subcommand(1);

    Common common;

    auto* bounds = app.add_subcommand("bounds", "local, quantum and no-signalling bounds of a functional");
    std::string fspec;
    bounds->add_option("--functional", fspec, "zoo:NAME, zoo:B3(a,c), zoo:B_hardyfam(a1,a2,a3), zoo:exposing(NAME) or file.json")
        ->required();
    add_common(bounds, common);

    auto* classify_cmd = app.add_subcommand("classify", "face classification");
    std::vector<std::string> fspecs;
    classify_cmd->add_option("--functional", fspecs, "functional, repeatable")->required();
    add_common(classify_cmd, common);

    auto* slice = app.add_subcommand("slice", "two-dimensional slice through a behaviour");
    std::string preset, center, dir1, dir2;
    int res = 0;
    slice->add_option("--preset", preset, "fig2, fig3, fig5, fig6 or fig7");
    slice->add_option("--center", center, "behaviour: zoo:NAME or file.json");
    slice->add_option("--dir1", dir1, "behaviour the first direction points to");
    slice->add_option("--dir2", dir2, "behaviour the second direction points to");
    slice->add_option("--res", res, "angular resolution")->check(CLI::Range(3, 100000));
    add_common(slice, common);

    auto* project = app.add_subcommand("project", "projection onto the values of two functionals");
    std::string f1, f2;
    project->add_option("--preset", preset, "fig4");
    project->add_option("--f1", f1, "first functional");
    project->add_option("--f2", f2, "second functional");
    project->add_option("--res", res, "angular resolution")->check(CLI::Range(3, 100000));
    add_common(project, common);

    auto* zoo_cmd = app.add_subcommand("zoo", "named behaviours and functionals");
    zoo_cmd->require_subcommand(1);
    auto* zoo_list = zoo_cmd->add_subcommand("list", "list entries");
    auto* zoo_show = zoo_cmd->add_subcommand("show", "show one entry");
    std::string zname;
    zoo_show->add_option("name", zname)->required();
    add_common(zoo_list, common);
    add_common(zoo_show, common);

    auto* certify = app.add_subcommand("certify", "exact certificates");
    certify->require_subcommand(1);
    auto* hardy = certify->add_subcommand("hardy-nonexposed", "the Hardy point is not exposed");
    add_common(hardy, common);

    auto* tri = app.add_subcommand("tripartite", "three-party functionals");
    tri->require_subcommand(1);
    auto* ww = tri->add_subcommand("ww-face", "the Werner-Wolf quantum face");
    int samples = 16;
    ww->add_option("--samples", samples, "family samples")->check(CLI::PositiveNumber);
    add_common(ww, common);
    auto* modulated = tri->add_subcommand("modulated", "CHSH modulated by Charlie");
    add_common(modulated, common);
    auto* mermin = tri->add_subcommand("mermin", "Mermin functional");
    add_common(mermin, common);

    auto* scan = app.add_subcommand("scan", "exploratory scans, reported as conjecture evidence");
    scan->require_subcommand(1);
    auto* scan_unique = scan->add_subcommand("unique-maximizer", "distinct nonlocal maximizers of B3 on its boundary");
    int grid = 9;
    scan_unique->add_option("--grid", grid, "number of a values in (0, 1)")->check(CLI::PositiveNumber);
    add_common(scan_unique, common);
    auto* scan_ne = scan->add_subcommand("non-exposed", "smooth joins of a preset figure");
    scan_ne->add_option("--preset", preset, "figure preset")->required();
    add_common(scan_ne, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? kOk : kInvalid;
    }

    try {
        if (*bounds) {
            auto f = functional_spec(fspec);
            auto q = quantum_bounds(f, level_of(common), restarts_or(common, 64), common.seed, common.tol);
            json j;
            j["functional"] = functional_summary(f);
            j["beta_L"] = local_bound(f).value;
            j["beta_Q_lower"] = q.lower.value;
            j["beta_Q_upper"] = q.upper.optimum;
            j["beta_NS"] = ns_bound(f).value;
            j["level"] = to_string(q.upper.level);
            finish(j, common);
            return kOk;
        }
        if (*classify_cmd) {
            ClassifyOptions opt;
            opt.tol = common.tol;
            opt.restarts = restarts_or(common, opt.restarts);
            opt.seed = common.seed;
            opt.level = level_of(common);
            json all = json::array();
            bool undecided = false;
            for (auto& s : fspecs) {
                auto r = classify(functional_spec(s), opt);
                undecided |= r.label == FaceClass::undecided;
                if (!common.json)
                    std::printf("%s: class %s  L %.12g  Q [%.12g, %.12g]  NS %.12g\n", s.c_str(),
                                to_string(r.label).c_str(), r.beta_L, r.beta_Q_lower, r.beta_Q_upper, r.beta_NS);
                all.push_back(report_json(r));
            }
            json j = {{"reports", all}};
            if (common.json) std::cout << dump(j);
            if (!common.out.empty()) write_text(common.out, dump(j));
            return common.strict && undecided ? kUndecided : kOk;
        }
        if (*slice) {
            SliceSpec sp;
            if (!preset.empty()) {
                if (!center.empty() || !dir1.empty() || !dir2.empty())
                    throw std::invalid_argument("--preset excludes --center/--dir1/--dir2");
                sp = slice_preset(preset);
            } else {
                if (center.empty() || dir1.empty() || dir2.empty())
                    throw std::invalid_argument("slice needs --preset or all of --center, --dir1, --dir2");
                sp.name = "slice";
                sp.center = behaviour_spec(center);
                auto d1 = behaviour_spec(dir1), d2 = behaviour_spec(dir2);
                if (d1.scenario != sp.center.scenario || d2.scenario != sp.center.scenario) throw ScenarioMismatch();
                sp.dir1 = d1.p - sp.center.p;
                sp.dir2 = d2.p - sp.center.p;
                sp.x_label = dir1;
                sp.y_label = dir2;
            }
            if (res) sp.resolution = res;
            if (!common.level.empty()) sp.level = parse_level(common.level);
            sp.restarts = restarts_or(common, sp.restarts);
            sp.seed = common.seed;
            return run_curve(slice_boundary(sp), common);
        }
        if (*project) {
            ProjectionSpec sp;
            if (!preset.empty()) {
                if (!f1.empty() || !f2.empty()) throw std::invalid_argument("--preset excludes --f1/--f2");
                sp = projection_preset(preset);
            } else {
                if (f1.empty() || f2.empty()) throw std::invalid_argument("project needs --preset or --f1 and --f2");
                sp.name = "projection";
                sp.f1 = functional_spec(f1);
                sp.f2 = functional_spec(f2);
                sp.x_label = f1;
                sp.y_label = f2;
            }
            if (res) sp.resolution = res;
            if (!common.level.empty()) sp.level = parse_level(common.level);
            sp.restarts = restarts_or(common, sp.restarts);
            sp.seed = common.seed;
            return run_curve(projection_boundary(sp), common);
        }
        if (*zoo_list) {
            json j = json::array();
            for (auto& n : zoo_names()) {
                auto& o = named(n);
                j.push_back({{"name", n},
                             {"kind", o.kind == Kind::behaviour ? "behaviour" : "functional"},
                             {"scenario", o.scenario.name()},
                             {"description", o.description}});
            }
            if (common.json) {
                std::cout << dump(j);
            } else {
                for (auto& e : j)
                    std::printf("%-11s %-10s %-9s %s\n", e["name"].get<std::string>().c_str(),
                                e["kind"].get<std::string>().c_str(), e["scenario"].get<std::string>().c_str(),
                                e["description"].get<std::string>().c_str());
            }
            if (!common.out.empty()) write_text(common.out, dump(j));
            return kOk;
        }
        if (*zoo_show) {
            auto& o = named(zname);
            json j = {{"name", o.name},
                      {"kind", o.kind == Kind::behaviour ? "behaviour" : "functional"},
                      {"scenario", to_json(o.scenario)},
                      {"description", o.description}};
            json exact = json::array();
            for (auto& r : o.exact) exact.push_back(r.str());
            j["exact_correlators"] = exact;
            if (o.behaviour) {
                j["correlators"] = corr_json(*o.behaviour);
                j["p"] = to_json(*o.behaviour)["p"];
            }
            if (o.functional) {
                j["correlators"] = to_json(*o.functional)["correlators"];
                j["g"] = to_json(*o.functional)["g"];
            }
            if (o.bounds) j["bounds"] = {{"beta_L", o.bounds->L}, {"beta_Q", o.bounds->Q}, {"beta_NS", o.bounds->NS}};
            finish(j, common);
            return kOk;
        }
        if (*hardy) {
            auto cert = hardy_exposure_lp();
            auto strs = [](const std::vector<Quad<5>>& v) {
                json a = json::array();
                for (auto& q : v) a.push_back(q.str());
                return a;
            };
            json j;
            j["primal"] = cert.lp_value.to_double();
            j["primal_exact"] = cert.lp_value.str();
            j["dual"] = cert.dual_value.to_double();
            j["dual_exact"] = cert.dual_value.str();
            j["dual_replay_ok"] = cert.reference_dual_feasible && cert.solver_dual_feasible;
            j["reference_dual_feasible"] = cert.reference_dual_feasible;
            j["solver_dual_feasible"] = cert.solver_dual_feasible;
            j["point"] = strs(cert.point);
            j["tangent"] = strs(cert.tangent);
            j["functional"] = strs(cert.functional);
            j["dual_tangent"] = cert.dual_tangent.str();
            j["conclusion"] = cert.conclusion;
            finish(j, common);
            return j["dual_replay_ok"].get<bool>() ? kOk : 1;
        }
        if (*ww) {
            auto face = ww_face(samples);
            auto f = zoo_functional("B8_ww");
            json j;
            j["functional"] = functional_summary(f);
            json pts = json::array();
            for (size_t i = 0; i < face.points.size(); ++i)
                pts.push_back({{"name", "P" + std::to_string(i + 1)},
                               {"value", bell_value(f, face.points[i])},
                               {"correlators", corr_json(face.points[i])}});
            j["points"] = pts;
            json fam = json::array();
            for (size_t i = 0; i < face.family.size(); ++i)
                fam.push_back({{"alpha", face.alphas[i]},
                               {"value", bell_value(f, face.family[i])},
                               {"correlators", corr_json(face.family[i])}});
            j["family"] = fam;
            // branch b + c = 3pi/4: the maximal GHZ eigenvector reproduces the family at alpha = pi - (b - c)
            double worst = 0;
            for (int i = 0; i < samples; ++i) {
                double b = M_PI / 4 + (M_PI / 4) * (i + 0.5) / samples;
                GhzFaceParams p{b, 3 * M_PI / 4 - b, GhzBranch::sum_3pi4};
                worst = std::max(worst, max_abs_diff(ww_branch_behaviour(p), ww_family(M_PI - (p.b - p.c))));
            }
            j["branch_max_deviation"] = worst;
            finish(j, common);
            return kOk;
        }
        if (*modulated) {
            auto m = modulated_chsh();
            json j;
            j["functional"] = functional_summary(m.functional);
            j["beta_L"] = m.bounds.L;
            j["beta_Q"] = m.bounds.Q;
            j["beta_NS"] = m.bounds.NS;
            j["endpoint1"] = corr_json(m.endpoint1);
            j["endpoint2"] = corr_json(m.endpoint2);
            json line = json::array();
            for (double t : {0.0, M_PI / 8, M_PI / 4, 3 * M_PI / 8, M_PI / 2}) {
                auto p = realization_to_behaviour(modulated_realization(t), m.functional.scenario);
                auto fit = segment_decompose(p, m.endpoint1, m.endpoint2);
                line.push_back({{"theta", t}, {"value", bell_value(m.functional, p)}, {"weight_endpoint2", fit.t},
                                {"residual", fit.residual}});
            }
            j["realized_line"] = line;
            j["note"] = "the face is a segment of biseparable points; genuine tripartite entanglement cannot be certified on it";
            finish(j, common);
            return kOk;
        }
        if (*mermin) {
            auto r = mermin_witness();
            finish(report_json(r), common);
            return common.strict && r.label == FaceClass::undecided ? kUndecided : kOk;
        }
        if (*scan_unique) {
            json rows = json::array();
            for (int i = 0; i < grid; ++i) {
                double a = (i + 1.0) / (grid + 1);
                double c = b3_cmax(a);
                auto r = seesaw_lower_bound(b3_functional(a, c), restarts_or(common, 64), common.seed);
                int nonlocal = 0;
                for (auto& p : r.all_optima) nonlocal += !local_membership(p).inside;
                rows.push_back({{"a", a}, {"c", c}, {"beta_Q_lower", r.value},
                                {"optima", int(r.all_optima.size())}, {"nonlocal_optima", nonlocal}});
            }
            json j = {{"label", "conjecture evidence"},
                      {"question", "B3 on its boundary curve has a unique nonlocal quantum maximizer"},
                      {"rows", rows}};
            finish(j, common);
            return kOk;
        }
        if (*scan_ne) {
            BoundaryCurve curve = is_projection_preset(preset) ? projection_boundary(projection_preset(preset))
                                                               : slice_boundary(slice_preset(preset));
            json joins = json::array();
            for (auto& f : kink_detect(curve))
                if (f.type == FeatureType::smooth_join)
                    joins.push_back({{"theta", f.theta}, {"point", {f.point.x(), f.point.y()}},
                                     {"slope_mismatch", f.slope_mismatch}});
            json j = {{"label", "conjecture evidence"},
                      {"question", "smooth joins of a flat boundary segment mark extremal points that are not exposed"},
                      {"preset", preset},
                      {"candidates", joins}};
            finish(j, common);
            return kOk;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 1;
    }
    return kOk;
}
