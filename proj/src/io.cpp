#include "bellgeom/io.hpp"

#include <fstream>
#include <stdexcept>

namespace bellgeom {

namespace {

json nested(const Scenario& s, const Vec<double>& v) {
    json out = json::array();
    for (int xi = 0; xi < s.input_tuples(); ++xi) {
        json row = json::array();
        for (int ai = 0; ai < s.output_tuples(); ++ai) row.push_back(v[s.index(xi, ai)]);
        out.push_back(row);
    }
    return out;
}

Vec<double> flat_from_nested(const Scenario& s, const json& j, const char* what) {
    if (!j.is_array() || int(j.size()) != s.input_tuples())
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(s.input_tuples()) + " input rows");
    Vec<double> v(s.dim());
    for (int xi = 0; xi < s.input_tuples(); ++xi) {
        const json& row = j[xi];
        if (!row.is_array() || int(row.size()) != s.output_tuples())
            throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(s.output_tuples()) +
                                        " entries per input row");
        for (int ai = 0; ai < s.output_tuples(); ++ai) v[s.index(xi, ai)] = row[ai].get<double>();
    }
    return v;
}

Vec<double> corr_vector(const Scenario& s, const json& j) {
    Vec<double> c(s.corr_dim());
    if (s.parties() == 2 && j.is_array() && !j.empty() && j[0].is_array()) {
        int ra = s.inputs(0) + 1, rb = s.inputs(1) + 1;
        if (int(j.size()) != ra) throw std::invalid_argument("correlators: expected " + std::to_string(ra) + " rows");
        for (int i = 0; i < ra; ++i) {
            if (!j[i].is_array() || int(j[i].size()) != rb)
                throw std::invalid_argument("correlators: expected " + std::to_string(rb) + " columns");
            for (int k = 0; k < rb; ++k) c[s.encode_corr({i, k})] = j[i][k].get<double>();
        }
        return c;
    }
    if (!j.is_array() || int(j.size()) != s.corr_dim())
        throw std::invalid_argument("correlators: expected " + std::to_string(s.corr_dim()) + " entries");
    for (int i = 0; i < s.corr_dim(); ++i) c[i] = j[i].get<double>();
    return c;
}

}  // namespace

json to_json(const Scenario& s) {
    return {{"parties", s.parties()}, {"inputs", s.inputs()}, {"outputs", std::vector<int>(s.parties(), 2)}};
}

Scenario scenario_from_json(const json& j) {
    if (j.is_string()) {
        // compact "2222" form for two parties
        std::string t = j.get<std::string>();
        if (t.size() == 4 && t[1] == '2' && t[3] == '2') return Scenario({t[0] - '0', t[2] - '0'});
        throw std::invalid_argument("scenario: unrecognised name '" + t + "'");
    }
    if (!j.is_object() || !j.contains("inputs")) throw std::invalid_argument("scenario: missing \"inputs\"");
    auto in = j.at("inputs").get<std::vector<int>>();
    if (j.contains("parties") && j.at("parties").get<int>() != int(in.size()))
        throw std::invalid_argument("scenario: \"parties\" disagrees with \"inputs\"");
    std::vector<int> out;
    if (j.contains("outputs")) out = j.at("outputs").get<std::vector<int>>();
    return Scenario(in, out);
}

json to_json(const Behaviour& p) { return {{"scenario", to_json(p.scenario)}, {"p", nested(p.scenario, p.p)}}; }

json to_json(const CorrelatorTable& t) {
    const Scenario& s = t.scenario;
    json c = json::array();
    if (s.parties() == 2) {
        for (int i = 0; i <= s.inputs(0); ++i) {
            json row = json::array();
            for (int k = 0; k <= s.inputs(1); ++k) row.push_back(t[{i, k}]);
            c.push_back(row);
        }
    } else {
        for (int i = 0; i < s.corr_dim(); ++i) c.push_back(t.c[i]);
    }
    return {{"scenario", to_json(s)}, {"correlators", c}};
}

json to_json(const BellFunctional& f) {
    json j = {{"scenario", to_json(f.scenario)}};
    if (!f.name.empty()) j["name"] = f.name;
    j["g"] = nested(f.scenario, f.g);
    CorrelatorTable w(f.scenario, correlator_coefficients(f));
    j["correlators"] = to_json(w)["correlators"];
    return j;
}

Behaviour behaviour_from_json(const json& j) {
    if (!j.is_object() || !j.contains("scenario")) throw std::invalid_argument("behaviour: missing \"scenario\"");
    Scenario s = scenario_from_json(j.at("scenario"));
    Behaviour p;
    if (j.contains("p"))
        p = Behaviour(s, flat_from_nested(s, j.at("p"), "behaviour"));
    else if (j.contains("correlators"))
        p = corr_to_prob(CorrelatorTable(s, corr_vector(s, j.at("correlators"))));
    else
        throw std::invalid_argument("behaviour: needs \"p\" or \"correlators\"");
    if (normalisation_error(p) > 1e-9) throw std::invalid_argument("behaviour: rows are not normalised");
    return p;
}

BellFunctional functional_from_json(const json& j) {
    if (!j.is_object() || !j.contains("scenario")) throw std::invalid_argument("functional: missing \"scenario\"");
    Scenario s = scenario_from_json(j.at("scenario"));
    std::string name = j.value("name", std::string());
    if (j.contains("g")) return BellFunctional(s, flat_from_nested(s, j.at("g"), "functional"), name);
    if (j.contains("correlators")) return from_correlators(s, corr_vector(s, j.at("correlators")), name);
    throw std::invalid_argument("functional: needs \"g\" or \"correlators\"");
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

}  // namespace bellgeom
