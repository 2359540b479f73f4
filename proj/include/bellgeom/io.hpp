#pragma once
// JSON form of scenarios, behaviours, correlator tables and functionals.
//
// Behaviour: {"scenario": {"parties", "inputs", "outputs"}, "p": [input tuple][output tuple]}.
// Functional: the same with "g", or "correlators" holding coefficients in the correlator basis.
// Correlator tables are (m_A+1) x (m_B+1) nested arrays for two parties and flat otherwise.

#include <string>

#include "json.hpp"

#include "bellgeom/scenario.hpp"

namespace bellgeom {

using json = nlohmann::ordered_json;

json to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);

json to_json(const Behaviour& p);
json to_json(const CorrelatorTable& t);
json to_json(const BellFunctional& f);

// Accepts "p" or "correlators".
Behaviour behaviour_from_json(const json& j);
// Accepts "g" or "correlators".
BellFunctional functional_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace bellgeom
