#pragma once
// Analytic quantum-set tools: TLM criterion, sum-of-squares verification, B6 family.

#include <map>
#include <string>
#include <vector>

#include "bellgeom/exact.hpp"
#include "bellgeom/npa.hpp"
#include "bellgeom/qubit.hpp"
#include "bellgeom/scenario.hpp"

namespace bellgeom {

struct TlmResult {
    bool member = false;
    double lhs = 0;
};
// 1 + prod E + prod sqrt(1 - E^2) - 1/2 sum E^2 over the four 2222 correlators.
double tlm_lhs(double e00, double e01, double e10, double e11);
// Requires zero marginals (throws std::invalid_argument otherwise).
TlmResult tlm_check(const CorrelatorTable& c, double tol = 1e-10);

// Noncommutative polynomials in +-1 observables with rational coefficients.
// Words are kept in operator normal form (party-sorted, squares cancelled), no transposition.
using NcPoly = std::map<Word, Rational>;
NcPoly nc_normal(const NcPoly& p);
NcPoly nc_mul(const NcPoly& a, const NcPoly& b);
NcPoly nc_adjoint(const NcPoly& a);
NcPoly nc_add(const NcPoly& a, const NcPoly& b, const Rational& scale = 1);
NcPoly nc_letter(int party, int input, const Rational& coef = 1);

struct SosReport {
    bool ok = false;
    std::vector<std::pair<std::string, Rational>> residual;  // nonzero words of expansion - target
    NcPoly expansion;
};
// Checks weight * sum_j V_j^dag V_j == target word by word.
SosReport verify_sos(const std::vector<NcPoly>& V, const Rational& weight, const NcPoly& target);
std::vector<NcPoly> b6_sos_terms();
NcPoly b6_shifted_operator();  // 5 * 1 - W
SosReport verify_sos_b6();

BellFunctional b6_functional();
QubitRealization b6_realization(double alpha);
Behaviour b6_family(double alpha);

}  // namespace bellgeom
