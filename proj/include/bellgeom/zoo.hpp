#pragma once
// Catalog of named behaviours and functionals, and the B3 family.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellgeom/exact.hpp"
#include "bellgeom/qubit.hpp"
#include "bellgeom/scenario.hpp"

namespace bellgeom {

// a + b sqrt(d), evaluated once at 50 digits.
struct Radical {
    Rational a = 0, b = 0;
    int d = 1;
    double value() const;
    std::string str() const;
};

struct Bounds {
    double L = 0, Q = 0, NS = 0;
};

enum class Kind { behaviour, functional };

struct NamedObject {
    std::string name;
    Kind kind = Kind::behaviour;
    Scenario scenario;
    std::vector<Radical> exact;  // correlator basis (entry 0: 1 for behaviours, constant for functionals)
    std::optional<Behaviour> behaviour;
    std::optional<BellFunctional> functional;
    std::optional<Bounds> bounds;
    std::string description;
};

struct UnknownName : std::invalid_argument {
    explicit UnknownName(const std::string& n) : std::invalid_argument("unknown zoo name '" + n + "'") {}
};

const NamedObject& named(const std::string& name);
std::vector<std::string> zoo_names();

// Behaviour or functional by name (throws when the kind does not match).
Behaviour zoo_behaviour(const std::string& name);
BellFunctional zoo_functional(const std::string& name);

// B3 family: [0, -a, 1; -a, c, c; 1, c, -(c + 1 - 2a)].
BellFunctional b3_functional(double a, double c);
Bounds b3_bounds(double a, double c);
// Left minus right side of the (a, c) region inequality; >= 0 inside.
double b3_region(double a, double c);
// Largest root of b3_region(a, .) on [a, 2].
double b3_cmax(double a);

struct B3Maximizer {
    double a = 0, c = 0;
    double beta_q = 0;
    double beta_chsh = 0;
    double lambda = 0;       // squared larger Schmidt coefficient
    double phi = 0;          // angle between Alice's observables, degrees
    double phi_bob = 0;
    bool found = false;
    QubitRealization realization;
    Behaviour behaviour;
};
B3Maximizer b3_nonlocal_maximizer(double a, int restarts = 64, std::uint64_t seed = 1);

}  // namespace bellgeom
