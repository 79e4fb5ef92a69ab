#pragma once

// Heights, exact orbit classification over Q, exceptional points, canonical
// height estimates and post-critical finiteness certificates.

#include <optional>
#include <variant>
#include <vector>

#include "arborlab/exactcore.hpp"

namespace arborlab::orbits {

using exactcore::AlgebraicPointSet;
using exactcore::ProjPointQ;
using exactcore::RationalMap;

struct Preperiodic {
    int tail = 0;
    int period = 1;
};
struct Wandering {
    int escape_index = 0;
    double escape_height = 0;
};
using OrbitClass = std::variant<Preperiodic, Wandering>;

// |h(f(P)) - d h(P)| <= C on P^1(Qbar); heights above `threshold` = C/(d-1)
// force a positive canonical height.
struct HeightBound {
    double C = 0;
    double threshold = 0;
    double upper_part = 0;  // from coefficient size
    double lower_part = 0;  // from the Nullstellensatz identities for Res(P, Q)
};
HeightBound height_bound(const RationalMap& f);

double weil_height(const ProjPointQ& pt);

OrbitClass classify_orbit(const RationalMap& f, const ProjPointQ& alpha);
inline bool is_strictly_preperiodic(const OrbitClass& c) {
    const auto* pp = std::get_if<Preperiodic>(&c);
    return pp && pp->tail > 0;
}

bool is_exceptional(const RationalMap& f, const ProjPointQ& alpha);

struct HeightEstimate {
    double value = 0;
    double error_bound = 0;
};
HeightEstimate canonical_height(const RationalMap& f, const ProjPointQ& alpha, int n);

// A Galois orbit of points in P^1(Qbar): infinity, or the roots of a
// primitive irreducible integer polynomial.
struct PointClass {
    bool infinity = false;
    IntPoly minpoly;

    static PointClass at_infinity() { return {true, {}}; }
    static PointClass of(const ProjPointQ& pt);
    int degree() const { return infinity ? 1 : minpoly.degree(); }
    friend bool operator==(const PointClass& a, const PointClass& b) {
        return a.infinity == b.infinity && a.minpoly == b.minpoly;
    }
};
std::string to_string(const PointClass& c);

// Image of a Galois orbit under f (again a single Galois orbit).
PointClass push_forward(const RationalMap& f, const PointClass& c);

// Rigorous bounds on the Weil height of any member of the class, from
// coefficient bounds on the Mahler measure of its minimal polynomial.
struct ClassHeight {
    double lower = 0;
    double upper = 0;
};
ClassHeight class_height(const PointClass& c);

struct CriticalOrbit {
    PointClass critical;
    int multiplicity = 0;  // ramification index minus one, per point
    std::vector<PointClass> orbit;  // critical, f(critical), ...
    bool preperiodic = false;
    int tail = 0;          // in classes; 0 iff the points are periodic
    int class_period = 0;
    int period = 0;        // exact f-period of each point when tail == 0
    std::optional<int> escape_step;  // set when the orbit is certified wandering
    double escape_lower_height = 0;
};

struct PcfCertificate {
    bool is_pcf = false;
    std::vector<CriticalOrbit> critical_orbits;
    // postcritical[i] = f^(i+1)(critical set), up to stabilization.
    std::vector<AlgebraicPointSet> postcritical;
    std::vector<int> periodic_critical_periods;
    int M = 0;
    HeightBound bound;
};

// Throws ResourceLimit when neither branch certifies within `cap` steps.
PcfCertificate pcf_certify(const RationalMap& f, int cap = 64);

}  // namespace arborlab::orbits
