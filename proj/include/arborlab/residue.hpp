#pragma once

// Reduction of maps and points modulo primes, functional graphs on P^1(F_p),
// the periodic-reduction place search and the witness-prime condition check.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arborlab/exactcore.hpp"
#include "arborlab/orbits.hpp"
#include "arborlab/zp.hpp"

namespace arborlab::residue {

using exactcore::ProjPointQ;
using exactcore::RationalMap;
using zp::u64;

// A finite place of Q. eps = |p|_p = 1/p.
struct Place {
    u64 p = 0;
    Rat eps() const { return Rat(1, static_cast<unsigned long>(p)); }
};
// Throws PreconditionError unless p is a prime below 2^31.
Place make_place(u64 p);

// Points of P^1(F_p) are indexed 0..p-1 (affine) and p (infinity).
u64 reduce_point(const ProjPointQ& pt, u64 p);
std::string residue_to_string(u64 idx, u64 p);

// Determinant of the 2d x 2d Sylvester matrix of the degree-d forms P, Q.
Int homogeneous_resultant(const RationalMap& f);

struct BadReduction {
    u64 p = 0;
    Int resultant;
    int valuation = 0;  // v_p(resultant) >= 1
};

// Graphs are stored densely up to this size of P^1(F_p).
constexpr u64 kDenseGraphLimit = u64{1} << 20;

class ReducedMap {
public:
    ReducedMap(const RationalMap& f, u64 p, bool dense_graph);

    u64 prime() const { return p_; }
    int degree() const { return d_; }
    const zp::Poly& pbar() const { return pbar_; }
    const zp::Poly& qbar() const { return qbar_; }
    u64 infinity() const { return p_; }
    bool has_dense_graph() const { return !graph_.empty(); }
    const std::vector<std::uint32_t>& graph() const { return graph_; }

    // Image of point index i.
    u64 step(u64 i) const { return graph_.empty() ? eval(i) : graph_[i]; }
    u64 eval(u64 i) const;
    // Derivative of f at i in the chart x (i affine) or 1/x (i = infinity),
    // measured in the chart of the image.
    u64 local_derivative(u64 i) const;

private:
    u64 p_;
    int d_;
    zp::Poly pbar_, qbar_, dp_, dq_;
    u64 pd_, pd1_, qd_, qd1_;  // coefficients of x^d and x^(d-1)
    std::vector<std::uint32_t> graph_;
};

// Builds the dense successor array with the serial or the OpenMP kernel.
std::vector<std::uint32_t> functional_graph_serial(const ReducedMap& fbar);
std::vector<std::uint32_t> functional_graph_omp(const ReducedMap& fbar);

using Reduction = std::variant<ReducedMap, BadReduction>;
// Good reduction iff the homogeneous resultant is a unit mod p.
Reduction reduce_map(const RationalMap& f, const Place& v, bool dense_graph = true);
inline bool is_good(const Reduction& r) { return std::holds_alternative<ReducedMap>(r); }

struct CycleData {
    int tail = 0;
    int period = 1;
    std::vector<u64> cycle_points;  // f^tail(pt), f^(tail+1)(pt), ...
    u64 multiplier = 0;             // product of local derivatives around the cycle
};
// Brent cycle detection from pt.
CycleData orbit_mod_p(const ReducedMap& fbar, u64 pt);

struct PeriodicPlace {
    Place place;
    CycleData cycle;
};
struct PlaceScan {
    std::vector<PeriodicPlace> places;
    bool chart_swapped = false;         // alpha = infinity, searched for 0 under 1/f(1/x)
    bool strictly_preperiodic = false;  // the search hypothesis fails; results still listed
};
// Primes p <= pmax with good reduction, alpha integral at p and alpha mod p
// periodic.
PlaceScan find_periodic_places(const RationalMap& f, const ProjPointQ& alpha, u64 pmax);

struct ConditionReport {
    u64 p = 0;
    int d = 0;
    int M = 0;
    bool chart_swapped = false;
    bool A = false, B = false, C = false, D = false, E = false;
    bool unit_multiplier = false;

    std::optional<BadReduction> bad;  // evidence when B fails
    u64 alpha_residue = 0;
    std::optional<CycleData> cycle;   // present when B holds
    std::vector<u64> orbit_prefix;    // f^i(alpha) mod p for i < M
    std::vector<u64> critical_residues;  // reduced critical points in P^1(F_p)
    bool every_point_critical = false;   // reduced Wronskian vanishes identically
    std::vector<std::string> failures;

    bool all_pass() const { return A && B && C && D && E && unit_multiplier; }
};
ConditionReport check_conditions(const RationalMap& f, const ProjPointQ& alpha, const Place& v,
                                 const orbits::PcfCertificate& cert);

// Moves alpha = infinity to 0 by conjugating with 1/x; identity otherwise.
std::pair<RationalMap, ProjPointQ> affine_chart(const RationalMap& f, const ProjPointQ& alpha);

}  // namespace arborlab::residue
