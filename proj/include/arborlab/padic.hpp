#pragma once

// Truncated p-adic integers, the projective metric, fixed residue discs,
// Hensel lifting of preimages and local backward orbits.

#include <optional>
#include <variant>
#include <vector>

#include "arborlab/orbits.hpp"
#include "arborlab/residue.hpp"

namespace arborlab::padic {

using exactcore::ProjPointQ;
using exactcore::RationalMap;
using residue::Place;
using zp::u64;

// The coset residue + p^k Z_p, residue in [0, p^k).
struct PadicInt {
    u64 p = 0;
    int k = 0;
    Int residue;

    Int modulus() const;
    u64 reduction() const;  // residue mod p
    friend bool operator==(const PadicInt& a, const PadicInt& b) {
        return a.p == b.p && a.k == b.k && a.residue == b.residue;
    }
};

Int power(u64 p, int k);
PadicInt make_padic(const Int& value, u64 p, int k);
// Image of an integral rational point; throws if p divides the denominator.
PadicInt make_padic(const ProjPointQ& pt, u64 p, int k);
// v_p(n); nullopt for n = 0.
std::optional<int> valuation(const Int& n, u64 p);

// delta_p(x, y) = |x1 y2 - x2 y1|_p for normalized coordinates; 0 iff x = y.
Rat proj_metric(const ProjPointQ& x, const ProjPointQ& y, const Place& v);

// f(x) at precision k for x in an affine disc where q(x) is a unit.
PadicInt eval_affine(const RationalMap& f, const PadicInt& x);

// Residue discs at infinity are handled in the chart 1/x; the fixed point is
// then reported in that coordinate.
struct Attracting {
    PadicInt fixed_point;
    bool chart_inverted = false;
};
struct UnitSurjective {
    u64 derivative = 0;  // reduced multiplier, nonzero
    bool chart_inverted = false;
};
struct NotFixed {
    u64 image = 0;
};
using DiscClass = std::variant<Attracting, UnitSurjective, NotFixed>;

// Requires good reduction at v. k caps at kMaxPrecision.
DiscClass classify_fixed_disc(const RationalMap& f, const Place& v, u64 residue, int k = 8);

constexpr int kMaxPrecision = 4096;

// gamma = seed mod p with f(gamma) = target at precision k, by Newton
// iteration on p(x) - target q(x). Throws PreconditionError when the seed does
// not map to the target residue or the local derivative is not a unit.
PadicInt hensel_lift_preimage(const RationalMap& f, const Place& v, const PadicInt& target, u64 seed_residue, int k);

struct BackwardOrbit {
    int period = 0;  // n: alpha mod p has exact period n
    bool chart_swapped = false;
    int precision = 0;  // requested k, raised until the points are distinct
    std::vector<PadicInt> points;  // alpha_0 = alpha, f^n(alpha_{j+1}) = alpha_j
};
// Requires check_conditions to pass at v, including the unit multiplier.
BackwardOrbit backward_orbit_local(const RationalMap& f, const ProjPointQ& alpha, const Place& v, int m, int k,
                                   const orbits::PcfCertificate& cert);
BackwardOrbit backward_orbit_local(const RationalMap& f, const ProjPointQ& alpha, const Place& v, int m, int k);

}  // namespace arborlab::padic
