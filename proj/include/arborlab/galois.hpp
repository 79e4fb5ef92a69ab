#pragma once

// Factorization over F_p, Q and simple number fields Q[t]/(G), and the exact
// abelian / nonabelian decision for the splitting field of an irreducible
// polynomial.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "arborlab/poly.hpp"
#include "arborlab/zp.hpp"

namespace arborlab::galois {

// ---- Q[x] ----

struct FactorizationQ {
    Rat unit;
    // Primitive irreducible factors with positive leading coefficient,
    // sorted by (degree, coefficients).
    std::vector<std::pair<IntPoly, int>> factors;

    IntPoly product() const;  // unit * prod factors^mult, requires integral unit
};

zp::Factorization factor_mod_p(const zp::Poly& g, zp::u64 p);

// Zassenhaus: squarefree split, modular factorization, Hensel lifting to the
// Mignotte bound and subset recombination. Throws ResourceLimit if the
// recombination budget is exhausted.
FactorizationQ factor_over_Q(const IntPoly& g);
bool is_irreducible(const IntPoly& g);

// Process-wide memo consulted by factor_over_Q. Implementations must be safe
// for concurrent use.
class FactorStore {
public:
    virtual ~FactorStore() = default;
    virtual std::optional<FactorizationQ> lookup(const IntPoly& key) = 0;
    virtual void store(const IntPoly& key, const FactorizationQ& value) = 0;
};
void set_factor_store(std::shared_ptr<FactorStore> store);
std::shared_ptr<FactorStore> factor_store();

// ---- number fields ----

// K = Q[t]/(G) for irreducible G. Elements are rational polynomials in t of
// degree < deg G.
class NumberField {
public:
    explicit NumberField(const IntPoly& defining);  // G must be irreducible

    const IntPoly& defining() const { return defining_; }
    const RatPoly& modulus() const { return monic_; }
    int degree() const { return monic_.degree(); }

    RatPoly reduce(const RatPoly& a) const;
    RatPoly mul(const RatPoly& a, const RatPoly& b) const;
    RatPoly inv(const RatPoly& a) const;
    RatPoly generator() const { return RatPoly::x(); }
    // a(b(t)) mod G: substitute the field element b into the polynomial a.
    RatPoly substitute(const RatPoly& a, const RatPoly& b) const;

private:
    IntPoly defining_;
    RatPoly monic_;
};

// Polynomial in x over K, low degree first.
using NfPoly = std::vector<RatPoly>;

NfPoly nf_from_rational(const RatPoly& g);
NfPoly nf_mul(const NumberField& K, const NfPoly& a, const NfPoly& b);
std::pair<NfPoly, NfPoly> nf_divmod(const NumberField& K, const NfPoly& a, const NfPoly& b);
NfPoly nf_gcd(const NumberField& K, const NfPoly& a, const NfPoly& b);  // monic
// Substitute a field element for x.
RatPoly nf_eval(const NumberField& K, const NfPoly& f, const RatPoly& at);
std::string to_string(const NfPoly& f);  // coefficients printed as polynomials in t

struct FactorizationNf {
    RatPoly unit;
    std::vector<std::pair<NfPoly, int>> factors;  // monic irreducible over K
    int shift = 0;  // norm shift s used for the last squarefree block
};

// Trager's norm method.
FactorizationNf factor_over_nf(const IntPoly& g, const NumberField& K);

// ---- abelian decision ----

struct NotNormal {
    NfPoly nonlinear_factor;
};
struct NonCommutingPair {
    int i = 0, j = 0;
    RatPoly first, second;  // the two root maps that fail to commute
};
struct UnequalDegrees {
    zp::u64 p = 0;
    std::vector<int> degrees;
};

struct Abelian {
    // Root maps t -> r_i(t) mod G, one per root of G in K; identity first.
    std::vector<RatPoly> root_maps;
};
struct NonAbelian {
    std::variant<NotNormal, NonCommutingPair, UnequalDegrees> witness;
};
using GaloisVerdict = std::variant<Abelian, NonAbelian>;

inline bool is_abelian(const GaloisVerdict& v) { return std::holds_alternative<Abelian>(v); }

GaloisVerdict is_abelian_galois(const IntPoly& G);

// Smallest unramified prime p <= pmax at which G factors with unequal degrees.
std::optional<UnequalDegrees> unequal_degree_witness(const IntPoly& G, zp::u64 pmax);
// Degree pattern at p, or nullopt when p divides lc(G) * disc(G).
std::optional<std::vector<int>> unramified_degree_pattern(const IntPoly& G, zp::u64 p);

// Independent re-verification of a verdict for G. Returns an empty string on
// success, a reason otherwise.
std::string verify_verdict(const IntPoly& G, const GaloisVerdict& verdict);

std::string describe(const GaloisVerdict& v);

}  // namespace arborlab::galois
