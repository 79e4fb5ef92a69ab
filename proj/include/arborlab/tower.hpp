#pragma once

// Arboreal towers: level polynomials, per-level abelian verdicts, the
// power / Chebyshev families, affine conjugacy and the witness pipeline.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arborlab/error.hpp"
#include "arborlab/galois.hpp"
#include "arborlab/orbits.hpp"
#include "arborlab/padic.hpp"
#include "arborlab/residue.hpp"

namespace arborlab::tower {

using exactcore::ProjPointQ;
using exactcore::RationalMap;
using zp::u64;

struct LevelPolynomial {
    IntPoly F;             // primitive; roots are the finite points of f^-n(alpha)
    int degree_drop = 0;   // d^n - deg F: multiplicity of infinity among the preimages
};
LevelPolynomial level_polynomial(const RationalMap& f, const ProjPointQ& alpha, int n);

struct FactorVerdict {
    IntPoly factor;
    int multiplicity = 1;
    galois::GaloisVerdict verdict;
    bool from_degree_pattern = false;  // decided by an unequal-degree prime, not by root maps
};

struct TowerLevel {
    int n = 0;
    IntPoly F;
    int degree_drop = 0;
    galois::FactorizationQ factorization;
    std::vector<FactorVerdict> verdicts;
    bool level_abelian = true;
};

struct TowerOptions {
    int degree_cap = 64;     // largest d^n analysed
    u64 witness_pmax = 1000; // range of the unequal-degree fast path
};

// Levels 1..n_max, stopping after the first nonabelian level. Throws
// PreconditionError for exceptional alpha and ResourceLimit when d^n_max
// exceeds the degree cap.
std::vector<TowerLevel> analyze_tower(const RationalMap& f, const ProjPointQ& alpha, int n_max,
                                      const TowerOptions& opts = {});

// T_d with T_d(z + 1/z) = z^d + z^-d.
IntPoly chebyshev(int d);

struct Powering {
    Rat beta, c;  // f = c (x - beta)^d + beta
};
struct ChebyshevPlus {};
struct ChebyshevMinus {};
struct NoFamily {};
using FamilyTag = std::variant<Powering, ChebyshevPlus, ChebyshevMinus, NoFamily>;
FamilyTag detect_family(const RationalMap& f);
std::string to_string(const FamilyTag& t);

// An algebraic number given by its minimal polynomial and its index among the
// complex roots sorted by (real part, imaginary part).
struct AlgebraicNumber {
    IntPoly minpoly;
    int root_index = 0;
};
std::string to_string(const AlgebraicNumber& a);

// phi(x) = a x + b with g = phi^-1 o f o phi. a and b are also recorded as
// elements of K = Q[t]/(field) with a = t, which is how identities are checked.
struct AffineMapAlg {
    AlgebraicNumber a, b;
    IntPoly field;
    RatPoly a_in_field, b_in_field;
};
std::vector<AffineMapAlg> affine_conjugators(const RationalMap& f, const RationalMap& g);
// Exact check of f(a x + b) = a g(x) + b in K[x].
bool verify_conjugator(const RationalMap& f, const RationalMap& g, const AffineMapAlg& phi);

struct TowerEvidence {
    int level = 0;
    IntPoly factor;
    galois::NonAbelian witness;
};

struct WitnessOptions {
    int lift_count = 2;  // backward-orbit points beyond alpha
    int precision = 6;
    TowerOptions tower;
};

struct WitnessCertificate {
    RationalMap map;
    ProjPointQ point;
    residue::Place prime;
    int M = 0;
    residue::ConditionReport report;
    padic::BackwardOrbit lifts;
    std::vector<TowerLevel> tower;
    std::optional<TowerEvidence> tower_evidence;
};

class NoWitnessFound : public Error {
public:
    NoWitnessFound(u64 pmax, std::vector<std::pair<u64, std::string>> reasons);
    u64 pmax() const { return pmax_; }
    const std::vector<std::pair<u64, std::string>>& reasons() const { return reasons_; }

private:
    u64 pmax_;
    std::vector<std::pair<u64, std::string>> reasons_;
};

// Requires f PCF, alpha wandering and not exceptional (PreconditionError).
WitnessCertificate witness_pipeline(const RationalMap& f, const ProjPointQ& alpha, u64 pmax, int n_max,
                                    const WitnessOptions& opts = {});

// Recomputes every part of the certificate from scratch. Empty string when
// it agrees, otherwise the first disagreement.
std::string verify_certificate(const WitnessCertificate& cert);

}  // namespace arborlab::tower
