#pragma once

// S-integrality of finite point sets in P^1(Q).

#include <optional>
#include <set>
#include <vector>

#include "arborlab/exactcore.hpp"
#include "arborlab/zp.hpp"

namespace arborlab::integrality {

using exactcore::ProjPointQ;
using zp::u64;

// The archimedean place is always included; only finite primes are listed.
struct PlaceSet {
    std::set<Int> primes;
    bool includes_archimedean = true;
};

struct PairFailure {
    ProjPointQ x, y;
    Int p;  // a prime outside S where x and y share a reduction
};
struct IntegralityResult {
    bool integral = true;
    std::optional<PairFailure> witness;  // first failing pair, smallest prime
};

// Throws PreconditionError if X has repeated points.
IntegralityResult is_S_integral_set(const std::vector<ProjPointQ>& X, const PlaceSet& S);
PlaceSet minimal_S(const std::vector<ProjPointQ>& X);

// Distinct prime factors of |n|, ascending (trial division, then Pollard rho).
std::vector<Int> prime_factors(const Int& n);
// True iff every prime factor of n lies in S; n != 0.
bool is_S_unit(const Int& n, const PlaceSet& S);

// Brute-force count of rationals a/b with |a|, b <= N, a/b not in X, such that
// X with a/b added stays S-integral; infinity is tried once.
struct ExtensionCount {
    long N = 0;
    std::size_t count = 0;
    std::vector<ProjPointQ> points;
};
std::vector<ExtensionCount> extension_counts(const std::vector<ProjPointQ>& X, const PlaceSet& S,
                                             const std::vector<long>& bounds);

}  // namespace arborlab::integrality
