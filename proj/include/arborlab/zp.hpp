#pragma once

// Polynomials over F_p for word-size primes (p < 2^31).

#include <cstdint>
#include <utility>
#include <vector>

#include "arborlab/poly.hpp"

namespace arborlab::zp {

using u64 = std::uint64_t;
// Coefficients low degree first, trimmed; empty = zero polynomial.
using Poly = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 p);
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);
u64 reduce(const Int& v, u64 p);  // canonical residue in [0, p)

bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 n);

void trim(Poly& f);
inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }
Poly from_int(const IntPoly& f, u64 p);

Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
Poly scale(const Poly& a, u64 s, u64 p);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p);
Poly rem(const Poly& a, const Poly& b, u64 p);
Poly monic(const Poly& a, u64 p);
Poly gcd(const Poly& a, const Poly& b, u64 p);  // monic
Poly derivative(const Poly& a, u64 p);
u64 eval(const Poly& a, u64 x, u64 p);
// base^e mod m, m nonconstant.
Poly powmod(const Poly& base, const Int& e, const Poly& m, u64 p);

// Distinct roots in F_p, ascending.
std::vector<u64> roots(const Poly& f, u64 p);

struct Factor {
    Poly poly;  // monic irreducible
    int multiplicity;
};

// Complete factorization of a nonzero polynomial: f = lead * prod factors.
// Factors are sorted by (degree, coefficients).
struct Factorization {
    u64 lead = 0;
    std::vector<Factor> factors;
};
Factorization factor(const Poly& f, u64 p);

// Degrees of the irreducible factors of a squarefree f (distinct-degree
// factorization only), ascending.
std::vector<int> factor_degrees_squarefree(const Poly& f, u64 p);

}  // namespace arborlab::zp
