#include "arborlab/integrality.hpp"

#include <algorithm>
#include <numeric>

#include "arborlab/error.hpp"
#include "arborlab/kernels.hpp"

namespace arborlab::integrality {

namespace {

Int det(const ProjPointQ& x, const ProjPointQ& y) { return x.x1() * y.x2() - x.x2() * y.x1(); }

bool probably_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
Int rho(const Int& n) {
    if (n % 2 == 0) return Int(2);
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        const auto f = [&](const Int& v) {
            Int r = v * v + c;
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
            return r;
        };
        std::size_t r = 1;
        const std::size_t m = 64;
        while (g == 1) {
            x = y;
            for (std::size_t i = 0; i < r; ++i) y = f(y);
            for (std::size_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                const Int diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(Int n, std::vector<Int>& out) {
    if (n == 1) return;
    if (probably_prime(n)) {
        out.push_back(n);
        return;
    }
    const Int d = rho(n);
    split(d, out);
    split(n / d, out);
}

}  // namespace

std::vector<Int> prime_factors(const Int& n0) {
    if (n0 == 0) throw PreconditionError("zero has no prime factorization");
    Int n = abs(n0);
    std::vector<Int> out;
    for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        out.emplace_back(p);
        while (n % p == 0) n /= p;
    }
    split(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_S_unit(const Int& n0, const PlaceSet& S) {
    if (n0 == 0) return false;
    Int n = abs(n0);
    for (const auto& p : S.primes)
        while (n % p == 0) n /= p;
    return n == 1;
}

IntegralityResult is_S_integral_set(const std::vector<ProjPointQ>& X, const PlaceSet& S) {
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            const Int D = det(X[i], X[j]);
            if (D == 0) throw PreconditionError("point set has a repeated point " + exactcore::to_string(X[i]));
            if (is_S_unit(D, S)) continue;
            for (const auto& p : prime_factors(D))
                if (!S.primes.count(p)) return {false, PairFailure{X[i], X[j], p}};
        }
    return {};
}

PlaceSet minimal_S(const std::vector<ProjPointQ>& X) {
    PlaceSet S;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            const Int D = det(X[i], X[j]);
            if (D == 0) throw PreconditionError("point set has a repeated point " + exactcore::to_string(X[i]));
            for (const auto& p : prime_factors(D)) S.primes.insert(p);
        }
    return S;
}

std::vector<ExtensionCount> extension_counts(const std::vector<ProjPointQ>& X, const PlaceSet& S,
                                             const std::vector<long>& bounds) {
    const auto admissible = [&](const ProjPointQ& g) {
        for (const auto& x : X) {
            const Int D = det(g, x);
            if (D == 0 || !is_S_unit(D, S)) return false;
        }
        return true;
    };
    std::vector<ExtensionCount> out;
    for (long N : bounds) {
        ExtensionCount ec;
        ec.N = N;
        // One row of candidates per denominator, scanned in parallel.
        const auto rows = kernels::map<std::vector<ProjPointQ>>(static_cast<std::size_t>(N), [&](std::size_t i) {
            const long b = static_cast<long>(i) + 1;
            std::vector<ProjPointQ> hits;
            for (long a = -N; a <= N; ++a) {
                if (std::gcd(a, b) != 1) continue;
                const ProjPointQ g{Int(a), Int(b)};
                if (admissible(g)) hits.push_back(g);
            }
            return hits;
        });
        if (admissible(ProjPointQ::infinity())) ec.points.push_back(ProjPointQ::infinity());
        for (const auto& r : rows) ec.points.insert(ec.points.end(), r.begin(), r.end());
        ec.count = ec.points.size();
        out.push_back(std::move(ec));
    }
    return out;
}

}  // namespace arborlab::integrality
