#pragma once

// Independent reference computations used by the unit and acceptance tests.
// They deliberately avoid the library's algorithms: trial division instead of
// Zassenhaus, plain iteration instead of functional graphs.

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "arborlab/poly.hpp"

namespace oracle {

using arborlab::Int;
using arborlab::IntPoly;

inline std::vector<long> divisors(long n) {
    std::vector<long> out;
    n = std::labs(n);
    for (long k = 1; k <= n; ++k)
        if (n % k == 0) out.push_back(k);
    return out;
}

inline IntPoly make(std::vector<long> c) {
    std::vector<Int> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(v);
}

// Exact division of integer polynomials; false if b does not divide a in Z[x].
inline bool divides(const IntPoly& a, const IntPoly& b, IntPoly& q) {
    std::vector<Int> r = a.coeffs();
    const int db = b.degree(), da = a.degree();
    if (da < db) return false;
    std::vector<Int> qc(static_cast<std::size_t>(da - db + 1));
    for (int i = da; i >= db; --i) {
        const Int c = r[static_cast<std::size_t>(i)];
        if (c % b.lead() != 0) return false;
        const Int t = c / b.lead();
        qc[static_cast<std::size_t>(i - db)] = t;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= t * b.coeff(static_cast<std::size_t>(j));
    }
    for (const auto& c : r)
        if (c != 0) return false;
    q = IntPoly(qc);
    return true;
}

// Factorization into primitive irreducibles (positive leading coefficient)
// of a primitive polynomial of degree <= 4 with small coefficients, by trial
// division over every candidate of degree 1 and 2. Repeated factors appear
// repeatedly; the result is sorted.
inline std::vector<IntPoly> trial_factor(IntPoly f) {
    std::vector<IntPoly> out;
    for (bool progress = true; progress && f.degree() >= 2;) {
        progress = false;
        const long lc = std::labs(f.lead().get_si());
        const long c0 = f.coeff(0).get_si();
        // Linear factors a x + b: a | lc, b | c0 (b = 0 allowed when c0 = 0).
        std::vector<long> bs = c0 == 0 ? std::vector<long>{0} : divisors(c0);
        for (long a : divisors(lc)) {
            for (long b0 : bs) {
                for (long b : {b0, -b0}) {
                    IntPoly cand = make({b, a});
                    if (arborlab::content(cand) != 1 && arborlab::content(cand) != -1) continue;
                    IntPoly q;
                    if (divides(f, cand, q)) {
                        out.push_back(cand);
                        f = q;
                        progress = true;
                        break;
                    }
                    if (b == 0) break;
                }
                if (progress) break;
            }
            if (progress) break;
        }
        if (progress || f.degree() < 4) continue;
        // Quadratic factors a x^2 + b x + c. Any factor's coefficients are
        // bounded by binom(2, j) * ||f||_2 <= 2 * sqrt(5) * 5 < 23.
        for (long a : divisors(lc)) {
            for (long c0d : divisors(c0)) {
                for (long c : {c0d, -c0d}) {
                    for (long b = -23; b <= 23 && !progress; ++b) {
                        IntPoly cand = make({c, b, a});
                        IntPoly q;
                        if (divides(f, cand, q)) {
                            out.push_back(arborlab::primitive_part(cand));
                            f = q;
                            progress = true;
                        }
                    }
                    if (progress) break;
                }
                if (progress) break;
            }
            if (progress) break;
        }
    }
    if (f.degree() >= 1) out.push_back(arborlab::primitive_part(f));
    std::sort(out.begin(), out.end(), [](const IntPoly& x, const IntPoly& y) {
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        return x.coeffs() < y.coeffs();
    });
    return out;
}

}  // namespace oracle
