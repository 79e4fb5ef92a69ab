#include "arborlab/zp.hpp"

#include <algorithm>
#include <random>

#include "arborlab/error.hpp"

namespace arborlab::zp {

u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw Error("inverse of zero mod p");
    return powmod(a, p - 2, p);
}

u64 reduce(const Int& v, u64 p) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return r.get_ui();
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly from_int(const IntPoly& f, u64 p) {
    Poly r;
    r.reserve(f.size());
    for (const auto& c : f.coeffs()) r.push_back(reduce(c, p));
    trim(r);
    return r;
}

Poly add(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, u64 s, u64 p) {
    Poly r(a);
    for (auto& v : r) v = mulmod(v, s, p);
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p) {
    if (b.empty()) throw Error("division by zero polynomial mod p");
    if (a.size() < b.size()) return {Poly{}, a};
    Poly r(a);
    const std::size_t db = b.size() - 1;
    Poly q(a.size() - db, 0);
    const u64 inv = invmod(b.back(), p);
    for (std::size_t i = a.size(); i-- > db;) {
        if (r[i] == 0) continue;
        u64 t = mulmod(r[i], inv, p);
        q[i - db] = t;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + p - mulmod(t, b[j], p)) % p;
    }
    r.resize(db);
    trim(r);
    trim(q);
    return {q, r};
}

Poly rem(const Poly& a, const Poly& b, u64 p) { return divmod(a, b, p).second; }

Poly monic(const Poly& a, u64 p) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), p), p);
}

Poly gcd(const Poly& a0, const Poly& b0, u64 p) {
    Poly a = a0, b = b0;
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly derivative(const Poly& a, u64 p) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
    trim(r);
    return r;
}

u64 eval(const Poly& a, u64 x, u64 p) {
    u64 acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = (mulmod(acc, x, p) + a[i]) % p;
    return acc;
}

Poly powmod(const Poly& base, const Int& e, const Poly& m, u64 p) {
    Poly result{1 % p};
    trim(result);
    result = rem(result, m, p);
    Poly b = rem(base, m, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = rem(mul(result, result, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), m, p);
    }
    return result;
}

namespace {

Poly xpoly() { return Poly{0, 1}; }

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f, u64 p) {
    Poly r(f.size() / p + 1, 0);
    for (std::size_t i = 0; i < f.size(); i += p) r[i / p] = f[i];
    trim(r);
    return r;
}

// Squarefree decomposition of a monic polynomial.
void squarefree(const Poly& f, u64 p, int mult, std::vector<std::pair<Poly, int>>& out) {
    if (f.size() <= 1) return;
    Poly c = gcd(f, derivative(f, p), p);
    Poly w = divmod(f, c, p).first;
    int i = 1;
    while (w.size() > 1) {
        Poly y = gcd(w, c, p);
        Poly fac = divmod(w, y, p).first;
        if (fac.size() > 1) out.emplace_back(fac, i * mult);
        w = y;
        c = divmod(c, y, p).first;
        ++i;
    }
    if (c.size() > 1) squarefree(pth_root(c, p), p, mult * static_cast<int>(p), out);
}

std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f0, u64 p) {
    std::vector<std::pair<Poly, int>> out;
    Poly f = f0;
    Poly h = xpoly();
    int i = 1;
    while (degree(f) >= 2 * i) {
        h = powmod(h, Int(static_cast<unsigned long>(p)), f, p);
        Poly g = gcd(sub(h, xpoly(), p), f, p);
        if (g.size() > 1) {
            out.emplace_back(g, i);
            f = divmod(f, g, p).first;
            h = rem(h, f, p);
        }
        ++i;
    }
    if (f.size() > 1) out.emplace_back(f, degree(f));
    return out;
}

void equal_degree(const Poly& g, int d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out) {
    const int n = degree(g);
    if (n == d) {
        out.push_back(g);
        return;
    }
    Int e;
    if (p != 2) {
        mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
        e = (e - 1) / 2;
    }
    std::uniform_int_distribution<u64> dist(0, p - 1);
    for (;;) {
        Poly a(static_cast<std::size_t>(n));
        for (auto& v : a) v = dist(rng);
        trim(a);
        if (a.size() <= 1) continue;
        Poly b;
        if (p == 2) {
            // Trace map F_{2^d} -> F_2.
            Poly t = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                t = rem(mul(t, t, p), g, p);
                b = add(b, t, p);
            }
        } else {
            b = sub(powmod(a, e, g, p), Poly{1}, p);
        }
        Poly h = gcd(b, g, p);
        if (h.size() > 1 && degree(h) < n) {
            equal_degree(h, d, p, rng, out);
            equal_degree(divmod(g, h, p).first, d, p, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<u64> roots(const Poly& f0, u64 p) {
    if (f0.empty()) throw Error("roots of the zero polynomial");
    Poly f = monic(f0, p);
    if (f.size() <= 1) return {};
    Poly h = powmod(xpoly(), Int(static_cast<unsigned long>(p)), f, p);
    Poly g = gcd(sub(h, xpoly(), p), f, p);
    std::vector<u64> out;
    if (g.size() <= 1) return out;
    std::mt19937_64 rng(0x5eed0000ULL + p);
    std::vector<Poly> lin;
    equal_degree(g, 1, p, rng, lin);
    for (const auto& l : lin) out.push_back((p - l[0]) % p);
    std::sort(out.begin(), out.end());
    return out;
}

Factorization factor(const Poly& f, u64 p) {
    if (f.empty()) throw Error("factorization of the zero polynomial");
    Factorization out;
    out.lead = f.back();
    Poly m = monic(f, p);
    std::vector<std::pair<Poly, int>> sqf;
    squarefree(m, p, 1, sqf);
    std::mt19937_64 rng(0xfac70000ULL + p);
    for (const auto& [g, mult] : sqf) {
        for (const auto& [block, d] : distinct_degree(g, p)) {
            std::vector<Poly> parts;
            equal_degree(block, d, p, rng, parts);
            for (auto& part : parts) out.factors.push_back({std::move(part), mult});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const Factor& a, const Factor& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        if (a.poly != b.poly) return std::lexicographical_compare(a.poly.rbegin(), a.poly.rend(), b.poly.rbegin(), b.poly.rend());
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

std::vector<int> factor_degrees_squarefree(const Poly& f, u64 p) {
    std::vector<int> out;
    for (const auto& [block, d] : distinct_degree(monic(f, p), p))
        for (int k = 0; k < degree(block) / d; ++k) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace arborlab::zp
