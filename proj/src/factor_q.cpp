// Factorization in Z[x]: Yun squarefree split, then per squarefree block
// factorization mod a small prime, quadratic Hensel lifting along a binary
// factor tree, and Zassenhaus subset recombination.

#include <algorithm>
#include <mutex>

#include "arborlab/error.hpp"
#include "arborlab/galois.hpp"

namespace arborlab::galois {

namespace {

constexpr long kRecombinationBudget = 20'000'000;

std::mutex g_store_mutex;
std::shared_ptr<FactorStore> g_store;

// ---- polynomials over Z/mZ with big modulus ----

IntPoly pm_reduce(const IntPoly& a, const Int& m) {
    std::vector<Int> c(a.coeffs());
    for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return IntPoly(std::move(c));
}

IntPoly pm_mul(const IntPoly& a, const IntPoly& b, const Int& m) { return pm_reduce(a * b, m); }

// Division by a monic polynomial modulo m.
std::pair<IntPoly, IntPoly> pm_divmod(const IntPoly& a, const IntPoly& b, const Int& m) {
    if (a.degree() < b.degree()) return {IntPoly{}, pm_reduce(a, m)};
    std::vector<Int> r(a.coeffs());
    const int db = b.degree();
    std::vector<Int> q(static_cast<std::size_t>(a.degree() - db + 1), Int(0));
    for (int i = a.degree(); i >= db; --i) {
        mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), m.get_mpz_t());
        if (r[i] == 0) continue;
        Int t = r[i];
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
    }
    r.resize(static_cast<std::size_t>(db));
    return {pm_reduce(IntPoly(std::move(q)), m), pm_reduce(IntPoly(std::move(r)), m)};
}

IntPoly lift_zp(const zp::Poly& a) {
    std::vector<Int> c;
    for (auto v : a) c.emplace_back(static_cast<unsigned long>(v));
    return IntPoly(std::move(c));
}

// s*a + t*b = 1 mod p for coprime a, b.
void ext_gcd_zp(const zp::Poly& a, const zp::Poly& b, zp::u64 p, zp::Poly& s, zp::Poly& t) {
    zp::Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = zp::divmod(r0, r1, p);
        zp::Poly s2 = zp::sub(s0, zp::mul(q, s1, p), p);
        zp::Poly t2 = zp::sub(t0, zp::mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw Error("Hensel lifting: modular factors are not coprime");
    const zp::u64 inv = zp::invmod(r0[0], p);
    s = zp::scale(s0, inv, p);
    t = zp::scale(t0, inv, p);
}

// One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m) to mod m^2.
void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s, IntPoly& t, const Int& m2) {
    IntPoly e = pm_reduce(f - g * h, m2);
    auto [q, r] = pm_divmod(pm_mul(s, e, m2), h, m2);
    IntPoly g1 = pm_reduce(g + t * e + q * g, m2);
    IntPoly h1 = pm_reduce(h + r, m2);
    IntPoly b = pm_reduce(s * g1 + t * h1 - IntPoly{1}, m2);
    auto [c, d] = pm_divmod(pm_mul(s, b, m2), h1, m2);
    s = pm_reduce(s - d, m2);
    t = pm_reduce(t - t * b - c * g1, m2);
    g = std::move(g1);
    h = std::move(h1);
}

// Lifts f = lc * prod(facs) mod p to monic factors mod `modulus` = p^(2^k).
void multi_lift(const IntPoly& f, const std::vector<zp::Poly>& facs, zp::u64 p, const Int& modulus,
                std::vector<IntPoly>& out) {
    const Int lc = f.lead();
    if (facs.size() == 1) {
        Int inv;
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t());
        out.push_back(pm_reduce(f * inv, modulus));
        return;
    }
    const std::size_t half = facs.size() / 2;
    std::vector<zp::Poly> left(facs.begin(), facs.begin() + static_cast<long>(half));
    std::vector<zp::Poly> right(facs.begin() + static_cast<long>(half), facs.end());
    zp::Poly g0{zp::reduce(lc, p)}, h0{1};
    for (const auto& a : left) g0 = zp::mul(g0, a, p);
    for (const auto& a : right) h0 = zp::mul(h0, a, p);
    zp::Poly s0, t0;
    ext_gcd_zp(g0, h0, p, s0, t0);
    IntPoly g = lift_zp(g0), h = lift_zp(h0), s = lift_zp(s0), t = lift_zp(t0);
    Int m = p;
    while (m < modulus) {
        m *= m;
        hensel_step(f, g, h, s, t, m);
    }
    multi_lift(g, left, p, modulus, out);
    multi_lift(h, right, p, modulus, out);
}

IntPoly symmetric(const IntPoly& a, const Int& m) {
    const Int half = m / 2;
    std::vector<Int> c(a.coeffs());
    for (auto& v : c) {
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        if (v > half) v -= m;
    }
    return IntPoly(std::move(c));
}

// 2^n * ceil(||f||_2) bounds every coefficient of every factor of f.
Int mignotte_bound(const IntPoly& f) {
    Int s = 0;
    for (const auto& c : f.coeffs()) s += c * c;
    Int r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    r += 1;
    Int two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(f.degree()));
    return two_n * r;
}

bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

// Irreducible factors of a primitive squarefree f with positive lead.
std::vector<IntPoly> factor_squarefree(const IntPoly& f) {
    if (f.degree() <= 1) return {f};
    const Int lc = f.lead();

    // Pick, among a handful of good primes, the one with fewest modular factors.
    zp::u64 best_p = 0;
    std::size_t best_count = 0;
    int tried = 0;
    for (zp::u64 p = 3; tried < 6 && p < 100000; p += 2) {
        if (!zp::is_prime(p)) continue;
        if (zp::reduce(lc, p) == 0) continue;
        zp::Poly fp = zp::from_int(f, p);
        if (zp::degree(zp::gcd(fp, zp::derivative(fp, p), p)) > 0) continue;
        ++tried;
        const auto degs = zp::factor_degrees_squarefree(fp, p);
        if (degs.size() == 1) return {f};
        if (best_p == 0 || degs.size() < best_count) {
            best_p = p;
            best_count = degs.size();
        }
    }
    if (best_p == 0) throw Error("no suitable prime for modular factorization");
    const zp::u64 p = best_p;
    auto modfac = zp::factor(zp::from_int(f, p), p);
    std::vector<zp::Poly> facs;
    for (auto& fa : modfac.factors) facs.push_back(fa.poly);

    const Int bound = 2 * abs(lc) * mignotte_bound(f) + 1;
    Int modulus = p;
    while (modulus <= bound) modulus *= modulus;
    std::vector<IntPoly> lifted;
    multi_lift(f, facs, p, modulus, lifted);

    std::vector<IntPoly> result;
    IntPoly rest = f;
    long budget = kRecombinationBudget;
    int s = 1;
    while (2 * s <= static_cast<int>(lifted.size())) {
        bool found = false;
        std::vector<int> idx(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) idx[i] = i;
        const Int rlc = rest.lead();
        const Int target0 = rlc * rest.coeff(0);
        do {
            if (--budget < 0) throw ResourceLimit("factor recombination budget exhausted");
            // Constant-term filter before forming the full product.
            Int c0 = rlc;
            for (int i : idx) c0 = (c0 * lifted[i].coeff(0)) % modulus;
            IntPoly c0p = symmetric(IntPoly(std::vector<Int>{c0}), modulus);
            const Int c0s = c0p.coeff(0);
            if (target0 != 0 && (c0s == 0 || !mpz_divisible_p(target0.get_mpz_t(), c0s.get_mpz_t()))) continue;
            IntPoly cand = IntPoly::constant(rlc);
            for (int i : idx) cand = pm_mul(cand, lifted[i], modulus);
            cand = primitive_part(symmetric(cand, modulus));
            IntPoly quot;
            if (cand.degree() > 0 && exact_divide(rest, cand, quot)) {
                result.push_back(cand);
                rest = primitive_part(quot);
                std::vector<IntPoly> remaining;
                for (int i = 0; i < static_cast<int>(lifted.size()); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(lifted[i]);
                lifted = std::move(remaining);
                found = true;
                break;
            }
        } while (next_combination(idx, static_cast<int>(lifted.size())));
        if (!found) ++s;
    }
    if (rest.degree() > 0) result.push_back(rest);
    return result;
}

bool poly_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
    return false;
}

}  // namespace

void set_factor_store(std::shared_ptr<FactorStore> store) {
    std::lock_guard<std::mutex> lock(g_store_mutex);
    g_store = std::move(store);
}

std::shared_ptr<FactorStore> factor_store() {
    std::lock_guard<std::mutex> lock(g_store_mutex);
    return g_store;
}

IntPoly FactorizationQ::product() const {
    if (unit.get_den() != 1) throw Error("factorization unit is not integral");
    IntPoly acc = IntPoly::constant(unit.get_num());
    for (const auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) acc = acc * f;
    return acc;
}

zp::Factorization factor_mod_p(const zp::Poly& g, zp::u64 p) {
    if (!zp::is_prime(p)) throw PreconditionError("factor_mod_p needs a prime modulus");
    return zp::factor(g, p);
}

FactorizationQ factor_over_Q(const IntPoly& g) {
    if (g.is_zero()) throw PreconditionError("cannot factor the zero polynomial");
    auto store = factor_store();
    if (store) {
        if (auto hit = store->lookup(g)) return *hit;
    }
    FactorizationQ out;
    const Int c = content(g);
    out.unit = Rat(c);
    if (g.degree() >= 1) {
        IntPoly f = primitive_part(g);
        for (const auto& [block, mult] : squarefree_decomposition(f)) {
            for (auto& irr : factor_squarefree(primitive_part(block))) out.factors.emplace_back(primitive_part(irr), mult);
        }
        std::sort(out.factors.begin(), out.factors.end(),
                  [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
        if (out.product() != g) throw Error("internal: factor product does not reconstruct input");
    }
    if (store) store->store(g, out);
    return out;
}

bool is_irreducible(const IntPoly& g) {
    if (g.degree() < 1) return false;
    auto f = factor_over_Q(g);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace arborlab::galois
