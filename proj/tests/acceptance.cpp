// Acceptance gate: one PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "arborlab/error.hpp"
#include "arborlab/galois.hpp"
#include "arborlab/orbits.hpp"
#include "arborlab/padic.hpp"
#include "arborlab/residue.hpp"
#include "arborlab/tower.hpp"
#include "oracle.hpp"

using namespace arborlab;
using exactcore::parse_map;
using exactcore::ProjPointQ;
using exactcore::RationalMap;
using zp::u64;

namespace {

struct Outcome {
    bool pass = true;
    int failures = 0;
    std::ostringstream detail;

    void fail(const std::string& why) {
        ++failures;
        if (failures > 5) return;  // the first few are enough to diagnose
        if (!pass) detail << "; ";
        pass = false;
        detail << why;
    }
};

ProjPointQ pt(long a) { return ProjPointQ(Int(a), Int(1)); }

IntPoly neg(const IntPoly& f) { return IntPoly::constant(Int(-1)) * f; }

// ---- exact and modular evaluation, independent of the library's kernels ----

Rat eval_rat(const IntPoly& f, const Rat& x) {
    Rat acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = acc * x + Rat(f.coeff(static_cast<std::size_t>(i)));
    return acc;
}

int vp(const Int& n, u64 p) {
    Int r = abs(n);
    int v = 0;
    while (r % static_cast<unsigned long>(p) == 0) {
        r /= static_cast<unsigned long>(p);
        ++v;
    }
    return v;
}

// v_p of a nonzero rational.
int vp(const Rat& x, u64 p) { return vp(x.get_num(), p) - vp(x.get_den(), p); }

Int modp(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// f(x) mod m for a p-adic unit denominator; nullopt when it is not a unit.
std::optional<Int> eval_mod(const RationalMap& f, const Int& x, const Int& m, u64 p) {
    Int P = 0, Q = 0;
    for (int i = f.p().degree(); i >= 0; --i) P = modp(P * x + f.p().coeff(static_cast<std::size_t>(i)), m);
    for (int i = f.q().degree(); i >= 0; --i) Q = modp(Q * x + f.q().coeff(static_cast<std::size_t>(i)), m);
    if (Q % static_cast<unsigned long>(p) == 0) return std::nullopt;
    Int inv;
    mpz_invert(inv.get_mpz_t(), Q.get_mpz_t(), m.get_mpz_t());
    return modp(P * inv, m);
}

Int pow_int(u64 p, int k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
    return r;
}

// Root maps r_i must be roots of G in Q[t]/(G), distinct, and commute pairwise.
std::string check_root_maps(const IntPoly& G, const std::vector<RatPoly>& maps) {
    const RatPoly g = to_rat(G);
    const auto red = [&](const RatPoly& a) { return rem(a, g); };
    const auto sub = [&](const RatPoly& a, const RatPoly& b) {
        RatPoly acc;
        for (int i = a.degree(); i >= 0; --i) acc = red(acc * b + RatPoly::constant(a.coeff(static_cast<std::size_t>(i))));
        return acc;
    };
    if (static_cast<int>(maps.size()) != G.degree()) return "wrong number of root maps for " + to_string(G);
    std::set<std::vector<Rat>> seen;
    for (const auto& r : maps) {
        if (!sub(g, r).is_zero()) return "root map is not a root of " + to_string(G);
        if (!seen.insert(red(r).coeffs()).second) return "repeated root map for " + to_string(G);
    }
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (std::size_t j = i + 1; j < maps.size(); ++j)
            if (sub(maps[i], maps[j]) != sub(maps[j], maps[i])) return "root maps do not commute for " + to_string(G);
    return {};
}

struct Pair {
    std::string name;
    RationalMap f;
    ProjPointQ alpha;
};

RationalMap cheb(int d, bool minus = false) {
    const IntPoly T = tower::chebyshev(d);
    return RationalMap::polynomial(minus ? neg(T) : T);
}

std::vector<Pair> witness_suite() {
    return {{"(x^2, 2)", parse_map("x^2"), pt(2)},      {"(x^2, 3)", parse_map("x^2"), pt(3)},
            {"(x^2-1, 3)", parse_map("x^2-1"), pt(3)},  {"(x^2-2, 3)", parse_map("x^2-2"), pt(3)},
            {"(x^3-3x, 3)", parse_map("x^3-3x"), pt(3)}, {"(x^3, 2)", parse_map("x^3"), pt(2)},
            {"(T4, 3)", cheb(4), pt(3)},                {"(T5, 2)", cheb(5), pt(2)},
            {"(T6, 3)", cheb(6), pt(3)}};
}

// ---- criteria ----

Outcome criterion1() {
    Outcome o;
    int ok = 0;
    double worst = 0;
    std::vector<std::string> bad;
    for (const auto& [name, f, alpha] : witness_suite()) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto cert = tower::witness_pipeline(f, alpha, 1000, 2);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            worst = std::max(worst, secs);
            const std::string why = tower::verify_certificate(cert);
            if (!cert.report.all_pass()) bad.push_back(name + " certificate conditions fail");
            else if (!why.empty()) bad.push_back(name + " certificate does not verify: " + why);
            else if (secs >= 10) bad.push_back(name + " took " + std::to_string(secs) + " s");
            else if (name == "(x^2, 2)" && cert.prime.p != 7) bad.push_back("(x^2, 2) gave prime " + std::to_string(cert.prime.p));
            else ++ok;
        } catch (const std::exception& e) {
            bad.push_back(name + " rejected: " + e.what());
        }
    }
    for (const auto& b : bad) o.fail(b);
    o.detail << " (" << ok << "/9 certified, slowest " << worst << " s)";
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::size_t fewest = 1000;
    for (const auto& [name, f, alpha] : witness_suite()) {
        const auto scan = residue::find_periodic_places(f, alpha, 500);
        fewest = std::min(fewest, scan.places.size());
        if (scan.places.size() < 3) o.fail(name + " has " + std::to_string(scan.places.size()) + " periodic primes");
        // Independent check of each reported prime by plain iteration mod p.
        for (const auto& pp : scan.places) {
            const u64 p = pp.place.p;
            const auto step = [&](const ProjPointQ& x) { return exactcore::eval_map(f, x); };
            const u64 a0 = residue::reduce_point(alpha, p);
            ProjPointQ x = alpha;
            bool back = false;
            for (int i = 1; i <= pp.cycle.period && !back; ++i) {
                // Reduce after every step to keep heights small.
                x = step(x);
                const u64 r = residue::reduce_point(x, p);
                x = r == p ? ProjPointQ::infinity() : pt(static_cast<long>(r));
                back = r == a0;
                if (back && i != pp.cycle.period) o.fail(name + " wrong period at " + std::to_string(p));
            }
            if (!back) o.fail(name + " reported p = " + std::to_string(p) + " is not periodic");
        }
    }
    const auto s = residue::find_periodic_places(parse_map("x^2+1"), pt(0), 30);
    std::vector<u64> ps;
    for (const auto& pp : s.places) ps.push_back(pp.place.p);
    if (ps != std::vector<u64>{2, 5, 13}) o.fail("(x^2+1, 0) periodic primes <= 30 differ from {2, 5, 13}");
    o.detail << " (fewest periodic primes <= 500 in the suite: " << fewest << ")";
    return o;
}

bool has_unequal_witness(const tower::TowerLevel& lvl, const IntPoly& G, u64 p, std::vector<int> degrees) {
    for (const auto& fv : lvl.verdicts) {
        if (fv.factor != G) continue;
        const auto* na = std::get_if<galois::NonAbelian>(&fv.verdict);
        if (!na) return false;
        const auto* u = std::get_if<galois::UnequalDegrees>(&na->witness);
        if (!u) return false;
        auto got = u->degrees;
        std::sort(got.begin(), got.end());
        return u->p == p && got == degrees;
    }
    return false;
}

Outcome criterion3() {
    Outcome o;
    struct Case {
        std::string name;
        RationalMap f;
        ProjPointQ a;
        IntPoly G;
        u64 p;
    };
    const std::vector<Case> cases{{"(x^2, 2)", parse_map("x^2"), pt(2), oracle::make({-2, 0, 0, 0, 1}), 7},
                                  {"(x^2+1, 0)", parse_map("x^2+1"), pt(0), oracle::make({2, 0, 2, 0, 1}), 5}};
    for (const auto& c : cases) {
        const auto levels = tower::analyze_tower(c.f, c.a, 2);
        if (levels.size() != 2) {
            o.fail(c.name + " stopped before level 2");
            continue;
        }
        if (!levels[0].level_abelian) o.fail(c.name + " level 1 is not abelian");
        if (levels[1].level_abelian) o.fail(c.name + " level 2 is abelian");
        if (!has_unequal_witness(levels[1], c.G, c.p, {1, 1, 2})) o.fail(c.name + " level 2 witness differs");
        // Independent: the factorization mod p has degrees {1, 1, 2}.
        const auto fac = galois::factor_mod_p(zp::from_int(c.G, c.p), c.p);
        std::vector<int> degs;
        for (const auto& [g, m] : fac.factors)
            for (int i = 0; i < m; ++i) degs.push_back(zp::degree(g));
        std::sort(degs.begin(), degs.end());
        if (degs != std::vector<int>{1, 1, 2}) o.fail(c.name + " mod-p degrees do not match");
        if (galois::is_abelian(galois::is_abelian_galois(c.G))) o.fail(c.name + " exact verdict is abelian");
    }
    return o;
}

std::vector<Pair> abelian_suite() {
    return {{"(x^2, 1)", parse_map("x^2"), pt(1)},
            {"(x^2-2, -1)", parse_map("x^2-2"), pt(-1)},
            {"(-x^2+2, 1)", parse_map("-x^2+2"), pt(1)}};
}

Outcome criterion4(std::vector<IntPoly>& factors) {
    Outcome o;
    if (tower::level_polynomial(parse_map("x^2"), pt(1), 3).F != oracle::make({-1, 0, 0, 0, 0, 0, 0, 0, 1})) {
        o.fail("(x^2, 1) F_3 is not x^8-1");
    }
    int checked = 0;
    for (const auto& [name, f, alpha] : abelian_suite()) {
        const auto levels = tower::analyze_tower(f, alpha, 3);
        if (levels.size() != 3) o.fail(name + " has " + std::to_string(levels.size()) + " levels");
        for (const auto& lvl : levels) {
            if (!lvl.level_abelian) o.fail(name + " level " + std::to_string(lvl.n) + " is not abelian");
            for (const auto& fv : lvl.verdicts) {
                factors.push_back(fv.factor);
                const auto* ab = std::get_if<galois::Abelian>(&fv.verdict);
                if (!ab) {
                    o.fail(name + " factor " + to_string(fv.factor) + " is not abelian");
                    continue;
                }
                const std::string why = check_root_maps(fv.factor, ab->root_maps);
                if (!why.empty()) o.fail(name + ": " + why);
                ++checked;
            }
        }
    }
    o.detail << " (" << checked << " factor verdicts with commuting root maps)";
    return o;
}

// ---- criterion 5 ----

struct Triple {
    RationalMap f;  // already in the chart where the residue is affine
    u64 p;
    u64 r;
};

std::optional<Triple> attracting_triple(std::mt19937_64& rng, const std::vector<u64>& primes) {
    const u64 p = primes[rng() % primes.size()];
    const long r = static_cast<long>(rng() % p);
    const long a = 1 + static_cast<long>(rng() % (p - 1));
    const IntPoly Q = oracle::make({static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 9) - 4,
                                    static_cast<long>(rng() % 5) - 2});
    if (Q.is_zero() || zp::reduce(eval_rat(Q, Rat(r)).get_num(), p) == 0) return std::nullopt;
    // f = r + a (x - r)^2 / Q fixes r with vanishing derivative there.
    const IntPoly P = IntPoly::constant(Int(r)) * Q + IntPoly::constant(Int(a)) * oracle::make({-r, 1}) * oracle::make({-r, 1});
    try {
        RationalMap f(P, Q);
        if (!residue::is_good(residue::reduce_map(f, residue::Place{p}, false))) return std::nullopt;
        return Triple{f, p, static_cast<u64>(r)};
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

std::optional<Triple> random_triple(std::mt19937_64& rng, const std::vector<u64>& primes) {
    const u64 p = primes[rng() % primes.size()];
    const auto coeffs = [&](int d) {
        std::vector<long> c;
        for (int i = 0; i <= d; ++i) c.push_back(static_cast<long>(rng() % 19) - 9);
        return oracle::make(c);
    };
    try {
        RationalMap f(coeffs(2 + static_cast<int>(rng() % 2)), coeffs(static_cast<int>(rng() % 3)));
        const auto red = residue::reduce_map(f, residue::Place{p}, false);
        const auto* fbar = std::get_if<residue::ReducedMap>(&red);
        if (!fbar) return std::nullopt;
        std::vector<u64> fixed;
        for (u64 x = 0; x <= p; ++x)
            if (fbar->eval(x) == x) fixed.push_back(x);
        if (fixed.empty()) return std::nullopt;
        const u64 r = fixed[rng() % fixed.size()];
        if (r == p) return Triple{exactcore::invert_chart(f), p, 0};
        return Triple{f, p, r};
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

Outcome criterion5() {
    Outcome o;
    std::mt19937_64 rng(20240607);
    std::vector<u64> primes;
    for (u64 p : zp::primes_up_to(100))
        if (p >= 3) primes.push_back(p);
    int attracting = 0, unit = 0, liftchecks = 0;
    for (int t = 0; t < 50; ++t) {
        std::optional<Triple> tr;
        while (!tr) tr = t < 20 ? attracting_triple(rng, primes) : random_triple(rng, primes);
        const auto& [f, p, r] = *tr;
        const std::string tag = to_string(f) + " at p = " + std::to_string(p) + ", r = " + std::to_string(r);
        const auto Pd = f.p().derivative(), Qd = f.q().derivative();

        // Sample points r + p a / b of the residue disc.
        std::vector<Rat> xs;
        while (xs.size() < 200) {
            const long a = static_cast<long>(rng() % 101) - 50, b = 1 + static_cast<long>(rng() % 50);
            if (b % static_cast<long>(p) == 0) continue;
            xs.push_back(Rat(static_cast<long>(r)) + Rat(Int(static_cast<unsigned long>(p)) * a, Int(b)));
            xs.back().canonicalize();
        }
        const auto fx = [&](const Rat& x) {
            const Rat q = eval_rat(f.q(), x);
            return std::optional<Rat>(q == 0 ? std::nullopt : std::optional<Rat>(eval_rat(f.p(), x) / q));
        };
        std::vector<Rat> ys;
        for (const auto& x : xs) {
            const auto y = fx(x);
            if (!y || (*y - Rat(static_cast<long>(r)) != 0 && vp(Rat(*y - Rat(static_cast<long>(r))), p) < 1)) {
                o.fail("(a) disc not invariant for " + tag);
                break;
            }
            ys.push_back(*y);
            const Rat q = eval_rat(f.q(), x);
            const Rat d = (eval_rat(Pd, x) * q - eval_rat(f.p(), x) * eval_rat(Qd, x)) / (q * q);
            if (d != 0 && vp(d, p) < 0) o.fail("(b) |f'| > 1 for " + tag);
        }
        if (ys.size() != xs.size()) continue;

        const auto cls = padic::classify_fixed_disc(f, residue::Place{p}, r, 8);
        const residue::ReducedMap fbar(f, p, false);
        const bool zero_derivative = fbar.local_derivative(r) == 0;
        if (zero_derivative != std::holds_alternative<padic::Attracting>(cls)) {
            o.fail("classification disagrees with the reduced derivative for " + tag);
            continue;
        }
        if (zero_derivative) {
            ++attracting;
            // (c) contraction on pairs.
            for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
                const Rat dx = xs[i] - xs[i + 1], dy = ys[i] - ys[i + 1];
                if (dx == 0 || dy == 0) continue;
                if (vp(dy, p) < vp(dx, p) + 1) o.fail("(c) no contraction by 1/p for " + tag);
            }
            // Banach iterates approach the fixed point: |f^j(x) - gamma| <= p^-j.
            const Int m = pow_int(p, 8);
            const Int gamma = std::get<padic::Attracting>(cls).fixed_point.residue;
            const auto fg = eval_mod(f, gamma, m, p);
            if (!fg || *fg != gamma) o.fail("(c) reported fixed point is not fixed mod p^8 for " + tag);
            for (std::size_t i = 0; i < 20; ++i) {
                Int x = modp(xs[i].get_num() * [&] {
                    Int inv;
                    const Int den = xs[i].get_den();
                    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
                    return inv;
                }(), m);
                for (int j = 1; j <= 8; ++j) {
                    x = *eval_mod(f, x, m, p);
                    if (modp(x - gamma, pow_int(p, j)) != 0) o.fail("(c) Banach error exceeds p^-j for " + tag);
                }
            }
        } else {
            ++unit;
            // (d) every target mod p^k lifts; exhaustive while p^(k-1) <= 4096.
            for (int k = 1; k <= 6; ++k) {
                const Int count = pow_int(p, k - 1);
                const bool all = count <= 4096;
                const long n = all ? count.get_si() : 1000;
                const Int m = pow_int(p, k);
                for (long s = 0; s < n; ++s) {
                    Int off = all ? Int(s) : modp(Int(static_cast<unsigned long>(rng())), count);
                    const Int target = modp(Int(static_cast<unsigned long>(r)) + Int(static_cast<unsigned long>(p)) * off, m);
                    try {
                        const auto x = padic::hensel_lift_preimage(f, residue::Place{p}, padic::make_padic(target, p, k), r, k);
                        const auto y = eval_mod(f, x.residue, m, p);
                        if (x.reduction() != r || !y || *y != target) o.fail("(d) lift does not re-verify for " + tag);
                        ++liftchecks;
                    } catch (const std::exception& e) {
                        o.fail("(d) target did not lift for " + tag + ": " + e.what());
                    }
                }
            }
        }
    }
    if (attracting == 0 || unit == 0) o.fail("suite did not cover both disc types");
    o.detail << " (" << attracting << " attracting, " << unit << " unit triples; " << liftchecks << " lifts)";
    return o;
}

// ---- criterion 6 ----

Outcome criterion6() {
    Outcome o;
    long count = 0;
    std::vector<long> c(5, -5);
    for (;;) {
        std::vector<long> v = c;
        while (!v.empty() && v.back() == 0) v.pop_back();
        if (!v.empty()) {
            const IntPoly g = oracle::make(v);
            const auto fac = galois::factor_over_Q(g);
            if (fac.product() != g) o.fail("product does not reconstruct " + to_string(g));
            if (g.degree() >= 1) {
                std::vector<IntPoly> got;
                for (const auto& [h, m] : fac.factors)
                    for (int i = 0; i < m; ++i) got.push_back(h);
                std::sort(got.begin(), got.end(), [](const IntPoly& x, const IntPoly& y) {
                    return x.degree() != y.degree() ? x.degree() < y.degree() : x.coeffs() < y.coeffs();
                });
                if (got != oracle::trial_factor(primitive_part(g))) o.fail("factorization differs for " + to_string(g));
            } else if (!fac.factors.empty()) {
                o.fail("constant " + to_string(g) + " has factors");
            }
            ++count;
        }
        std::size_t i = 0;
        while (i < c.size() && c[i] == 5) c[i++] = -5;
        if (i == c.size()) break;
        ++c[i];
    }
    const std::vector<std::pair<std::string, bool>> fixed{
        {"x^2-3", true}, {"x^3-3x-1", true}, {"x^4+1", true}, {"x^3-2", false}, {"x^4-2", false}};
    for (const auto& [s, abelian] : fixed) {
        const IntPoly G = exactcore::parse_poly(s);
        const auto v = galois::is_abelian_galois(G);
        if (galois::is_abelian(v) != abelian) o.fail(s + " verdict is wrong");
        if (!galois::verify_verdict(G, v).empty()) o.fail(s + " verdict does not re-verify");
    }
    o.detail << " (" << count << " polynomials against trial division; 5 fixed verdicts)";
    return o;
}

// ---- criterion 7 ----

Outcome criterion7(std::vector<IntPoly> factors) {
    Outcome o;
    for (const auto& [name, f, alpha] : std::vector<Pair>{{"(x^2, 2)", parse_map("x^2"), pt(2)},
                                                          {"(x^2+1, 0)", parse_map("x^2+1"), pt(0)}}) {
        for (const auto& lvl : tower::analyze_tower(f, alpha, 2))
            for (const auto& fv : lvl.verdicts) factors.push_back(fv.factor);
    }
    std::sort(factors.begin(), factors.end(), [](const IntPoly& a, const IntPoly& b) {
        return a.degree() != b.degree() ? a.degree() < b.degree() : a.coeffs() < b.coeffs();
    });
    factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
    int abelian = 0, nonabelian = 0;
    for (const auto& G : factors) {
        const auto exact = galois::is_abelian_galois(G);
        const auto witness = galois::unequal_degree_witness(G, 1000);
        if (witness && galois::is_abelian(exact)) o.fail(to_string(G) + " has an unequal-degree prime but an abelian verdict");
        if (!galois::is_abelian(exact)) {
            ++nonabelian;
            continue;
        }
        ++abelian;
        // Equal degrees at the first 50 primes not dividing lc(G) disc(G).
        const Int bad = G.lead() * discriminant(to_rat(G)).get_num();
        int seen = 0;
        for (u64 p = 2; seen < 50; ++p) {
            if (!zp::is_prime(p) || bad % static_cast<unsigned long>(p) == 0) continue;
            ++seen;
            const auto fac = galois::factor_mod_p(zp::from_int(G, p), p);
            std::set<int> degs;
            for (const auto& [g, m] : fac.factors) degs.insert(zp::degree(g));
            if (degs.size() != 1) o.fail(to_string(G) + " splits with unequal degrees at " + std::to_string(p));
        }
    }
    o.detail << " (" << factors.size() << " factors: " << abelian << " abelian, " << nonabelian << " nonabelian)";
    return o;
}

// ---- criterion 8 ----

Outcome criterion8() {
    Outcome o;
    std::vector<std::pair<std::string, RationalMap>> pcf;
    for (int d = 2; d <= 6; ++d) pcf.emplace_back("x^" + std::to_string(d), parse_map("x^" + std::to_string(d)));
    pcf.emplace_back("x^2-1", parse_map("x^2-1"));
    pcf.emplace_back("x^2-2", parse_map("x^2-2"));
    for (int d = 2; d <= 6; ++d) {
        pcf.emplace_back("T" + std::to_string(d), cheb(d));
        pcf.emplace_back("-T" + std::to_string(d), cheb(d, true));
    }
    for (const auto& [name, f] : pcf)
        if (!orbits::pcf_certify(f).is_pcf) o.fail(name + " not certified PCF");
    for (const char* s : {"x^2+1", "x^2-3", "x^2+2"})
        if (orbits::pcf_certify(parse_map(s)).is_pcf) o.fail(std::string(s) + " certified PCF");
    const auto h = orbits::canonical_height(parse_map("x^2"), pt(2), 20);
    const double err = std::fabs(h.value - std::log(2.0));
    if (err > 1e-6) o.fail("canonical height of 2 under x^2 is off by " + std::to_string(err));
    o.detail << " (" << pcf.size() << " PCF, 3 non-PCF; |h - log 2| = " << err << ")";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"witness existence", criterion1},
        {"periodic-reduction density", criterion2},
        {"nonabelian towers", criterion3},
        {"abelian families", [] {
             std::vector<IntPoly> unused;
             return criterion4(unused);
         }},
        {"fixed residue discs", criterion5},
        {"factorization oracles", criterion6},
        {"degree-pattern consistency", [] {
             std::vector<IntPoly> factors;
             criterion4(factors);
             return criterion7(factors);
         }},
        {"PCF and heights", criterion8},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("criterion %zu %s  %s: %s [%.2f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    return failures;
}
