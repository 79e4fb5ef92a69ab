#include "arborlab/tower.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "arborlab/kernels.hpp"

namespace arborlab::tower {

namespace {

using galois::NfPoly;
using galois::NumberField;

int int_pow(int b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > (1LL << 30)) return 1 << 30;
    }
    return static_cast<int>(r);
}

std::vector<Rat> rational_coeffs(const RationalMap& f) {
    const Rat q0(f.q().coeff(0));
    std::vector<Rat> c;
    for (int i = 0; i <= f.degree(); ++i) c.push_back(Rat(f.p_coeff(i)) / q0);
    return c;
}

void nf_trim(NfPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

// Complex roots by Durand-Kerner, sorted by (real, imaginary).
std::vector<std::complex<long double>> complex_roots(const IntPoly& m) {
    using C = std::complex<long double>;
    const int n = m.degree();
    std::vector<C> c(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) c[i] = C(m.coeff(i).get_d() / m.lead().get_d(), 0);
    std::vector<C> z(static_cast<std::size_t>(n));
    if (n == 1) {
        z[0] = -c[0];
    } else {
        long double radius = 1;
        for (int i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(c[i]));
        const C seed(0.4L, 0.9L);
        for (int i = 0; i < n; ++i) z[i] = std::pow(seed, i) * (radius / 2);
        const auto eval = [&](C x) {
            C acc = 0;
            for (int i = n; i >= 0; --i) acc = acc * x + c[i];
            return acc;
        };
        for (int iter = 0; iter < 2000; ++iter) {
            long double change = 0;
            for (int i = 0; i < n; ++i) {
                C den = 1;
                for (int j = 0; j < n; ++j)
                    if (j != i) den *= z[i] - z[j];
                const C step = eval(z[i]) / den;
                z[i] -= step;
                change = std::max(change, std::abs(step));
            }
            if (change < 1e-18L) break;
        }
    }
    std::sort(z.begin(), z.end(), [](const C& a, const C& b) {
        const long double tol = 1e-9L * (1 + std::abs(a.real()) + std::abs(b.real()));
        if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

int nearest_root(const std::vector<std::complex<long double>>& roots, std::complex<long double> z) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(roots.size()); ++i)
        if (std::abs(roots[i] - z) < std::abs(roots[best] - z)) best = i;
    return best;
}

galois::GaloisVerdict decide(const IntPoly& g, u64 pmax, bool& from_pattern) {
    from_pattern = false;
    if (g.degree() >= 3) {
        if (auto w = galois::unequal_degree_witness(g, pmax)) {
            from_pattern = true;
            return galois::NonAbelian{*w};
        }
    }
    return galois::is_abelian_galois(g);
}

}  // namespace

LevelPolynomial level_polynomial(const RationalMap& f, const ProjPointQ& alpha, int n) {
    if (n < 1) throw PreconditionError("level must be at least 1");
    const RationalMap fn = exactcore::iterate_map(f, n);
    const IntPoly L = fn.p() * alpha.x2() - fn.q() * alpha.x1();
    if (L.is_zero()) throw Error("internal: level numerator vanishes identically");
    return {primitive_part(L), fn.degree() - L.degree()};
}

std::vector<TowerLevel> analyze_tower(const RationalMap& f, const ProjPointQ& alpha, int n_max, const TowerOptions& opts) {
    if (n_max < 1) throw PreconditionError("at least one level is required");
    if (orbits::is_exceptional(f, alpha)) throw PreconditionError("point is exceptional; its backward orbit is finite");
    if (int_pow(f.degree(), n_max) > opts.degree_cap) {
        throw ResourceLimit("level " + std::to_string(n_max) + " has degree " + std::to_string(f.degree()) + "^" +
                            std::to_string(n_max) + ", above the cap " + std::to_string(opts.degree_cap));
    }
    std::vector<TowerLevel> levels;
    for (int n = 1; n <= n_max; ++n) {
        TowerLevel lvl;
        lvl.n = n;
        const auto lp = level_polynomial(f, alpha, n);
        lvl.F = lp.F;
        lvl.degree_drop = lp.degree_drop;
        if (lp.F.degree() >= 1) {
            lvl.factorization = galois::factor_over_Q(lp.F);
            const auto& facs = lvl.factorization.factors;
            lvl.verdicts = kernels::map<FactorVerdict>(facs.size(), [&](std::size_t i) {
                FactorVerdict fv;
                fv.factor = facs[i].first;
                fv.multiplicity = facs[i].second;
                fv.verdict = decide(fv.factor, opts.witness_pmax, fv.from_degree_pattern);
                return fv;
            });
        }
        for (const auto& fv : lvl.verdicts) lvl.level_abelian = lvl.level_abelian && galois::is_abelian(fv.verdict);
        const bool stop = !lvl.level_abelian;
        levels.push_back(std::move(lvl));
        if (stop) break;
    }
    return levels;
}

IntPoly chebyshev(int d) {
    if (d < 1) throw PreconditionError("Chebyshev degree must be at least 1");
    IntPoly prev{2}, cur = IntPoly::x();
    for (int j = 1; j < d; ++j) {
        IntPoly next = IntPoly::x() * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

FamilyTag detect_family(const RationalMap& f) {
    if (!f.is_polynomial()) return NoFamily{};
    const int d = f.degree();
    const auto a = rational_coeffs(f);
    const Rat beta = -a[d - 1] / (Rat(d) * a[d]);
    RatPoly lin(std::vector<Rat>{-beta, Rat(1)});
    RatPoly power = RatPoly::constant(Rat(1));
    for (int i = 0; i < d; ++i) power = power * lin;
    RatPoly candidate = power * a[d] + RatPoly::constant(beta);
    if (candidate == RatPoly(a)) return Powering{beta, a[d]};
    const IntPoly T = chebyshev(d);
    if (!affine_conjugators(f, RationalMap::polynomial(T)).empty()) return ChebyshevPlus{};
    if (!affine_conjugators(f, RationalMap::polynomial(-T)).empty()) return ChebyshevMinus{};
    return NoFamily{};
}

std::string to_string(const FamilyTag& t) {
    if (const auto* p = std::get_if<Powering>(&t)) {
        return "Powering{beta=" + p->beta.get_str() + ", c=" + p->c.get_str() + "}";
    }
    if (std::holds_alternative<ChebyshevPlus>(t)) return "ChebyshevPlus";
    if (std::holds_alternative<ChebyshevMinus>(t)) return "ChebyshevMinus";
    return "None";
}

std::string to_string(const AlgebraicNumber& a) {
    if (a.minpoly.degree() == 1) return Rat(-a.minpoly.coeff(0), a.minpoly.coeff(1)).get_str();
    return "root #" + std::to_string(a.root_index) + " of " + to_string(a.minpoly);
}

std::vector<AffineMapAlg> affine_conjugators(const RationalMap& f, const RationalMap& g) {
    if (!f.is_polynomial() || !g.is_polynomial()) throw PreconditionError("affine conjugacy needs polynomial maps");
    if (f.degree() != g.degree()) return {};
    const int d = f.degree();
    const auto A = rational_coeffs(f), B = rational_coeffs(g);
    // Leading terms force a^(d-1) = B_d / A_d; the x^(d-1) terms force b = lam a + mu.
    const Rat r = B[d] / A[d];
    const Rat lam = B[d - 1] / (Rat(d) * B[d]);
    const Rat mu = -A[d - 1] / (Rat(d) * A[d]);

    // E(a, x) = f(a x + lam a + mu) - a g(x) - lam a - mu, coefficients in Q[a].
    const RatPoly b_of_a(std::vector<Rat>{mu, lam});
    const std::vector<RatPoly> phi{b_of_a, RatPoly::x()};
    std::vector<RatPoly> acc;
    for (int i = d; i >= 0; --i) {
        std::vector<RatPoly> next(acc.size() + 1);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j] * phi[0];
            next[j + 1] += acc[j] * phi[1];
        }
        next[0] += RatPoly::constant(A[i]);
        acc = std::move(next);
    }
    acc.resize(static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i) acc[i] -= RatPoly::monomial(B[i], 1);
    acc[0] -= b_of_a;

    RatPoly G = RatPoly::monomial(Rat(1), d - 1) - RatPoly::constant(r);
    for (const auto& e : acc)
        if (!e.is_zero()) G = gcd(G, e);
    if (G.degree() < 1) return {};

    std::vector<AffineMapAlg> out;
    for (const auto& [m, mult] : galois::factor_over_Q(primitive_from_rat(G)).factors) {
        IntPoly bmin;
        if (lam == 0) {
            bmin = primitive_from_rat(RatPoly(std::vector<Rat>{-mu, Rat(1)}));
        } else {
            // Roots of m((y - mu) / lam).
            const RatPoly inv(std::vector<Rat>{-mu / lam, Rat(1) / lam});
            bmin = primitive_from_rat(to_rat(m).compose(inv));
        }
        const auto aroots = complex_roots(m);
        const auto broots = complex_roots(bmin);
        for (int i = 0; i < m.degree(); ++i) {
            AffineMapAlg phi_i;
            phi_i.field = m;
            phi_i.a = {m, i};
            const auto bz = std::complex<long double>(lam.get_d(), 0) * aroots[i] + std::complex<long double>(mu.get_d(), 0);
            phi_i.b = {bmin, nearest_root(broots, bz)};
            phi_i.a_in_field = m.degree() == 1 ? RatPoly::constant(Rat(-m.coeff(0), m.coeff(1))) : RatPoly::x();
            phi_i.b_in_field = phi_i.a_in_field * lam + RatPoly::constant(mu);
            out.push_back(std::move(phi_i));
        }
    }
    return out;
}

bool verify_conjugator(const RationalMap& f, const RationalMap& g, const AffineMapAlg& phi) {
    const NumberField K(phi.field);
    const RatPoly a = K.reduce(phi.a_in_field), b = K.reduce(phi.b_in_field);
    if (a.is_zero()) return false;
    // The field element must be a root of the recorded minimal polynomials.
    if (!K.substitute(to_rat(phi.a.minpoly), a).is_zero()) return false;
    if (!K.substitute(to_rat(phi.b.minpoly), b).is_zero()) return false;
    const auto A = rational_coeffs(f), B = rational_coeffs(g);
    const NfPoly lin{b, a};
    NfPoly lhs;
    for (std::size_t i = A.size(); i-- > 0;) {
        lhs = galois::nf_mul(K, lhs, lin);
        if (lhs.empty()) lhs.resize(1);
        lhs[0] = K.reduce(lhs[0] + RatPoly::constant(A[i]));
        nf_trim(lhs);
    }
    NfPoly rhs(B.size());
    for (std::size_t i = 0; i < B.size(); ++i) rhs[i] = K.mul(a, RatPoly::constant(B[i]));
    rhs[0] = K.reduce(rhs[0] + b);
    nf_trim(rhs);
    return lhs == rhs;
}

NoWitnessFound::NoWitnessFound(u64 pmax, std::vector<std::pair<u64, std::string>> reasons)
    : Error("no witness prime up to " + std::to_string(pmax)), pmax_(pmax), reasons_(std::move(reasons)) {}

WitnessCertificate witness_pipeline(const RationalMap& f, const ProjPointQ& alpha, u64 pmax, int n_max,
                                    const WitnessOptions& opts) {
    const auto pcf = orbits::pcf_certify(f);
    if (!pcf.is_pcf) throw PreconditionError("map is not post-critically finite");
    if (std::holds_alternative<orbits::Preperiodic>(orbits::classify_orbit(f, alpha))) {
        throw PreconditionError("point is preperiodic; a wandering point is required");
    }
    if (orbits::is_exceptional(f, alpha)) throw PreconditionError("point is exceptional");

    const auto primes = zp::primes_up_to(pmax);
    const auto hit = kernels::first_match(primes.size(), [&](std::size_t i) {
        return residue::check_conditions(f, alpha, residue::Place{primes[i]}, pcf).all_pass();
    });
    if (!hit) {
        auto reasons = kernels::map<std::pair<u64, std::string>>(primes.size(), [&](std::size_t i) {
            const auto r = residue::check_conditions(f, alpha, residue::Place{primes[i]}, pcf);
            std::string why;
            for (const auto& s : r.failures) why += (why.empty() ? "" : "; ") + s;
            return std::make_pair(primes[i], why);
        });
        throw NoWitnessFound(pmax, std::move(reasons));
    }

    WitnessCertificate cert{f, alpha, residue::Place{primes[*hit]}, pcf.M, {}, {}, {}, std::nullopt};
    cert.report = residue::check_conditions(f, alpha, cert.prime, pcf);
    cert.lifts = padic::backward_orbit_local(f, alpha, cert.prime, opts.lift_count, opts.precision, pcf);

    int levels = 0;
    while (levels < n_max && int_pow(f.degree(), levels + 1) <= opts.tower.degree_cap) ++levels;
    if (levels > 0) {
        cert.tower = analyze_tower(f, alpha, levels, opts.tower);
        for (const auto& lvl : cert.tower) {
            for (const auto& fv : lvl.verdicts) {
                if (const auto* na = std::get_if<galois::NonAbelian>(&fv.verdict)) {
                    cert.tower_evidence = TowerEvidence{lvl.n, fv.factor, *na};
                    break;
                }
            }
            if (cert.tower_evidence) break;
        }
    }
    return cert;
}

std::string verify_certificate(const WitnessCertificate& c) {
    const auto pcf = orbits::pcf_certify(c.map);
    if (!pcf.is_pcf) return "map is not PCF";
    if (pcf.M != c.M) return "M differs: recorded " + std::to_string(c.M) + ", recomputed " + std::to_string(pcf.M);
    if (!zp::is_prime(c.prime.p)) return "recorded prime is not prime";

    const auto r = residue::check_conditions(c.map, c.point, c.prime, pcf);
    const auto& s = c.report;
    if (r.A != s.A || r.B != s.B || r.C != s.C || r.D != s.D || r.E != s.E || r.unit_multiplier != s.unit_multiplier) {
        return "condition flags differ from recomputation";
    }
    if (!r.all_pass()) return "conditions do not all pass";
    if (!s.cycle) return "cycle data missing";
    if (r.cycle->tail != s.cycle->tail || r.cycle->period != s.cycle->period || r.cycle->multiplier != s.cycle->multiplier) {
        return "cycle data differs from recomputation";
    }

    // Lifts: alpha_0 = alpha and f^n(alpha_{j+1}) = alpha_j, all in the disc of alpha, distinct.
    const auto [g, a] = residue::affine_chart(c.map, c.point);
    const auto& pts = c.lifts.points;
    if (pts.empty()) return "no backward-orbit points";
    const RationalMap gn = exactcore::iterate_map(g, r.cycle->period);
    std::set<Int> seen;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const auto& x = pts[j];
        if (x.p != c.prime.p || x.k < 1 || x.k > padic::kMaxPrecision) return "lift has the wrong prime or precision";
        if (x.residue < 0 || x.residue >= x.modulus()) return "lift residue out of range";
        if (j == 0 && x != padic::make_padic(a, x.p, x.k)) return "first lift is not the base point";
        if (x.reduction() != r.alpha_residue) return "lift leaves the residue disc";
        if (j > 0) {
            if (pts[j - 1].k != x.k) return "lift precisions differ";
            if (padic::eval_affine(gn, x) != pts[j - 1]) return "lift " + std::to_string(j) + " does not map to its predecessor";
        }
        if (!seen.insert(x.residue).second) return "backward-orbit points are not distinct";
    }

    for (const auto& lvl : c.tower) {
        const auto lp = level_polynomial(c.map, c.point, lvl.n);
        IntPoly prod{1};
        for (const auto& fv : lvl.verdicts) {
            if (!galois::is_irreducible(fv.factor)) return "tower factor is reducible";
            for (int i = 0; i < fv.multiplicity; ++i) prod = prod * fv.factor;
            const std::string why = galois::verify_verdict(fv.factor, fv.verdict);
            if (!why.empty()) return "level " + std::to_string(lvl.n) + ": " + why;
        }
        if (primitive_part(prod) != lp.F) return "level " + std::to_string(lvl.n) + " factors do not multiply to F_n";
        bool ab = true;
        for (const auto& fv : lvl.verdicts) ab = ab && galois::is_abelian(fv.verdict);
        if (ab != lvl.level_abelian) return "level " + std::to_string(lvl.n) + " aggregate verdict is inconsistent";
    }
    if (c.tower_evidence) {
        const auto& ev = c.tower_evidence;
        const auto lp = level_polynomial(c.map, c.point, ev->level);
        IntPoly q;
        if (!exact_divide(lp.F, ev->factor, q)) return "tower witness factor does not divide F_n";
        const std::string why = galois::verify_verdict(ev->factor, ev->witness);
        if (!why.empty()) return "tower witness: " + why;
    }
    return {};
}

}  // namespace arborlab::tower
