#include <algorithm>
#include <set>
#include <sstream>

#include "arborlab/error.hpp"
#include "arborlab/galois.hpp"
#include "arborlab/kernels.hpp"

namespace arborlab::galois {

// ---- NumberField ----

NumberField::NumberField(const IntPoly& defining) : defining_(primitive_part(defining)), monic_(make_monic(to_rat(defining))) {
    if (monic_.degree() < 1) throw PreconditionError("number field needs a nonconstant defining polynomial");
}

RatPoly NumberField::reduce(const RatPoly& a) const {
    if (a.degree() < monic_.degree()) return a;
    return rem(a, monic_);
}

RatPoly NumberField::mul(const RatPoly& a, const RatPoly& b) const { return reduce(a * b); }

RatPoly NumberField::inv(const RatPoly& a0) const {
    RatPoly a = reduce(a0);
    if (a.is_zero()) throw Error("inverse of zero in number field");
    // Extended Euclid: track u with u*a = r (mod G).
    RatPoly r0 = monic_, r1 = a, u0, u1 = RatPoly::constant(Rat(1));
    while (r1.degree() > 0) {
        auto [q, r] = divmod(r0, r1);
        RatPoly u2 = u0 - q * u1;
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (r1.is_zero()) throw Error("element is a zero divisor; defining polynomial is reducible");
    return reduce(u1 * (1 / r1.lead()));
}

RatPoly NumberField::substitute(const RatPoly& a, const RatPoly& b) const {
    RatPoly acc;
    for (int i = a.degree(); i >= 0; --i) {
        acc = mul(acc, b);
        acc += RatPoly::constant(a.coeffs()[i]);
    }
    return acc;
}

// ---- NfPoly ----

namespace {

void nf_trim(NfPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int nf_degree(const NfPoly& f) { return static_cast<int>(f.size()) - 1; }

NfPoly nf_monic(const NumberField& K, const NfPoly& f) {
    if (f.empty()) return f;
    RatPoly inv = K.inv(f.back());
    NfPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = K.mul(f[i], inv);
    r.back() = RatPoly::constant(Rat(1));
    return r;
}

// Norm_{K/Q} of f(x - s*t): prod over conjugates theta of f(x - s*theta),
// computed by evaluation at integers and interpolation.
RatPoly norm_shifted(const NumberField& K, const NfPoly& f, long s) {
    const int n = K.degree();
    const int m = nf_degree(f);
    const int deg = n * m;
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= deg; ++k) {
        const Rat x0(k);
        // sum_j f_j(t) * (x0 - s t)^j as a polynomial in t.
        const RatPoly lin(std::vector<Rat>{x0, Rat(-s)});
        RatPoly acc;
        for (int j = m; j >= 0; --j) {
            acc = acc * lin;
            acc += f[static_cast<std::size_t>(j)];
        }
        xs.push_back(x0);
        ys.push_back(resultant(K.modulus(), acc));
    }
    return interpolate(xs, ys);
}

NfPoly nf_shift(const NumberField& K, const RatPoly& g, long s) {
    // g(x + s*t) with g rational.
    const NfPoly lin{K.reduce(RatPoly::monomial(Rat(s), 1)), RatPoly::constant(Rat(1))};
    NfPoly acc;
    for (int i = g.degree(); i >= 0; --i) {
        acc = nf_mul(K, acc, lin);
        if (acc.empty()) acc.resize(1);
        acc[0] += RatPoly::constant(g.coeffs()[i]);
        nf_trim(acc);
    }
    return acc;
}

long shift_value(int k) {
    // 0, 1, -1, 2, -2, ...
    return (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
}

}  // namespace

NfPoly nf_from_rational(const RatPoly& g) {
    NfPoly r;
    for (const auto& c : g.coeffs()) r.push_back(RatPoly::constant(c));
    nf_trim(r);
    return r;
}

NfPoly nf_mul(const NumberField& K, const NfPoly& a, const NfPoly& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<RatPoly> raw(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) raw[i + j] += a[i] * b[j];
    }
    NfPoly r;
    r.reserve(raw.size());
    for (auto& c : raw) r.push_back(K.reduce(c));
    nf_trim(r);
    return r;
}

std::pair<NfPoly, NfPoly> nf_divmod(const NumberField& K, const NfPoly& a, const NfPoly& b) {
    if (b.empty()) throw Error("division by zero polynomial over number field");
    if (a.size() < b.size()) return {NfPoly{}, a};
    NfPoly r(a);
    const std::size_t db = b.size() - 1;
    NfPoly q(a.size() - db);
    const RatPoly inv = K.inv(b.back());
    for (std::size_t i = a.size(); i-- > db;) {
        if (r[i].is_zero()) continue;
        RatPoly t = K.mul(r[i], inv);
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = K.reduce(r[i - db + j] - t * b[j]);
        q[i - db] = std::move(t);
    }
    r.resize(db);
    nf_trim(r);
    nf_trim(q);
    return {q, r};
}

NfPoly nf_gcd(const NumberField& K, const NfPoly& a0, const NfPoly& b0) {
    NfPoly a = a0, b = b0;
    while (!b.empty()) {
        NfPoly r = nf_divmod(K, a, b).second;
        a = std::move(b);
        b = nf_monic(K, r);
    }
    return nf_monic(K, a);
}

RatPoly nf_eval(const NumberField& K, const NfPoly& f, const RatPoly& at) {
    RatPoly acc;
    for (std::size_t i = f.size(); i-- > 0;) acc = K.reduce(K.mul(acc, at) + f[i]);
    return acc;
}

std::string to_string(const NfPoly& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << '(' << to_string(f[i]).c_str() << ')';
        if (i > 0) os << "*X";
        if (i > 1) os << '^' << i;
    }
    std::string s = os.str();
    // Field elements are printed in the generator t.
    for (auto& c : s)
        if (c == 'x') c = 't';
    for (auto& c : s)
        if (c == 'X') c = 'x';
    return s;
}

FactorizationNf factor_over_nf(const IntPoly& g, const NumberField& K) {
    if (g.is_zero()) throw PreconditionError("cannot factor the zero polynomial");
    FactorizationNf out;
    out.unit = RatPoly::constant(Rat(g.lead()));
    if (g.degree() < 1) return out;
    for (const auto& [block, mult] : squarefree_decomposition(primitive_part(g))) {
        const RatPoly h = make_monic(to_rat(block));
        if (block.degree() == 1) {
            out.factors.emplace_back(nf_from_rational(h), mult);
            continue;
        }
        const NfPoly hx = nf_from_rational(h);
        bool done = false;
        for (int k = 0; k < 64 && !done; ++k) {
            const long s = shift_value(k);
            RatPoly N = norm_shifted(K, hx, s);
            if (gcd(N, N.derivative()).degree() > 0) continue;
            const auto nf = factor_over_Q(primitive_from_rat(N));
            int total = 0;
            for (const auto& [Nj, e] : nf.factors) {
                NfPoly cand = nf_gcd(K, hx, nf_shift(K, to_rat(Nj), s));
                if (nf_degree(cand) >= 1) {
                    total += nf_degree(cand);
                    out.factors.emplace_back(std::move(cand), mult);
                }
            }
            if (total != block.degree()) throw Error("internal: norm factorization lost degree");
            out.shift = static_cast<int>(s);
            done = true;
        }
        if (!done) throw ResourceLimit("no squarefree norm shift found");
    }
    // Product check.
    NfPoly prod{out.unit};
    for (const auto& [f, m] : out.factors)
        for (int i = 0; i < m; ++i) prod = nf_mul(K, prod, f);
    if (prod != nf_from_rational(to_rat(g))) throw Error("internal: number-field factor product mismatch");
    std::stable_sort(out.factors.begin(), out.factors.end(),
                     [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
    return out;
}

// ---- abelian decision ----

GaloisVerdict is_abelian_galois(const IntPoly& G0) {
    const IntPoly G = primitive_part(G0);
    if (G.degree() < 1) throw PreconditionError("is_abelian_galois needs a nonconstant polynomial");
    if (!is_irreducible(G)) throw PreconditionError("is_abelian_galois needs an irreducible polynomial");
    NumberField K(G);
    if (G.degree() == 1) return Abelian{{K.reduce(K.generator())}};
    const auto fac = factor_over_nf(G, K);
    std::vector<RatPoly> roots;
    for (const auto& [f, m] : fac.factors) {
        if (nf_degree(f) > 1) return NonAbelian{NotNormal{f}};
        roots.push_back(K.reduce(-f[0]));
    }
    const RatPoly identity = K.generator();
    std::sort(roots.begin(), roots.end(), [&](const RatPoly& a, const RatPoly& b) {
        if ((a == identity) != (b == identity)) return a == identity;
        return to_string(a) < to_string(b);
    });
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (K.substitute(roots[i], roots[j]) != K.substitute(roots[j], roots[i]))
                return NonAbelian{NonCommutingPair{static_cast<int>(i), static_cast<int>(j), roots[i], roots[j]}};
        }
    return Abelian{std::move(roots)};
}

std::optional<std::vector<int>> unramified_degree_pattern(const IntPoly& G, zp::u64 p) {
    if (zp::reduce(G.lead(), p) == 0) return std::nullopt;
    const zp::Poly gp = zp::from_int(G, p);
    if (zp::degree(zp::gcd(gp, zp::derivative(gp, p), p)) > 0) return std::nullopt;
    return zp::factor_degrees_squarefree(gp, p);
}

std::optional<UnequalDegrees> unequal_degree_witness(const IntPoly& G, zp::u64 pmax) {
    const auto primes = zp::primes_up_to(pmax);
    auto hit = kernels::first_match(primes.size(), [&](std::size_t i) {
        auto pat = unramified_degree_pattern(G, primes[i]);
        return pat && pat->front() != pat->back();
    });
    if (!hit) return std::nullopt;
    return UnequalDegrees{primes[*hit], *unramified_degree_pattern(G, primes[*hit])};
}

std::string verify_verdict(const IntPoly& G0, const GaloisVerdict& verdict) {
    const IntPoly G = primitive_part(G0);
    NumberField K(G);
    const RatPoly Gr = to_rat(G);
    auto is_root = [&](const RatPoly& r) { return K.substitute(Gr, r).is_zero(); };
    if (const auto* ab = std::get_if<Abelian>(&verdict)) {
        const auto& maps = ab->root_maps;
        if (static_cast<int>(maps.size()) != G.degree()) return "root map count differs from degree";
        std::set<std::string> keys;
        for (const auto& r : maps) {
            if (!is_root(r)) return "root map is not a root of G";
            keys.insert(to_string(r));
        }
        if (keys.size() != maps.size()) return "root maps are not distinct";
        if (!keys.count(to_string(K.reduce(K.generator())))) return "identity missing";
        for (const auto& a : maps)
            for (const auto& b : maps) {
                const RatPoly ab_ = K.substitute(a, b);
                if (!keys.count(to_string(ab_))) return "root maps not closed under composition";
                if (ab_ != K.substitute(b, a)) return "root maps do not commute";
            }
        return "";
    }
    const auto& na = std::get<NonAbelian>(verdict);
    if (const auto* ud = std::get_if<UnequalDegrees>(&na.witness)) {
        if (!zp::is_prime(ud->p)) return "witness modulus is not prime";
        auto pat = unramified_degree_pattern(G, ud->p);
        if (!pat) return "witness prime is ramified";
        if (*pat != ud->degrees) return "degree pattern does not reproduce";
        if (pat->front() == pat->back()) return "degrees are equal";
        return "";
    }
    if (const auto* nc = std::get_if<NonCommutingPair>(&na.witness)) {
        if (!is_root(nc->first) || !is_root(nc->second)) return "pair members are not roots of G";
        if (K.substitute(nc->first, nc->second) == K.substitute(nc->second, nc->first)) return "pair commutes";
        return "";
    }
    const auto& nn = std::get<NotNormal>(na.witness);
    if (nf_degree(nn.nonlinear_factor) < 2) return "factor is linear";
    if (!nf_divmod(K, nf_from_rational(Gr), nn.nonlinear_factor).second.empty()) return "factor does not divide G";
    // Irreducibility over K through a squarefree norm, which must then be
    // irreducible over Q.
    for (int k = 0; k < 64; ++k) {
        RatPoly N = norm_shifted(K, nn.nonlinear_factor, shift_value(k));
        if (gcd(N, N.derivative()).degree() > 0) continue;
        return is_irreducible(primitive_from_rat(N)) ? "" : "factor is reducible over K";
    }
    return "no squarefree norm found";
}

std::string describe(const GaloisVerdict& v) {
    if (const auto* ab = std::get_if<Abelian>(&v))
        return "Abelian (" + std::to_string(ab->root_maps.size()) + " commuting root maps)";
    const auto& na = std::get<NonAbelian>(v);
    if (const auto* ud = std::get_if<UnequalDegrees>(&na.witness)) {
        std::string s = "NonAbelian (unequal degrees mod " + std::to_string(ud->p) + ": {";
        for (std::size_t i = 0; i < ud->degrees.size(); ++i) s += (i ? "," : "") + std::to_string(ud->degrees[i]);
        return s + "})";
    }
    if (const auto* nc = std::get_if<NonCommutingPair>(&na.witness))
        return "NonAbelian (root maps " + std::to_string(nc->i) + " and " + std::to_string(nc->j) + " do not commute)";
    return "NonAbelian (not normal: nonlinear factor " + to_string(std::get<NotNormal>(na.witness).nonlinear_factor) + ")";
}

}  // namespace arborlab::galois
