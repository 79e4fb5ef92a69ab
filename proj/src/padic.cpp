#include "arborlab/padic.hpp"

#include <algorithm>
#include <set>

#include "arborlab/error.hpp"

namespace arborlab::padic {

namespace {

Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw Error("internal: element is not a unit");
    return r;
}

Int eval_mod(const IntPoly& f, const Int& x, const Int& m) {
    Int acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = mod(acc * x + f.coeff(static_cast<std::size_t>(i)), m);
    return acc;
}

void check_precision(int k) {
    if (k < 1) throw PreconditionError("precision must be at least 1");
    if (k > kMaxPrecision) throw ResourceLimit("precision " + std::to_string(k) + " exceeds the cap " + std::to_string(kMaxPrecision));
}

residue::ReducedMap require_good(const RationalMap& f, const Place& v) {
    auto red = residue::reduce_map(f, v, false);
    if (auto* bad = std::get_if<residue::BadReduction>(&red)) {
        throw PreconditionError("bad reduction at " + std::to_string(v.p) + " (v_p(Res) = " + std::to_string(bad->valuation) + ")");
    }
    return std::get<residue::ReducedMap>(red);
}

// A point near a residue class: affine coordinate x, or u = 1/x when the
// class is infinity.
struct LocalPoint {
    bool inf_chart = false;
    Int value;
};

// Newton iteration for a simple root of F near `seed`, at precision p^k.
Int newton(const IntPoly& F, const Int& seed, u64 p, int k) {
    const IntPoly dF = F.derivative();
    const Int P(static_cast<unsigned long>(p));
    if (eval_mod(F, seed, P) != 0) throw PreconditionError("seed is not a root of the local equation mod p");
    if (eval_mod(dF, seed, P) == 0) throw PreconditionError("Hensel condition fails: local derivative is not a unit");
    std::vector<int> schedule;
    for (int j = k; j > 1; j = (j + 1) / 2) schedule.push_back(j);
    std::reverse(schedule.begin(), schedule.end());
    Int x = mod(seed, P);
    for (int j : schedule) {
        const Int m = power(p, j);
        x = mod(x - eval_mod(F, x, m) * inverse(eval_mod(dF, x, m), m), m);
    }
    return x;
}

// Preimage of `target` under f inside the residue class `seed` (0..p), in
// the chart of the seed.
LocalPoint lift_step(const RationalMap& f, u64 p, int k, const LocalPoint& target, u64 seed) {
    const int d = f.degree();
    const bool seed_inf = seed == p;
    const IntPoly Ps = seed_inf ? f.p().reversed(d) : f.p();
    const IntPoly Qs = seed_inf ? f.q().reversed(d) : f.q();
    const IntPoly F = target.inf_chart ? Qs - Ps * target.value : Ps - Qs * target.value;
    return {seed_inf, newton(F, seed_inf ? Int(0) : Int(static_cast<unsigned long>(seed)), p, k)};
}

}  // namespace

Int power(u64 p, int k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

Int PadicInt::modulus() const { return power(p, k); }

u64 PadicInt::reduction() const { return zp::reduce(residue, p); }

PadicInt make_padic(const Int& value, u64 p, int k) {
    check_precision(k);
    return {p, k, mod(value, power(p, k))};
}

PadicInt make_padic(const ProjPointQ& pt, u64 p, int k) {
    check_precision(k);
    const Int m = power(p, k);
    if (zp::reduce(pt.x2(), p) == 0) throw PreconditionError("point is not integral at " + std::to_string(p));
    return {p, k, mod(pt.x1() * inverse(pt.x2(), m), m)};
}

std::optional<int> valuation(const Int& n, u64 p) {
    if (n == 0) return std::nullopt;
    Int r = n;
    const Int P(static_cast<unsigned long>(p));
    int v = 0;
    while (r % P == 0) {
        r /= P;
        ++v;
    }
    return v;
}

Rat proj_metric(const ProjPointQ& x, const ProjPointQ& y, const Place& v) {
    const auto val = valuation(x.x1() * y.x2() - x.x2() * y.x1(), v.p);
    if (!val) return Rat(0);
    return Rat(Int(1), power(v.p, *val));
}

PadicInt eval_affine(const RationalMap& f, const PadicInt& x) {
    const Int m = x.modulus();
    const Int den = eval_mod(f.q(), x.residue, m);
    if (zp::reduce(den, x.p) == 0) throw PreconditionError("denominator is not a unit at this point");
    return {x.p, x.k, mod(eval_mod(f.p(), x.residue, m) * inverse(den, m), m)};
}

DiscClass classify_fixed_disc(const RationalMap& f, const Place& v, u64 residue, int k) {
    check_precision(k);
    const auto fbar = require_good(f, v);
    if (residue > v.p) throw PreconditionError("residue outside P^1(F_p)");
    const u64 image = fbar.eval(residue);
    if (image != residue) return NotFixed{image};
    const u64 dv = fbar.local_derivative(residue);
    const bool inv = residue == v.p;
    if (dv != 0) return UnitSurjective{dv, inv};
    const RationalMap g = inv ? exactcore::invert_chart(f) : f;
    PadicInt x = make_padic(Int(inv ? 0UL : static_cast<unsigned long>(residue)), v.p, k);
    // Each step gains at least one digit.
    for (int j = 0; j < k; ++j) {
        PadicInt nx = eval_affine(g, x);
        if (nx == x) break;
        x = std::move(nx);
    }
    if (eval_affine(g, x) != x) throw Error("internal: Banach iteration did not converge");
    return Attracting{x, inv};
}

PadicInt hensel_lift_preimage(const RationalMap& f, const Place& v, const PadicInt& target, u64 seed_residue, int k) {
    check_precision(k);
    if (target.p != v.p) throw PreconditionError("target lives at a different prime");
    if (k > target.k) throw PreconditionError("target is known only to precision " + std::to_string(target.k));
    if (seed_residue >= v.p) throw PreconditionError("seed must be an affine residue");
    const auto fbar = require_good(f, v);
    if (fbar.eval(seed_residue) != target.reduction()) {
        throw PreconditionError("seed residue " + std::to_string(seed_residue) + " does not map to the target residue");
    }
    const LocalPoint lp = lift_step(f, v.p, k, LocalPoint{false, mod(target.residue, power(v.p, k))}, seed_residue);
    return {v.p, k, lp.value};
}

BackwardOrbit backward_orbit_local(const RationalMap& f, const ProjPointQ& alpha, const Place& v, int m, int k) {
    return backward_orbit_local(f, alpha, v, m, k, orbits::pcf_certify(f));
}

BackwardOrbit backward_orbit_local(const RationalMap& f0, const ProjPointQ& alpha0, const Place& v, int m, int k,
                                   const orbits::PcfCertificate& cert) {
    check_precision(k);
    if (m < 0) throw PreconditionError("backward orbit length must be nonnegative");
    const auto report = residue::check_conditions(f0, alpha0, v, cert);
    if (!report.all_pass()) {
        std::string why;
        for (const auto& s : report.failures) why += (why.empty() ? "" : "; ") + s;
        throw PreconditionError("conditions fail at " + std::to_string(v.p) + ": " + why);
    }
    const auto [f, alpha] = residue::affine_chart(f0, alpha0);
    const auto& cyc = report.cycle->cycle_points;
    BackwardOrbit out;
    out.period = static_cast<int>(cyc.size());
    out.chart_swapped = report.chart_swapped;
    for (int K = k;; K *= 2) {
        if (K > kMaxPrecision) throw ResourceLimit("backward orbit points not separated below precision " + std::to_string(kMaxPrecision));
        std::vector<PadicInt> pts{make_padic(alpha, v.p, K)};
        for (int j = 1; j <= m; ++j) {
            LocalPoint y{false, pts.back().residue};
            for (std::size_t i = cyc.size(); i-- > 0;) y = lift_step(f, v.p, K, y, cyc[i]);
            if (y.inf_chart) throw Error("internal: lift left the affine residue class");
            pts.push_back({v.p, K, y.value});
        }
        std::set<Int> distinct;
        for (const auto& x : pts) distinct.insert(x.residue);
        if (distinct.size() == pts.size()) {
            out.precision = K;
            out.points = std::move(pts);
            return out;
        }
    }
}

}  // namespace arborlab::padic
