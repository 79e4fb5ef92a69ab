#include "arborlab/residue.hpp"

#include <algorithm>

#include "arborlab/error.hpp"
#include "arborlab/kernels.hpp"

namespace arborlab::residue {

namespace {

int valuation(Int n, u64 p) {
    if (n == 0) throw Error("valuation of zero");
    const Int P(static_cast<unsigned long>(p));
    int v = 0;
    while (n % P == 0) {
        n /= P;
        ++v;
    }
    return v;
}

std::vector<std::vector<Int>> sylvester(const RationalMap& f) {
    const int d = f.degree();
    const std::size_t n = 2 * static_cast<std::size_t>(d);
    std::vector<std::vector<Int>> S(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k <= d; ++k) {
            S[static_cast<std::size_t>(i + k)][static_cast<std::size_t>(i)] = f.p_coeff(k);
            S[static_cast<std::size_t>(i + k)][static_cast<std::size_t>(d + i)] = f.q_coeff(k);
        }
    return S;
}

bool unit_determinant_mod(const std::vector<std::vector<Int>>& S, u64 p) {
    const std::size_t n = S.size();
    std::vector<std::vector<u64>> m(n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = zp::reduce(S[i][j], p);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return false;
        std::swap(m[k], m[piv]);
        const u64 inv = zp::invmod(m[k][k], p);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const u64 t = zp::mulmod(m[i][k], inv, p);
            for (std::size_t j = k; j < n; ++j) m[i][j] = (m[i][j] + p - zp::mulmod(t, m[k][j], p)) % p;
        }
    }
    return true;
}

// Brent's algorithm: returns (tail, period).
template <typename Step>
std::pair<int, int> brent(u64 x0, Step&& step) {
    std::size_t power = 1, lam = 1;
    u64 tortoise = x0, hare = step(x0);
    while (tortoise != hare) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = step(hare);
        ++lam;
    }
    tortoise = hare = x0;
    for (std::size_t i = 0; i < lam; ++i) hare = step(hare);
    std::size_t mu = 0;
    while (tortoise != hare) {
        tortoise = step(tortoise);
        hare = step(hare);
        ++mu;
    }
    return {static_cast<int>(mu), static_cast<int>(lam)};
}

u64 quotient(u64 num, u64 den, u64 p) { return zp::mulmod(num, zp::invmod(den, p), p); }

}  // namespace

Place make_place(u64 p) {
    if (p >= (u64{1} << 31) || !zp::is_prime(p)) throw PreconditionError(std::to_string(p) + " is not a prime below 2^31");
    return Place{p};
}

u64 reduce_point(const ProjPointQ& pt, u64 p) {
    const u64 x2 = zp::reduce(pt.x2(), p);
    if (x2 == 0) return p;
    return quotient(zp::reduce(pt.x1(), p), x2, p);
}

std::string residue_to_string(u64 idx, u64 p) { return idx == p ? "inf" : std::to_string(idx); }

Int homogeneous_resultant(const RationalMap& f) { return determinant(sylvester(f)); }

ReducedMap::ReducedMap(const RationalMap& f, u64 p, bool dense_graph)
    : p_(p),
      d_(f.degree()),
      pbar_(zp::from_int(f.p(), p)),
      qbar_(zp::from_int(f.q(), p)),
      dp_(zp::derivative(pbar_, p)),
      dq_(zp::derivative(qbar_, p)),
      pd_(zp::reduce(f.p_coeff(d_), p)),
      pd1_(zp::reduce(f.p_coeff(d_ - 1), p)),
      qd_(zp::reduce(f.q_coeff(d_), p)),
      qd1_(zp::reduce(f.q_coeff(d_ - 1), p)) {
    if (dense_graph && p + 1 <= kDenseGraphLimit) {
        graph_ = kernels::mode() == kernels::Mode::OpenMP ? functional_graph_omp(*this) : functional_graph_serial(*this);
    }
}

u64 ReducedMap::eval(u64 i) const {
    if (i == p_) return qd_ == 0 ? p_ : quotient(pd_, qd_, p_);
    const u64 den = zp::eval(qbar_, i, p_);
    if (den == 0) return p_;
    return quotient(zp::eval(pbar_, i, p_), den, p_);
}

u64 ReducedMap::local_derivative(u64 i) const {
    const u64 p = p_;
    const auto sub = [p](u64 a, u64 b) { return (a + p - b) % p; };
    if (i == p) {
        // f(1/u) near u = 0 with P(1, u) = pd + pd1 u + ..., Q(1, u) likewise.
        if (qd_ != 0) return quotient(sub(zp::mulmod(pd1_, qd_, p), zp::mulmod(pd_, qd1_, p)), zp::mulmod(qd_, qd_, p), p);
        return quotient(sub(zp::mulmod(qd1_, pd_, p), zp::mulmod(qd_, pd1_, p)), zp::mulmod(pd_, pd_, p), p);
    }
    const u64 pv = zp::eval(pbar_, i, p), qv = zp::eval(qbar_, i, p);
    const u64 dpv = zp::eval(dp_, i, p), dqv = zp::eval(dq_, i, p);
    if (qv != 0) return quotient(sub(zp::mulmod(dpv, qv, p), zp::mulmod(pv, dqv, p)), zp::mulmod(qv, qv, p), p);
    return quotient(sub(zp::mulmod(dqv, pv, p), zp::mulmod(qv, dpv, p)), zp::mulmod(pv, pv, p), p);
}

std::vector<std::uint32_t> functional_graph_serial(const ReducedMap& fbar) {
    std::vector<std::uint32_t> g(fbar.prime() + 1);
    kernels::for_each_index_serial(g.size(), [&](std::size_t i) { g[i] = static_cast<std::uint32_t>(fbar.eval(i)); });
    return g;
}

std::vector<std::uint32_t> functional_graph_omp(const ReducedMap& fbar) {
    std::vector<std::uint32_t> g(fbar.prime() + 1);
    kernels::for_each_index_omp(g.size(), [&](std::size_t i) { g[i] = static_cast<std::uint32_t>(fbar.eval(i)); });
    return g;
}

Reduction reduce_map(const RationalMap& f, const Place& v, bool dense_graph) {
    const auto S = sylvester(f);
    if (unit_determinant_mod(S, v.p)) return ReducedMap(f, v.p, dense_graph);
    BadReduction bad;
    bad.p = v.p;
    bad.resultant = determinant(S);
    bad.valuation = valuation(bad.resultant, v.p);
    return bad;
}

CycleData orbit_mod_p(const ReducedMap& fbar, u64 pt) {
    if (pt > fbar.prime()) throw PreconditionError("point index outside P^1(F_p)");
    const auto step = [&](u64 x) { return fbar.step(x); };
    CycleData c;
    std::tie(c.tail, c.period) = brent(pt, step);
    u64 x = pt;
    for (int i = 0; i < c.tail; ++i) x = step(x);
    c.multiplier = 1;
    for (int i = 0; i < c.period; ++i) {
        c.cycle_points.push_back(x);
        c.multiplier = zp::mulmod(c.multiplier, fbar.local_derivative(x), fbar.prime());
        x = step(x);
    }
    return c;
}

std::pair<RationalMap, ProjPointQ> affine_chart(const RationalMap& f, const ProjPointQ& alpha) {
    if (alpha.is_infinity()) return {exactcore::invert_chart(f), ProjPointQ(0)};
    return {f, alpha};
}

PlaceScan find_periodic_places(const RationalMap& f0, const ProjPointQ& alpha0, u64 pmax) {
    PlaceScan scan;
    scan.strictly_preperiodic = orbits::is_strictly_preperiodic(orbits::classify_orbit(f0, alpha0));
    scan.chart_swapped = alpha0.is_infinity();
    const auto [f, alpha] = affine_chart(f0, alpha0);
    const auto primes = zp::primes_up_to(pmax);
    const auto found = kernels::map<std::optional<PeriodicPlace>>(primes.size(), [&](std::size_t i) {
        const u64 p = primes[i];
        if (zp::reduce(alpha.x2(), p) == 0) return std::optional<PeriodicPlace>{};
        const auto red = reduce_map(f, Place{p}, false);
        const auto* fbar = std::get_if<ReducedMap>(&red);
        if (!fbar) return std::optional<PeriodicPlace>{};
        CycleData c = orbit_mod_p(*fbar, reduce_point(alpha, p));
        if (c.tail != 0) return std::optional<PeriodicPlace>{};
        return std::optional<PeriodicPlace>{PeriodicPlace{Place{p}, std::move(c)}};
    });
    for (const auto& pp : found)
        if (pp) scan.places.push_back(*pp);
    return scan;
}

ConditionReport check_conditions(const RationalMap& f0, const ProjPointQ& alpha0, const Place& v,
                                 const orbits::PcfCertificate& cert) {
    ConditionReport r;
    r.p = v.p;
    r.d = f0.degree();
    r.M = cert.M;
    r.chart_swapped = alpha0.is_infinity();
    const auto [f, alpha] = affine_chart(f0, alpha0);
    const u64 p = v.p;

    r.A = p > static_cast<u64>(r.d);
    if (!r.A) r.failures.push_back("A: residue characteristic " + std::to_string(p) + " <= degree " + std::to_string(r.d));

    r.C = zp::reduce(alpha.x2(), p) != 0;
    if (!r.C) r.failures.push_back("C: point is not integral at " + std::to_string(p));
    r.alpha_residue = reduce_point(alpha, p);

    auto red = reduce_map(f, v, false);
    if (auto* bad = std::get_if<BadReduction>(&red)) {
        r.bad = *bad;
        r.failures.push_back("B: bad reduction, v_p(Res) = " + std::to_string(bad->valuation));
        r.failures.push_back("D, E, multiplier: not evaluated without good reduction");
        return r;
    }
    r.B = true;
    const auto& fbar = std::get<ReducedMap>(red);

    r.cycle = orbit_mod_p(fbar, r.alpha_residue);
    r.D = r.cycle->tail == 0;
    if (!r.D) {
        r.failures.push_back("D: residue has tail " + std::to_string(r.cycle->tail) + " before its " +
                             std::to_string(r.cycle->period) + "-cycle");
    }
    r.unit_multiplier = r.D && r.cycle->multiplier != 0;
    if (r.D && !r.unit_multiplier) r.failures.push_back("multiplier vanishes mod " + std::to_string(p));

    const zp::Poly W = zp::from_int(exactcore::wronskian(f), p);
    if (W.empty()) {
        r.every_point_critical = true;
    } else {
        r.critical_residues = zp::roots(W, p);
        if (zp::degree(W) < 2 * r.d - 2) r.critical_residues.push_back(p);
    }
    r.E = true;
    u64 x = r.alpha_residue;
    for (int i = 0; i < r.M; ++i) {
        r.orbit_prefix.push_back(x);
        const bool critical = r.every_point_critical ||
                              std::find(r.critical_residues.begin(), r.critical_residues.end(), x) != r.critical_residues.end();
        if (critical && r.E) {
            r.E = false;
            r.failures.push_back("E: f^" + std::to_string(i) + "(alpha) reduces to the critical residue " +
                                 residue_to_string(x, p));
        }
        x = fbar.step(x);
    }
    return r;
}

}  // namespace arborlab::residue
