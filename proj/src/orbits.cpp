#include "arborlab/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "arborlab/error.hpp"
#include "arborlab/galois.hpp"

namespace arborlab::orbits {

namespace {

constexpr int kOrbitStepCap = 1'000'000;
constexpr double kHeightSlack = 1e-9;

// Solves S u = rhs over Q for a nonsingular square S.
std::vector<Rat> solve(std::vector<std::vector<Rat>> S, std::vector<Rat> rhs) {
    const std::size_t n = S.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && S[piv][k] == 0) ++piv;
        if (piv == n) throw Error("singular Sylvester matrix");
        std::swap(S[k], S[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || S[i][k] == 0) continue;
            const Rat t = S[i][k] / S[k][k];
            for (std::size_t j = k; j < n; ++j) S[i][j] -= t * S[k][j];
            rhs[i] -= t * rhs[k];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= S[i][i];
    return rhs;
}

}  // namespace

HeightBound height_bound(const RationalMap& f) {
    const int d = f.degree();
    Int hmax = 0;
    for (int i = 0; i <= d; ++i) {
        hmax = std::max(hmax, Int(abs(f.p_coeff(i))));
        hmax = std::max(hmax, Int(abs(f.q_coeff(i))));
    }
    HeightBound b;
    b.upper_part = std::log(static_cast<double>(d + 1)) + log_abs(hmax);

    // Sylvester matrix: columns x^i * P (i < d) then x^i * Q, rows = degree 0..2d-1.
    const std::size_t n = 2 * static_cast<std::size_t>(d);
    std::vector<std::vector<Rat>> S(n, std::vector<Rat>(n, Rat(0)));
    std::vector<std::vector<Int>> Si(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k <= d; ++k) {
            S[i + k][i] = f.p_coeff(k);
            S[i + k][d + i] = f.q_coeff(k);
            Si[i + k][i] = f.p_coeff(k);
            Si[i + k][d + i] = f.q_coeff(k);
        }
    const Int R = determinant(Si);
    Int hgh = 1;
    for (std::size_t target : {n - 1, std::size_t{0}}) {
        std::vector<Rat> rhs(n, Rat(0));
        rhs[target] = R;
        for (const auto& u : solve(S, rhs)) {
            if (u.get_den() != 1) throw Error("internal: adjugate solution is not integral");
            hgh = std::max(hgh, Int(abs(u.get_num())));
        }
    }
    b.lower_part = std::log(2.0 * d) + log_abs(hgh);
    b.C = std::max(b.upper_part, b.lower_part);
    b.threshold = b.C / (d - 1);
    return b;
}

double weil_height(const ProjPointQ& pt) {
    const Int m = std::max(Int(abs(pt.x1())), Int(abs(pt.x2())));
    return log_abs(m);
}

OrbitClass classify_orbit(const RationalMap& f, const ProjPointQ& alpha) {
    const HeightBound hb = height_bound(f);
    std::map<ProjPointQ, int> seen;
    ProjPointQ x = alpha;
    for (int i = 0; i < kOrbitStepCap; ++i) {
        if (auto it = seen.find(x); it != seen.end()) return Preperiodic{it->second, i - it->second};
        const double h = weil_height(x);
        if (h > hb.threshold + kHeightSlack) return Wandering{i, h};
        seen.emplace(x, i);
        x = exactcore::eval_map(f, x);
    }
    throw ResourceLimit("orbit classification exceeded the step cap");
}

bool is_exceptional(const RationalMap& f, const ProjPointQ& alpha) {
    // f^-2(alpha) = {alpha} iff the degree-d^2 form x2*P2 - x1*Q2 is a
    // constant multiple of (x2*X - x1*Y)^(d^2).
    const RationalMap f2 = exactcore::iterate_map(f, 2);
    const int D = f2.degree();
    const IntPoly L = f2.p() * alpha.x2() - f2.q() * alpha.x1();
    if (alpha.is_infinity()) return L.degree() == 0;
    if (L.degree() != D) return false;
    IntPoly lin(std::vector<Int>{-alpha.x1(), alpha.x2()});
    IntPoly pow{1};
    for (int i = 0; i < D; ++i) pow = pow * lin;
    return primitive_part(L) == primitive_part(pow);
}

HeightEstimate canonical_height(const RationalMap& f, const ProjPointQ& alpha, int n) {
    if (n < 1) throw PreconditionError("canonical_height needs n >= 1");
    const HeightBound hb = height_bound(f);
    ProjPointQ x = alpha;
    for (int i = 0; i < n; ++i) x = exactcore::eval_map(f, x);
    const double dn = std::pow(static_cast<double>(f.degree()), n);
    return {weil_height(x) / dn, hb.C / ((f.degree() - 1) * dn)};
}

PointClass PointClass::of(const ProjPointQ& pt) {
    if (pt.is_infinity()) return at_infinity();
    return {false, IntPoly(std::vector<Int>{-pt.x1(), pt.x2()})};
}

std::string to_string(const PointClass& c) {
    if (c.infinity) return "inf";
    if (c.minpoly.degree() == 1) {
        return exactcore::to_string(ProjPointQ(-c.minpoly.coeff(0), c.minpoly.coeff(1)));
    }
    return "roots(" + arborlab::to_string(c.minpoly) + ")";
}

PointClass push_forward(const RationalMap& f, const PointClass& c) {
    if (c.infinity) return PointClass::of(exactcore::eval_map(f, ProjPointQ::infinity()));
    const IntPoly& h = c.minpoly;
    if (h.degree() == 1) {
        return PointClass::of(exactcore::eval_map(f, ProjPointQ(-h.coeff(0), h.coeff(1))));
    }
    const RatPoly hr = to_rat(h), pr = to_rat(f.p()), qr = to_rat(f.q());
    // h irreducible: either every root is a pole or none is.
    if (rem(qr, hr).is_zero()) return PointClass::at_infinity();
    // N(x) = Res_y(h(y), x q(y) - p(y)) by interpolation in x.
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= h.degree(); ++k) {
        const Rat x0(k);
        xs.push_back(x0);
        ys.push_back(resultant(hr, qr * x0 - pr));
    }
    const IntPoly N = primitive_from_rat(interpolate(xs, ys));
    const IntPoly img = squarefree_part(N);
    if (h.degree() % img.degree() != 0) throw Error("internal: push-forward degree does not divide");
    return {false, img};
}

ClassHeight class_height(const PointClass& c) {
    if (c.infinity) return {0.0, 0.0};
    const IntPoly& u = c.minpoly;
    const int e = u.degree();
    double lower = 0;
    Int binom;
    Int sq = 0;
    for (int j = 0; j <= e; ++j) {
        const Int& a = u.coeffs()[j];
        sq += a * a;
        if (a == 0) continue;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(j));
        lower = std::max(lower, log_abs(a) - log_abs(binom));
    }
    // M(u) <= ||u||_2 (Landau).
    const double upper = 0.5 * log_abs(sq);
    return {lower / e, upper / e};
}

namespace {

// Exact period of a root of `cls` given that f^m maps the class to itself.
int exact_period(const RationalMap& f, const PointClass& cls, int class_period) {
    if (cls.infinity || cls.minpoly.degree() == 1) {
        const ProjPointQ start = cls.infinity ? ProjPointQ::infinity()
                                              : ProjPointQ(-cls.minpoly.coeff(0), cls.minpoly.coeff(1));
        ProjPointQ x = start;
        for (int k = 1;; ++k) {
            x = exactcore::eval_map(f, x);
            if (x == start) return k;
            if (k > class_period * 4096) throw Error("internal: rational periodic point did not return");
        }
    }
    // Iterate a generic root theta inside K = Q[t]/(minpoly).
    galois::NumberField K(cls.minpoly);
    const RatPoly pr = to_rat(f.p()), qr = to_rat(f.q());
    const RatPoly theta = K.generator();
    RatPoly x = theta;
    for (int k = 1; k <= class_period * cls.minpoly.degree(); ++k) {
        const RatPoly num = K.substitute(pr, x);
        const RatPoly den = K.substitute(qr, x);
        x = K.mul(num, K.inv(den));
        if (k % class_period == 0 && x == theta) return k;
    }
    throw Error("internal: periodic class did not return within the permutation bound");
}

}  // namespace

PcfCertificate pcf_certify(const RationalMap& f, int cap) {
    PcfCertificate cert;
    cert.bound = height_bound(f);
    const auto crit = exactcore::crit_poly(f);
    std::vector<std::pair<PointClass, int>> classes;
    for (const auto& [g, m] : crit.factors) classes.emplace_back(PointClass{false, g}, m);
    if (crit.infinity_multiplicity > 0) classes.emplace_back(PointClass::at_infinity(), crit.infinity_multiplicity);

    cert.is_pcf = true;
    for (const auto& [cls, mult] : classes) {
        CriticalOrbit co;
        co.critical = cls;
        co.multiplicity = mult;
        co.orbit.push_back(cls);
        bool decided = false;
        for (int step = 0; step < cap && !decided; ++step) {
            const PointClass next = push_forward(f, co.orbit.back());
            const auto it = std::find(co.orbit.begin(), co.orbit.end(), next);
            if (it != co.orbit.end()) {
                co.preperiodic = true;
                co.tail = static_cast<int>(it - co.orbit.begin());
                co.class_period = static_cast<int>(co.orbit.size()) - co.tail;
                if (co.tail == 0) co.period = exact_period(f, cls, co.class_period);
                decided = true;
                break;
            }
            co.orbit.push_back(next);
            const ClassHeight ch = class_height(next);
            if (ch.lower > cert.bound.threshold + kHeightSlack) {
                co.escape_step = static_cast<int>(co.orbit.size()) - 1;
                co.escape_lower_height = ch.lower;
                decided = true;
            }
        }
        if (!decided) throw ResourceLimit("PCF status undecided within " + std::to_string(cap) + " steps");
        const bool escaped = co.escape_step.has_value();
        cert.critical_orbits.push_back(std::move(co));
        if (escaped) {
            cert.is_pcf = false;
            break;
        }
    }
    if (!cert.is_pcf) return cert;

    for (const auto& co : cert.critical_orbits)
        if (co.tail == 0) cert.periodic_critical_periods.push_back(co.period);
    cert.M = cert.periodic_critical_periods.empty()
                 ? 0
                 : *std::max_element(cert.periodic_critical_periods.begin(), cert.periodic_critical_periods.end());

    // Forward images of the critical set until the accumulated union stops growing.
    std::size_t horizon = 0;
    for (const auto& co : cert.critical_orbits) horizon = std::max(horizon, co.orbit.size());
    for (std::size_t i = 1; i <= horizon; ++i) {
        AlgebraicPointSet step;
        for (const auto& co : cert.critical_orbits) {
            const std::size_t len = co.orbit.size();
            const std::size_t idx = i < len ? i : static_cast<std::size_t>(co.tail) + (i - co.tail) % co.class_period;
            const PointClass& c = co.orbit[idx];
            if (c.infinity) {
                step.infinity_multiplicity = 1;
                continue;
            }
            bool dup = false;
            for (const auto& [g, m] : step.factors) dup = dup || g == c.minpoly;
            if (!dup) step.factors.emplace_back(c.minpoly, 1);
        }
        cert.postcritical.push_back(std::move(step));
    }
    return cert;
}

}  // namespace arborlab::orbits
