#include "arborlab/exactcore.hpp"

#include <cctype>

#include "arborlab/error.hpp"
#include "arborlab/galois.hpp"

namespace arborlab::exactcore {

ProjPointQ::ProjPointQ(Int x1, Int x2) : x1_(std::move(x1)), x2_(std::move(x2)) {
    if (x1_ == 0 && x2_ == 0) throw PreconditionError("(0:0) is not a point of P^1");
    Int g = gcd(x1_, x2_);
    x1_ /= g;
    x2_ /= g;
    if (x2_ < 0 || (x2_ == 0 && x1_ < 0)) {
        x1_ = -x1_;
        x2_ = -x2_;
    }
}

ProjPointQ::ProjPointQ(const Rat& value) : ProjPointQ(value.get_num(), value.get_den()) {}

Rat ProjPointQ::value() const {
    if (is_infinity()) throw PreconditionError("infinity has no affine value");
    return Rat(x1_, x2_);
}

std::string to_string(const ProjPointQ& pt) {
    if (pt.is_infinity()) return "inf";
    if (pt.x2() == 1) return pt.x1().get_str();
    return pt.x1().get_str() + "/" + pt.x2().get_str();
}

ProjPointQ parse_point(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "inf" || s == "infinity" || s == "oo") return ProjPointQ::infinity();
    if (s.empty()) throw ParseError("empty point", 0);
    std::size_t slash = s.find('/');
    auto parse_int = [&](const std::string& t, std::size_t offset) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) throw ParseError("expected integer", offset + i);
        for (std::size_t j = i; j < t.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(t[j])))
                throw ParseError("unexpected character in point", offset + j);
        return Int(t[0] == '+' ? t.substr(1) : t);
    };
    if (slash == std::string::npos) return ProjPointQ(parse_int(s, 0), Int(1));
    Int num = parse_int(s.substr(0, slash), 0);
    Int den = parse_int(s.substr(slash + 1), slash + 1);
    if (den == 0) throw ParseError("zero denominator", slash + 1);
    return ProjPointQ(Rat(num, den));
}

// ---- RationalMap ----

RationalMap::RationalMap(IntPoly p, IntPoly q) { *this = from_rational(to_rat(p), to_rat(q)); }

RationalMap RationalMap::from_rational(const RatPoly& num, const RatPoly& den) {
    if (den.is_zero()) throw PreconditionError("denominator is the zero polynomial");
    RatPoly pr = num, qr = den;
    RatPoly g = gcd(pr, qr);
    if (g.degree() > 0) {
        pr = divmod(pr, g).first;
        qr = divmod(qr, g).first;
    }
    const int d = std::max(pr.degree(), qr.degree());
    if (d < 1) throw PreconditionError("map is constant");
    if (d < 2) throw PreconditionError("map has degree 1; degree >= 2 required");
    // Clear denominators jointly.
    Int l = 1;
    for (const auto& v : pr.coeffs()) l = lcm(l, Int(v.get_den()));
    for (const auto& v : qr.coeffs()) l = lcm(l, Int(v.get_den()));
    std::vector<Int> pc, qc;
    for (const auto& v : pr.coeffs()) pc.emplace_back(v.get_num() * (l / v.get_den()));
    for (const auto& v : qr.coeffs()) qc.emplace_back(v.get_num() * (l / v.get_den()));
    return RationalMap(IntPoly(std::move(pc)), IntPoly(std::move(qc)), d, Trusted{});
}

RationalMap::RationalMap(IntPoly p, IntPoly q, int d, Trusted) : p_(std::move(p)), q_(std::move(q)), d_(d) {
    Int c = 0;
    for (const auto& v : p_.coeffs()) c = gcd(c, v);
    for (const auto& v : q_.coeffs()) c = gcd(c, v);
    if (q_.lead() < 0) c = -c;
    if (c != 1) {
        std::vector<Int> pc(p_.coeffs()), qc(q_.coeffs());
        for (auto& v : pc) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
        for (auto& v : qc) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
        p_ = IntPoly(std::move(pc));
        q_ = IntPoly(std::move(qc));
    }
}

std::string to_string(const RationalMap& f) {
    return "(" + to_string(f.p()) + ")/(" + to_string(f.q()) + ")";
}

namespace {

// Homogeneous substitution sum_i c_i * P^i * Q^(d-i).
IntPoly substitute_form(const IntPoly& c, int d, const IntPoly& P, const IntPoly& Q) {
    std::vector<IntPoly> ppow(d + 1), qpow(d + 1);
    ppow[0] = IntPoly{1};
    qpow[0] = IntPoly{1};
    for (int i = 1; i <= d; ++i) {
        ppow[i] = ppow[i - 1] * P;
        qpow[i] = qpow[i - 1] * Q;
    }
    IntPoly acc;
    for (int i = 0; i <= d; ++i) {
        const Int ci = c.coeff(static_cast<std::size_t>(i));
        if (ci == 0) continue;
        acc += (ppow[i] * qpow[d - i]) * ci;
    }
    return acc;
}

}  // namespace

RationalMap compose(const RationalMap& f, const RationalMap& g) {
    const int d = f.degree();
    IntPoly P = substitute_form(f.p(), d, g.p(), g.q());
    IntPoly Q = substitute_form(f.q(), d, g.p(), g.q());
    // Homogeneous composition of coprime forms stays coprime of degree d*e.
    return RationalMap(std::move(P), std::move(Q), d * g.degree(), RationalMap::Trusted{});
}

RationalMap iterate_map(const RationalMap& f, int n) {
    if (n < 1) throw PreconditionError("iterate_map needs n >= 1");
    RationalMap acc = f;
    for (int i = 1; i < n; ++i) acc = compose(f, acc);
    return acc;
}

ProjPointQ eval_map(const RationalMap& f, const ProjPointQ& pt) {
    const int d = f.degree();
    std::vector<Int> xp(d + 1), yp(d + 1);
    xp[0] = 1;
    yp[0] = 1;
    for (int i = 1; i <= d; ++i) {
        xp[i] = xp[i - 1] * pt.x1();
        yp[i] = yp[i - 1] * pt.x2();
    }
    Int a = 0, b = 0;
    for (int i = 0; i <= d; ++i) {
        const Int t = xp[i] * yp[d - i];
        a += f.p_coeff(i) * t;
        b += f.q_coeff(i) * t;
    }
    return ProjPointQ(std::move(a), std::move(b));
}

RationalMap invert_chart(const RationalMap& f) {
    // 1/f(1/x) = Q(1, x) / P(1, x) in homogeneous terms.
    const auto d = static_cast<std::size_t>(f.degree());
    return RationalMap(f.q().reversed(d), f.p().reversed(d));
}

int AlgebraicPointSet::total_multiplicity() const {
    int t = infinity_multiplicity;
    for (const auto& [g, m] : factors) t += g.degree() * m;
    return t;
}

int AlgebraicPointSet::point_count() const {
    int t = infinity_multiplicity > 0 ? 1 : 0;
    for (const auto& [g, m] : factors) t += g.degree();
    return t;
}

IntPoly wronskian(const RationalMap& f) {
    return f.p().derivative() * f.q() - f.p() * f.q().derivative();
}

AlgebraicPointSet crit_poly(const RationalMap& f) {
    const IntPoly w = wronskian(f);
    AlgebraicPointSet out;
    const auto fac = galois::factor_over_Q(w);
    out.factors = fac.factors;
    out.infinity_multiplicity = 2 * f.degree() - 2 - w.degree();
    return out;
}

}  // namespace arborlab::exactcore
