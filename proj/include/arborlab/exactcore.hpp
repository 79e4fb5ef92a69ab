#pragma once

// Rational maps on P^1 over Q: normalized representation, homogeneous
// evaluation, iteration, critical points and the input grammar.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arborlab/poly.hpp"

namespace arborlab::exactcore {

// A point of P^1(Q) as coprime homogeneous coordinates (x1 : x2) with
// x2 > 0, or x2 = 0 and x1 = 1 for infinity.
class ProjPointQ {
public:
    ProjPointQ() : x1_(0), x2_(1) {}
    ProjPointQ(Int x1, Int x2);
    ProjPointQ(const Rat& value);  // NOLINT(google-explicit-constructor)
    ProjPointQ(long value) : ProjPointQ(Int(value), Int(1)) {}  // NOLINT

    static ProjPointQ infinity() { return ProjPointQ(Int(1), Int(0)); }

    const Int& x1() const { return x1_; }
    const Int& x2() const { return x2_; }
    bool is_infinity() const { return x2_ == 0; }
    // Affine value; throws for infinity.
    Rat value() const;

    friend bool operator==(const ProjPointQ& a, const ProjPointQ& b) {
        return a.x1_ == b.x1_ && a.x2_ == b.x2_;
    }
    friend bool operator!=(const ProjPointQ& a, const ProjPointQ& b) { return !(a == b); }
    friend bool operator<(const ProjPointQ& a, const ProjPointQ& b) {
        if (a.x2_ != b.x2_) return a.x2_ < b.x2_;
        return a.x1_ < b.x1_;
    }

private:
    Int x1_, x2_;
};

std::string to_string(const ProjPointQ& pt);
// Accepts "inf", "infinity", an integer, or "a/b".
ProjPointQ parse_point(std::string_view text);

// f = p/q with integer coefficients, gcd(p, q) = 1 in Q[x], joint content 1
// and the leading coefficient of q positive. Degree d = max(deg p, deg q) >= 2.
class RationalMap {
public:
    // Normalizes; throws PreconditionError for degree < 2, q = 0 or a
    // constant quotient.
    RationalMap(IntPoly p, IntPoly q);
    static RationalMap from_rational(const RatPoly& num, const RatPoly& den);
    static RationalMap polynomial(const IntPoly& p) { return RationalMap(p, IntPoly{1}); }

    const IntPoly& p() const { return p_; }
    const IntPoly& q() const { return q_; }
    int degree() const { return d_; }
    bool is_polynomial() const { return q_.degree() == 0; }

    // Coefficient i of the degree-d homogenization, i.e. of X^i Y^(d-i).
    Int p_coeff(int i) const { return p_.coeff(static_cast<std::size_t>(i)); }
    Int q_coeff(int i) const { return q_.coeff(static_cast<std::size_t>(i)); }

    friend bool operator==(const RationalMap& a, const RationalMap& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }
    friend bool operator!=(const RationalMap& a, const RationalMap& b) { return !(a == b); }

private:
    struct Trusted {};
    RationalMap(IntPoly p, IntPoly q, int d, Trusted);
    friend RationalMap compose(const RationalMap& f, const RationalMap& g);

    IntPoly p_, q_;
    int d_ = 0;
};

// Canonical "(<p>)/(<q>)" rendering; parse_map inverts it.
std::string to_string(const RationalMap& f);

RationalMap parse_map(std::string_view text);
// Polynomial in x over Q; returns the primitive integer multiple.
IntPoly parse_poly(std::string_view text);
// Polynomial in x over Q, exactly as written.
RatPoly parse_rat_poly(std::string_view text);

// f o g, computed on homogenizations so the result has degree deg f * deg g.
RationalMap compose(const RationalMap& f, const RationalMap& g);
RationalMap iterate_map(const RationalMap& f, int n);

// Evaluation of the degree-d homogenization at (x1 : x2).
ProjPointQ eval_map(const RationalMap& f, const ProjPointQ& pt);

// Conjugate by the involution 1/x: returns 1/f(1/x).
RationalMap invert_chart(const RationalMap& f);

// Finite set of algebraic points of P^1(Qbar), grouped into Galois orbits by
// primitive irreducible integer minimal polynomials, plus an optional
// infinity. Multiplicities are carried alongside.
struct AlgebraicPointSet {
    std::vector<std::pair<IntPoly, int>> factors;
    int infinity_multiplicity = 0;

    bool includes_infinity() const { return infinity_multiplicity > 0; }
    // Number of points counted with multiplicity.
    int total_multiplicity() const;
    // Number of distinct geometric points.
    int point_count() const;
};

// Wronskian p'q - pq'.
IntPoly wronskian(const RationalMap& f);
// Critical points with ramification multiplicities: finite ones from the
// factorization of the Wronskian, infinity from its degree deficit below 2d-2.
AlgebraicPointSet crit_poly(const RationalMap& f);

}  // namespace arborlab::exactcore
