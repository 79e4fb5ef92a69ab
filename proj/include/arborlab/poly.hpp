#pragma once

// Dense univariate polynomials over Z and Q backed by GMP.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace arborlab {

using Int = mpz_class;
using Rat = mpq_class;

// Coefficients are stored low degree first; the top coefficient is nonzero
// unless the polynomial is zero (empty coefficient vector).
template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
    static Polynomial monomial(const T& v, std::size_t deg) {
        std::vector<T> c(deg + 1, T(0));
        c[deg] = v;
        return Polynomial(std::move(c));
    }
    static Polynomial x() { return monomial(T(1), 1); }

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }

    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& lead() const { return c_.back(); }

    void set_coeff(std::size_t i, const T& v) {
        if (i >= c_.size()) c_.resize(i + 1, T(0));
        c_[i] = v;
        trim();
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(const T& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(r));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return Polynomial(std::move(r));
    }

    // Horner evaluation at a point of any ring that accepts T on the right.
    template <typename U>
    U eval(const U& x) const {
        U acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc *= x;
            acc += c_[i];
        }
        return acc;
    }

    // Substitute another polynomial: this(g(x)).
    Polynomial compose(const Polynomial& g) const {
        Polynomial acc;
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc = acc * g;
            acc += constant(c_[i]);
        }
        return acc;
    }

    // x^deg * this(1/x) for a declared degree bound `deg` >= degree().
    Polynomial reversed(std::size_t deg) const {
        std::vector<T> r(deg + 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[deg - i] = c_[i];
        return Polynomial(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using IntPoly = Polynomial<Int>;
using RatPoly = Polynomial<Rat>;

// ---- integer polynomial helpers ----

Int content(const IntPoly& f);  // gcd of coefficients, sign of the lead; 0 for zero
IntPoly primitive_part(const IntPoly& f);  // f / content, leading coefficient > 0
RatPoly to_rat(const IntPoly& f);
// Clears denominators and returns the primitive integer polynomial with
// positive leading coefficient that is a rational multiple of f.
IntPoly primitive_from_rat(const RatPoly& f);
RatPoly make_monic(const RatPoly& f);

// Euclidean division over Q. Throws on division by zero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly rem(const RatPoly& a, const RatPoly& b);
// Monic gcd over Q (zero when both inputs are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);
// Primitive gcd over Z[x] with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
// Exact quotient a / b in Z[x]; returns false when b does not divide a.
bool exact_divide(const IntPoly& a, const IntPoly& b, IntPoly& quotient);
// Resultant over Q via the Euclidean remainder sequence.
Rat resultant(const RatPoly& a, const RatPoly& b);
Int resultant(const IntPoly& a, const IntPoly& b);
Rat discriminant(const RatPoly& f);
Int discriminant(const IntPoly& f);
// Squarefree part (primitive) of a nonzero polynomial.
IntPoly squarefree_part(const IntPoly& f);
// Yun decomposition: f = content * prod_i g_i^i with g_i primitive,
// squarefree and pairwise coprime. Entries are (g_i, i) with deg g_i >= 1.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

// Unique interpolating polynomial through (xs[i], ys[i]).
RatPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

// Determinant by fraction-free Gaussian elimination.
Int determinant(std::vector<std::vector<Int>> m);

// Human readable form with descending terms, e.g. "2*x^3-x+5".
std::string to_string(const IntPoly& f);
std::string to_string(const RatPoly& f);

// log|n| for n != 0, accurate for arbitrarily large n.
double log_abs(const Int& n);

}  // namespace arborlab
