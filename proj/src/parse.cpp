// Recursive-descent parser for one-variable rational expressions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | <implicit> power)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := integer | 'x' | '(' expr ')'
//
// Juxtaposition ("2x", "(x+1)(x-1)") multiplies.

#include <cctype>

#include "arborlab/error.hpp"
#include "arborlab/exactcore.hpp"

namespace arborlab::exactcore {

namespace {

struct RatFunc {
    RatPoly num;
    RatPoly den;

    static RatFunc constant(const Rat& v) { return {RatPoly::constant(v), RatPoly::constant(Rat(1))}; }

    void reduce() {
        RatPoly g = gcd(num, den);
        if (g.degree() > 0) {
            num = divmod(num, g).first;
            den = divmod(den, g).first;
        }
        Rat l = den.lead();
        num = num * (1 / l);
        den = den * (1 / l);
    }
};

RatFunc add(const RatFunc& a, const RatFunc& b, bool subtract) {
    RatFunc r{a.num * b.den, a.den * b.den};
    RatPoly t = b.num * a.den;
    r.num = subtract ? r.num - t : r.num + t;
    r.reduce();
    return r;
}

RatFunc mul(const RatFunc& a, const RatFunc& b) {
    RatFunc r{a.num * b.num, a.den * b.den};
    r.reduce();
    return r;
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    RatFunc parse() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return r;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RatFunc expr() {
        RatFunc acc = term();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') return acc;
            ++pos_;
            acc = add(acc, term(), c == '-');
        }
    }

    RatFunc term() {
        RatFunc acc = unary();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = mul(acc, unary());
            } else if (c == '/') {
                std::size_t at = ++pos_;
                RatFunc d = unary();
                if (d.num.is_zero()) throw ParseError("division by zero", at);
                acc = mul(acc, RatFunc{d.den, d.num});
            } else if (c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
                acc = mul(acc, power());
            } else {
                return acc;
            }
        }
    }

    RatFunc unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            RatFunc r = unary();
            r.num = -r.num;
            return r;
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    RatFunc power() {
        RatFunc base = primary();
        if (peek() != '^') return base;
        ++pos_;
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        }
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer exponent", start);
        if (pos_ - start > 4) throw ParseError("exponent too large", start);
        const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
        RatFunc r = RatFunc::constant(Rat(1));
        for (int i = 0; i < e; ++i) r = mul(r, base);
        if (negative) {
            if (r.num.is_zero()) throw ParseError("zero raised to a negative power", start);
            std::swap(r.num, r.den);
            r.reduce();
        }
        return r;
    }

    RatFunc primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return r;
        }
        if (c == 'x') {
            ++pos_;
            return {RatPoly::x(), RatPoly::constant(Rat(1))};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatFunc::constant(Rat(Int(std::string(s_.substr(start, pos_ - start)))));
        }
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalMap parse_map(std::string_view text) {
    RatFunc r = Parser(text).parse();
    return RationalMap::from_rational(r.num, r.den);
}

IntPoly parse_poly(std::string_view text) {
    RatFunc r = Parser(text).parse();
    if (r.den.degree() != 0) throw PreconditionError("expected a polynomial, got a rational function");
    if (r.num.is_zero()) throw PreconditionError("zero polynomial");
    return primitive_from_rat(r.num);
}

RatPoly parse_rat_poly(std::string_view text) {
    RatFunc r = Parser(text).parse();
    if (r.den.degree() != 0) throw PreconditionError("expected a polynomial, got a rational function");
    return r.num * Rat(Rat(1) / r.den.lead());
}

}  // namespace arborlab::exactcore
