#include "arborlab/poly.hpp"

#include <cmath>
#include <sstream>

#include "arborlab/error.hpp"

namespace arborlab {

Int content(const IntPoly& f) {
    if (f.is_zero()) return 0;
    Int g = 0;
    for (const auto& c : f.coeffs()) {
        g = gcd(g, c);
        if (g == 1) break;
    }
    if (f.lead() < 0) g = -g;
    return g;
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    Int g = content(f);
    std::vector<Int> c(f.coeffs());
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

RatPoly to_rat(const IntPoly& f) {
    std::vector<Rat> c;
    c.reserve(f.size());
    for (const auto& v : f.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

IntPoly primitive_from_rat(const RatPoly& f) {
    if (f.is_zero()) return {};
    Int l = 1;
    for (const auto& v : f.coeffs()) l = lcm(l, Int(v.get_den()));
    std::vector<Int> c;
    c.reserve(f.size());
    for (const auto& v : f.coeffs()) c.emplace_back(v.get_num() * (l / v.get_den()));
    return primitive_part(IntPoly(std::move(c)));
}

RatPoly make_monic(const RatPoly& f) {
    if (f.is_zero()) return f;
    Rat inv = 1 / f.lead();
    return f * inv;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.degree() < b.degree()) return {RatPoly{}, a};
    std::vector<Rat> r(a.coeffs());
    const int db = b.degree();
    std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db + 1), Rat(0));
    const Rat inv = 1 / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        Rat t = r[i] * inv;
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
    }
    r.resize(static_cast<std::size_t>(db));
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly rem(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

RatPoly gcd(const RatPoly& a0, const RatPoly& b0) {
    RatPoly a = a0, b = b0;
    while (!b.is_zero()) {
        RatPoly r = rem(a, b);
        a = std::move(b);
        b = make_monic(r);
    }
    return make_monic(a);
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    return primitive_from_rat(gcd(to_rat(a), to_rat(b)));
}

bool exact_divide(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.is_zero()) {
        quotient = IntPoly{};
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<Int> r(a.coeffs());
    const int db = b.degree();
    std::vector<Int> q(static_cast<std::size_t>(a.degree() - db + 1), Int(0));
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.lead().get_mpz_t())) return false;
        Int t = r[i] / b.lead();
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
    }
    for (int i = 0; i < db; ++i)
        if (r[i] != 0) return false;
    quotient = IntPoly(std::move(q));
    return true;
}

Rat resultant(const RatPoly& a0, const RatPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) return 0;
    RatPoly a = a0, b = b0;
    Rat res = 1;
    while (b.degree() > 0) {
        RatPoly r = rem(a, b);
        if (r.is_zero()) return 0;
        const int da = a.degree(), db = b.degree(), dr = r.degree();
        if ((da % 2 == 1) && (db % 2 == 1)) res = -res;
        Rat lp;
        mpz_pow_ui(lp.get_num_mpz_t(), b.lead().get_num_mpz_t(), static_cast<unsigned long>(da - dr));
        mpz_pow_ui(lp.get_den_mpz_t(), b.lead().get_den_mpz_t(), static_cast<unsigned long>(da - dr));
        lp.canonicalize();
        res *= lp;
        a = std::move(b);
        b = std::move(r);
    }
    Rat lp;
    mpz_pow_ui(lp.get_num_mpz_t(), b.lead().get_num_mpz_t(), static_cast<unsigned long>(a.degree()));
    mpz_pow_ui(lp.get_den_mpz_t(), b.lead().get_den_mpz_t(), static_cast<unsigned long>(a.degree()));
    lp.canonicalize();
    return res * lp;
}

Int resultant(const IntPoly& a, const IntPoly& b) {
    Rat r = resultant(to_rat(a), to_rat(b));
    return r.get_num();
}

Rat discriminant(const RatPoly& f) {
    const int n = f.degree();
    if (n < 1) throw Error("discriminant of a constant");
    Rat r = resultant(f, f.derivative()) / f.lead();
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

Int discriminant(const IntPoly& f) { return discriminant(to_rat(f)).get_num(); }

IntPoly squarefree_part(const IntPoly& f) {
    if (f.is_zero()) throw Error("squarefree part of zero");
    if (f.degree() <= 0) return IntPoly{1};
    RatPoly fr = to_rat(f);
    RatPoly g = gcd(fr, fr.derivative());
    return primitive_from_rat(divmod(fr, g).first);
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    std::vector<std::pair<IntPoly, int>> out;
    if (f.degree() <= 0) return out;
    RatPoly fr = make_monic(to_rat(f));
    RatPoly fd = fr.derivative();
    RatPoly a = gcd(fr, fd);
    RatPoly b = divmod(fr, a).first;
    RatPoly c = divmod(fd, a).first;
    RatPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        RatPoly ai = gcd(b, d);
        if (ai.degree() > 0) out.emplace_back(primitive_from_rat(ai), i);
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

RatPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    const std::size_t n = xs.size();
    std::vector<Rat> dd(ys);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    RatPoly acc = RatPoly::constant(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        acc = acc * RatPoly(std::vector<Rat>{-xs[i], Rat(1)});
        acc += RatPoly::constant(dd[i]);
    }
    return acc;
}

Int determinant(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

template <typename T>
std::string poly_string(const Polynomial<T>& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        T c = f.coeffs()[i];
        if (c == 0) continue;
        if (c < 0) {
            os << '-';
            c = -c;
        } else if (!first) {
            os << '+';
        }
        first = false;
        if (i == 0) {
            os << c.get_str();
            continue;
        }
        if (c != 1) os << c.get_str() << '*';
        os << 'x';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

}  // namespace

std::string to_string(const IntPoly& f) { return poly_string(f); }
std::string to_string(const RatPoly& f) { return poly_string(f); }

double log_abs(const Int& n) {
    if (n == 0) throw Error("log of zero");
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace arborlab
