#include <random>

#include "arborlab/error.hpp"
#include "arborlab/exactcore.hpp"
#include "doctest.h"

using namespace arborlab;
using namespace arborlab::exactcore;

namespace {

IntPoly ip(std::initializer_list<long> c) {
    std::vector<Int> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(v);
}

RationalMap pm(std::initializer_list<long> c) { return RationalMap::polynomial(ip(c)); }

std::vector<RationalMap> sample_maps() {
    return {parse_map("x^2+1"),       parse_map("x^2-2"),        parse_map("(x^2+1)/x"),
            parse_map("x^2/(x-1)"),   parse_map("x^3-3*x"),      parse_map("1/x^2"),
            parse_map("(2x^3-x)/(x^2+3)"), parse_map("(x^2-1)/(2x)"), parse_map("-x^2+2"),
            parse_map("(x^3+2)/(5x^2-1)")};
}

}  // namespace

TEST_CASE("parse_map normalizes") {
    auto f = parse_map("x^2+1");
    CHECK(f.p() == ip({1, 0, 1}));
    CHECK(f.q() == ip({1}));
    CHECK(f.degree() == 2);

    auto g = parse_map("(x^2+1)/x");
    CHECK(g.p() == ip({1, 0, 1}));
    CHECK(g.q() == ip({0, 1}));

    auto h = parse_map("(2x^2+2)/2");
    CHECK(h.p() == ip({1, 0, 1}));
    CHECK(h.q() == ip({1}));

    auto r = parse_map("x^2/4 - 1/3");
    CHECK(r.p() == ip({-4, 0, 3}));
    CHECK(r.q() == ip({12}));

    // Common factor cancels.
    auto c = parse_map("(x^3-x)/(x^2-2x+1)");
    CHECK(c.p() == ip({0, 1, 1}));
    CHECK(c.q() == ip({-1, 1}));
    CHECK_THROWS_AS(parse_map("(x^3-x)/(x^2-x)"), PreconditionError);
}

TEST_CASE("parse_map rejects") {
    CHECK_THROWS_AS(parse_map("x+1"), PreconditionError);
    CHECK_THROWS_AS(parse_map("(x^2+x)/(x^2+x)"), PreconditionError);
    CHECK_THROWS_AS(parse_map("x^2/0"), ParseError);
    CHECK_THROWS_AS(parse_map("x^2+"), ParseError);
    CHECK_THROWS_AS(parse_map("x^2 $ 1"), ParseError);
    try {
        parse_map("x^2 + * 3");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 6);
    }
}

TEST_CASE("pretty print round-trips") {
    for (const auto& f : sample_maps()) CHECK(parse_map(to_string(f)) == f);
}

TEST_CASE("iterate_map examples") {
    CHECK(iterate_map(parse_map("x^2-1"), 2) == pm({0, 0, -2, 0, 1}));
    CHECK(iterate_map(parse_map("1/x^2"), 2) == pm({0, 0, 0, 0, 1}));
    auto f3 = iterate_map(parse_map("x^2"), 3);
    CHECK(f3.degree() == 8);
    CHECK(f3 == RationalMap::polynomial(IntPoly::monomial(Int(1), 8)));
}

TEST_CASE("iteration is compatible with composition") {
    for (const auto& f : sample_maps()) {
        for (int m = 1; m <= 2; ++m)
            for (int n = 1; n <= 2; ++n) {
                CHECK(iterate_map(f, m + n) == compose(iterate_map(f, m), iterate_map(f, n)));
                CHECK(iterate_map(iterate_map(f, m), n) == iterate_map(f, m * n));
                CHECK(iterate_map(f, m + n).degree() == iterate_map(f, m).degree() * iterate_map(f, n).degree());
            }
    }
}

TEST_CASE("eval_map examples") {
    CHECK(eval_map(parse_map("x^2"), ProjPointQ(Int(3), Int(2))) == ProjPointQ(Int(9), Int(4)));
    CHECK(eval_map(parse_map("x^2-2"), ProjPointQ::infinity()) == ProjPointQ::infinity());
    CHECK(eval_map(parse_map("(x^2+1)/x"), ProjPointQ(0)) == ProjPointQ::infinity());
    CHECK(eval_map(parse_map("1/x^2"), ProjPointQ::infinity()) == ProjPointQ(0));
    CHECK(eval_map(parse_map("(2x^2+1)/(x^2+3)"), ProjPointQ::infinity()) == ProjPointQ(2));
}

TEST_CASE("iterated evaluation matches evaluation of the iterate") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    for (const auto& f : sample_maps()) {
        for (int trial = 0; trial < 8; ++trial) {
            ProjPointQ pt = trial == 0 ? ProjPointQ::infinity() : ProjPointQ(Int(num(rng)), Int(den(rng)));
            for (int n = 1; n <= 4; ++n) {
                ProjPointQ x = pt;
                for (int i = 0; i < n; ++i) x = eval_map(f, x);
                if (n <= 3 || f.degree() == 2) CHECK(eval_map(iterate_map(f, n), pt) == x);
            }
        }
    }
}

TEST_CASE("points") {
    CHECK(parse_point("inf").is_infinity());
    CHECK(parse_point("-3/6") == ProjPointQ(Int(-1), Int(2)));
    CHECK(to_string(ProjPointQ(Int(4), Int(-6))) == "-2/3");
    CHECK(to_string(ProjPointQ::infinity()) == "inf");
    CHECK_THROWS(parse_point("1/0"));
    CHECK_THROWS(parse_point("abc"));
}

TEST_CASE("crit_poly examples") {
    auto c1 = crit_poly(parse_map("x^2+7/3"));
    REQUIRE(c1.factors.size() == 1);
    CHECK(c1.factors[0].first == ip({0, 1}));
    CHECK(c1.infinity_multiplicity == 1);

    auto c2 = crit_poly(parse_map("x^3-3x"));
    REQUIRE(c2.factors.size() == 2);
    CHECK(c2.factors[0].first == ip({-1, 1}));
    CHECK(c2.factors[1].first == ip({1, 1}));
    CHECK(c2.infinity_multiplicity == 2);

    auto c3 = crit_poly(parse_map("x^2/(x-1)"));
    REQUIRE(c3.factors.size() == 2);
    CHECK(c3.factors[0].first == ip({-2, 1}));
    CHECK(c3.factors[1].first == ip({0, 1}));
    CHECK_FALSE(c3.includes_infinity());

    // 1/x^2 is ramified at 0 and infinity.
    auto c4 = crit_poly(parse_map("1/x^2"));
    CHECK(c4.includes_infinity());
    CHECK(c4.total_multiplicity() == 2);
}

TEST_CASE("Riemann-Hurwitz count") {
    for (const auto& f : sample_maps()) {
        CHECK(crit_poly(f).total_multiplicity() == 2 * f.degree() - 2);
        CHECK(crit_poly(iterate_map(f, 2)).total_multiplicity() == 2 * f.degree() * f.degree() - 2);
    }
}

TEST_CASE("invert_chart") {
    // 1/f(1/x) for f = x^2 + 1 is x^2/(1 + x^2).
    auto g = invert_chart(parse_map("x^2+1"));
    CHECK(g == parse_map("x^2/(x^2+1)"));
    for (const auto& f : sample_maps()) CHECK(invert_chart(invert_chart(f)) == f);
}
