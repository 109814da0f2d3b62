#include <catch2/catch_amalgamated.hpp>

#include "qgx/qfield.hpp"

#include <cstdint>

using namespace qgx;

namespace {

// xorshift64: deterministic sampler for property tests
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

LaurentPoly random_poly(Rng& rng, int max_terms) {
    LaurentPoly p;
    int nt = rng.range(0, max_terms);
    for (int i = 0; i < nt; ++i) p.add_term(rng.range(-4, 4), Rat(rng.range(-6, 6)));
    return p;
}

RatFunc random_ratfunc(Rng& rng) {
    LaurentPoly den;
    do {
        den = random_poly(rng, 3);
    } while (den.is_zero());
    return RatFunc(random_poly(rng, 4), den);
}

} // namespace

TEST_CASE("arith identities") {
    RatFunc lam = RatFunc::lambda();
    CHECK(arith(lam, RatFunc(0), '+') == lam);                         // additive identity
    CHECK(arith(lam, RatFunc(1) / lam, '*') == RatFunc(1));            // multiplicative inverse
    RatFunc lhs = parse_ratfunc("(q^2 - 1)/q");
    CHECK(arith(lhs, lam, '-').is_zero());                             // q^2 - 1 = q(q - q^-1)
    CHECK_THROWS_AS(arith(RatFunc(1), RatFunc(0), '/'), division_by_zero);
}

TEST_CASE("eval_at") {
    CHECK(RatFunc::lambda().eval_at(Rat(1)) == 0);
    CHECK_THROWS_AS((RatFunc(1) / RatFunc::lambda()).eval_at(Rat(1)), pole_error);
    CHECK(RatFunc::q_power(2).eval_at(Rat(2)) == 4);
    CHECK(RatFunc::q_power(-2).eval_at(Rat(2)) == Rat(1, 4));
    CHECK_THROWS(RatFunc::q().eval_at(Rat(0)));
    // pole error carries the point
    try {
        (RatFunc(1) / RatFunc::lambda()).eval_at(Rat(1));
        FAIL("expected pole");
    } catch (const pole_error& e) {
        CHECK(e.at == "1");
    }
}

TEST_CASE("canonical form is unique: a - b = 0 iff equal", "[property]") {
    Rng rng(0x9e3779b97f4a7c15ull);
    for (int i = 0; i < 300; ++i) {
        RatFunc a = random_ratfunc(rng);
        RatFunc b = random_ratfunc(rng);
        CHECK(((a - b).is_zero()) == (a == b));
        // same value, different representative
        LaurentPoly scale = LaurentPoly::monomial(rng.range(-2, 2), Rat(rng.range(1, 5)));
        RatFunc a2(a.num() * scale, a.den() * scale);
        CHECK(a2 == a);
    }
}

TEST_CASE("field axioms on random samples", "[property]") {
    Rng rng(42);
    for (int i = 0; i < 120; ++i) {
        RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == RatFunc(0));
        if (!a.is_zero()) {
            CHECK(a * (RatFunc(1) / a) == RatFunc(1));
        }
    }
}

TEST_CASE("text syntax round-trip") {
    for (const char* src : {"q^2 - 1", "1/(q - q^-1)", "q - q^-1", "0", "1", "-q",
                            "3/2*q^3 + q^-2", "(q^4 - 2*q^2 + 1)/(q^3 + q)"}) {
        RatFunc v = parse_ratfunc(src);
        CHECK(parse_ratfunc(to_string(v)) == v);
    }
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        RatFunc v = random_ratfunc(rng);
        std::string s = to_string(v);
        CHECK(parse_ratfunc(s) == v);
        CHECK(to_string(parse_ratfunc(s)) == s);  // printing is canonical
    }
}

TEST_CASE("parse errors carry position") {
    CHECK_THROWS_AS(parse_ratfunc("q +"), parse_error);
    CHECK_THROWS_AS(parse_ratfunc("(q"), parse_error);
    CHECK_THROWS_AS(parse_ratfunc("q ^ x"), parse_error);
    CHECK_THROWS_AS(parse_ratfunc("1/(q - q)"), parse_error);
    try {
        parse_ratfunc("q + %");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.pos == 4);
    }
}
