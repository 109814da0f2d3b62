#include <catch2/catch_amalgamated.hpp>

#include "qgx/pairing.hpp"

using namespace qgx;

namespace {

const PairingEngine& engine(int n) {
    static std::map<int, PairingEngine> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, PairingEngine(RBundle::standard(n))).first;
    return it->second;
}

} // namespace

TEST_CASE("pairing tables satisfy the antipode axioms") {
    CHECK(engine(1).validate_tables());
    CHECK(engine(2).validate_tables());
}

TEST_CASE("unit pairs as counit") {
    const auto& e = engine(2);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            CHECK(e.pair_word({}, {{AKind::T, i, j}}) == RatFunc(i == j ? 1 : 0));
}

TEST_CASE("<T1, L2+> = R12 entrywise") {
    const auto& e = engine(2);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int l = 1; l <= 2; ++l) {
                    CHECK(e.pair_word({{DKind::LPlus, k, l}}, {{AKind::T, i, j}}) ==
                          e.bundle().R.get({i, k, j, l}));
                    CHECK(e.pair_word({{DKind::SLPlus, k, l}}, {{AKind::T, i, j}}) ==
                          e.bundle().Rinv.get({i, k, j, l}));
                    CHECK(e.pair_word({{DKind::LMinus, k, l}}, {{AKind::T, i, j}}) ==
                          e.bundle().Rinv.get({k, i, l, j}));
                    CHECK(e.pair_word({{DKind::SLMinus, k, l}}, {{AKind::T, i, j}}) ==
                          e.bundle().R.get({k, i, l, j}));
                }
}

TEST_CASE("l+ is upper triangular, l- lower") {
    const auto& e = engine(2);
    // a functional vanishes iff it pairs to zero against all short words
    for (int k = 1; k <= 2; ++k)
        for (int l = 1; l <= 2; ++l) {
            bool zero_plus = true, zero_minus = true;
            e.for_each_test_word(2, true, [&](const AWord& w) {
                if (!e.pair_word({{DKind::LPlus, k, l}}, w).is_zero()) zero_plus = false;
                if (!e.pair_word({{DKind::LMinus, k, l}}, w).is_zero()) zero_minus = false;
                return true;
            });
            if (k > l) CHECK(zero_plus);
            if (k < l) CHECK(zero_minus);
            if (k <= l) CHECK_FALSE(zero_plus);
            if (k >= l) CHECK_FALSE(zero_minus);
        }
}

TEST_CASE("chi normalization <chi_q^p, t_n^m> = d_n^p d_q^m") {
    for (int n = 1; n <= 2; ++n) {
        const auto& e = engine(n);
        for_each_didx(n, [&](DIdx a) {  // a = (q, p)
            DualElem chi = e.chi(a);
            for (int m = 1; m <= n; ++m)
                for (int nn = 1; nn <= n; ++nn) {
                    RatFunc got = e.pair(chi, AElem::word({{AKind::T, m, nn}}));
                    CHECK(got == RatFunc(m == a.a && nn == a.b ? 1 : 0));
                }
        });
    }
}

TEST_CASE("counit of f is delta (Eq. 28 normalizations)") {
    const auto& e = engine(2);
    for_each_didx(2, [&](DIdx a) {
        for_each_didx(2, [&](DIdx b) {
            RatFunc eps = e.pair(e.f(a, b), AElem::unit());
            CHECK(eps == RatFunc(a == b ? 1 : 0));
            RatFunc eps_r = e.counit(e.r_word(a, b));
            CHECK(eps_r == RatFunc(a == b ? 1 : 0));
        });
    });
}

TEST_CASE("left action examples") {
    const auto& e = engine(2);
    AElem t11 = AElem::word({{AKind::T, 1, 1}});
    CHECK(e.left_action(DualElem::unit(), t11) == t11);

    // chi_{(q,p)} |> t^m_n = t^m_q d_n^p
    for_each_didx(2, [&](DIdx a) {
        for (int m = 1; m <= 2; ++m)
            for (int nn = 1; nn <= 2; ++nn) {
                AElem got = e.left_action(e.chi(a), AElem::word({{AKind::T, m, nn}}));
                AElem want;
                if (nn == a.b) want.add({{AKind::T, m, a.a}}, RatFunc(1));
                CHECK(got == want);
            }
    });
}

TEST_CASE("module axiom (xy) |> a = x |> (y |> a)", "[property]") {
    const auto& e = engine(2);
    std::vector<DualElem> xs;
    for (DKind k : {DKind::LPlus, DKind::LMinus, DKind::SLPlus, DKind::SiLMinus})
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) xs.push_back(DualElem::word({{k, i, j}}));
    std::vector<AElem> as;
    as.push_back(AElem::word({{AKind::T, 1, 2}}));
    as.push_back(AElem::word({{AKind::T, 2, 1}, {AKind::T, 1, 1}}));
    as.push_back(AElem::word({{AKind::ST, 1, 1}, {AKind::T, 2, 2}}));
    for (std::size_t i = 0; i < xs.size(); i += 3)
        for (std::size_t j = 0; j < xs.size(); j += 2)
            for (const AElem& a : as) {
                AElem lhs = e.left_action(xs[i] * xs[j], a);
                AElem rhs = e.left_action(xs[i], e.left_action(xs[j], a));
                CHECK(lhs == rhs);
                AElem lhs2 = e.right_action(a, xs[i] * xs[j]);
                AElem rhs2 = e.right_action(e.right_action(a, xs[i]), xs[j]);
                CHECK(lhs2 == rhs2);
            }
}

TEST_CASE("covariance x |> (ab) = (x1 |> a)(x2 |> b)", "[property]") {
    const auto& e = engine(2);
    // check against the coproduct chain for single l± letters
    for (DKind k : {DKind::LPlus, DKind::LMinus}) {
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                AElem a = AElem::word({{AKind::T, 1, 2}});
                AElem b = AElem::word({{AKind::T, 2, 1}, {AKind::T, 1, 1}});
                AElem lhs = e.left_action(DualElem::word({{k, i, j}}), a * b);
                AElem rhs;
                for (int m = 1; m <= 2; ++m)
                    rhs += e.left_action(DualElem::word({{k, i, m}}), a) *
                           e.left_action(DualElem::word({{k, m, j}}), b);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("antipode on the function side") {
    const auto& e = engine(2);
    AElem w = AElem::word({{AKind::T, 1, 2}, {AKind::ST, 2, 2}});
    CHECK(e.antipode_inv(e.antipode(w)) == w);
    CHECK(e.antipode(e.antipode_inv(w)) == w);
    // S is an anti-homomorphism on words
    AElem u = AElem::word({{AKind::T, 2, 1}});
    AElem v = AElem::word({{AKind::T, 1, 1}});
    CHECK(e.antipode(u * v) == e.antipode(v) * e.antipode(u));
}

TEST_CASE("functional_eq returns witnesses") {
    const auto& e = engine(2);
    DualElem chi = e.chi({1, 2});
    CHECK(e.functional_eq(chi, chi, 3));
    auto w = e.functional_eq_witness(chi, DualElem(), 2);
    REQUIRE(w.has_value());
    CHECK(w->word.size() == 1);  // <chi, t> = dd is already nonzero
}

TEST_CASE("coproducts of composite functionals against two-leg test words") {
    const auto& e = engine(2);
    std::vector<AWord> words;
    e.for_each_test_word(2, false, [&](const AWord& w) {
        words.push_back(w);
        return true;
    });
    auto concat = [](const AWord& u, const AWord& v) {
        AWord w = u;
        w.insert(w.end(), v.begin(), v.end());
        return w;
    };
    for_each_didx(2, [&](DIdx a) {
        for_each_didx(2, [&](DIdx b) {
            for (const AWord& u : words)
                for (const AWord& v : words) {
                    if (u.size() + v.size() > 2) continue;
                    // (24): <f^a_b, uv> = sum_g <f^a_g, u><f^g_b, v>
                    RatFunc lhs = e.pair(e.f(a, b), AElem::word(concat(u, v)));
                    RatFunc rhs(0);
                    for_each_didx(2, [&](DIdx g) {
                        rhs += e.pair(e.f(a, g), AElem::word(u)) * e.pair(e.f(g, b), AElem::word(v));
                    });
                    CHECK(lhs == rhs);
                    // (81) for phi: <phi^a_b, uv> = sum_g <phi^g_b, u><phi^a_g, v>
                    RatFunc lhs_p = e.pair(e.phi(a, b), AElem::word(concat(u, v)));
                    RatFunc rhs_p(0);
                    for_each_didx(2, [&](DIdx g) {
                        rhs_p += e.pair(e.phi(g, b), AElem::word(u)) * e.pair(e.phi(a, g), AElem::word(v));
                    });
                    CHECK(lhs_p == rhs_p);
                }
        });
    });
    // (26): <chi_a, uv> = sum_b <chi_b, u><f^b_a, v> + eps(u)<chi_a, v>
    for_each_didx(2, [&](DIdx a) {
        for (const AWord& u : words)
            for (const AWord& v : words) {
                if (u.size() + v.size() > 2) continue;
                RatFunc lhs = e.pair(e.chi(a), AElem::word(concat(u, v)));
                RatFunc rhs = e.counit(u) * e.pair(e.chi(a), AElem::word(v));
                for_each_didx(2, [&](DIdx b) {
                    rhs += e.pair(e.chi(b), AElem::word(u)) * e.pair(e.f(b, a), AElem::word(v));
                });
                CHECK(lhs == rhs);
                // (81) for chi~: <chi~_a, uv> = <chi~_a, u> eps(v) + sum_b <phi^b_a, u><chi~_b, v>
                RatFunc lhs_t = e.pair(e.chi_tilde(a), AElem::word(concat(u, v)));
                RatFunc rhs_t = e.pair(e.chi_tilde(a), AElem::word(u)) * e.counit(v);
                for_each_didx(2, [&](DIdx b) {
                    rhs_t += e.pair(e.phi(b, a), AElem::word(u)) * e.pair(e.chi_tilde(b), AElem::word(v));
                });
                CHECK(lhs_t == rhs_t);
            }
    });
}

TEST_CASE("phi = S^-1(f) under pairing") {
    const auto& e = engine(2);
    for_each_didx(2, [&](DIdx a) {
        for_each_didx(2, [&](DIdx b) {
            e.for_each_test_word(2, true, [&](const AWord& w) {
                RatFunc lhs = e.pair(e.phi(a, b), AElem::word(w));
                RatFunc rhs = e.pair(e.f(a, b), e.antipode_inv(AElem::word(w)));
                CHECK(lhs == rhs);
                return true;
            });
        });
    });
}

TEST_CASE("chi~ = phi . chi (Eq. 80)") {
    const auto& e = engine(2);
    for_each_didx(2, [&](DIdx i) {
        DualElem rhs;
        for_each_didx(2, [&](DIdx j) { rhs += e.phi(j, i) * e.chi(j); });
        CHECK(e.functional_eq(e.chi_tilde(i), rhs, 3));
    });
}

TEST_CASE("Y = l+ S(l-) equals 1 - lambda X with X = -chi~ D") {
    const auto& e = engine(2);
    const RBundle& b = e.bundle();
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            DualElem word_side;
            for (int k = 1; k <= 2; ++k)
                word_side += DualElem::word({{DKind::LPlus, i, k}, {DKind::SLMinus, k, j}});
            DualElem fun_side(RatFunc(i == j ? 1 : 0));
            for (int k = 1; k <= 2; ++k)
                fun_side += e.chi_tilde({k, i}).scaled(b.lambda * b.D.get({k, j}));
            CHECK(e.functional_eq(word_side, fun_side, 2, true));
        }
}

TEST_CASE("chi refuses the classical point through its coefficients") {
    const auto& e = engine(2);
    DualElem chi = e.chi({1, 1});
    bool has_pole = false;
    for (const auto& [w, c] : chi.terms()) {
        try {
            (void)c.eval_at(Rat(1));
        } catch (const pole_error&) {
            has_pole = true;
        }
    }
    CHECK(has_pole);
}
