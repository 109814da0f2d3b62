// Bounded-degree machine verification of the Hopf-side identities: the
// bicovariance conditions and the functional commutation relations. Equality
// in the dual is tested by pairing against every t-letter word up to the
// configured degree; failures carry the first witness word.
#pragma once

#include <sstream>

#include "qgx/constants.hpp"
#include "qgx/report.hpp"

namespace qgx {

namespace detail {

// Memoized word-against-word pairings; verification sweeps revisit the same
// small set of words many times.
class PairCache {
public:
    explicit PairCache(const PairingEngine& e) : e_(e) {}

    const RatFunc& get(const DWord& x, const AWord& w) {
        auto key = std::make_pair(x, w);
        auto it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(std::move(key), e_.pair_word(x, w)).first;
        return it->second;
    }

    RatFunc get(const DualElem& x, const AWord& w) {
        RatFunc acc(0);
        for (const auto& [xw, xc] : x.terms()) {
            const RatFunc& p = get(xw, w);
            if (!p.is_zero()) acc += xc * p;
        }
        return acc;
    }

    const PairingEngine& engine() const { return e_; }

private:
    const PairingEngine& e_;
    std::map<std::pair<DWord, AWord>, RatFunc> memo_;
};

// test functionals: plain l± words of length <= 2 plus single antipode letters
inline std::vector<DWord> dual_test_words(int n) {
    std::vector<DWord> out;
    out.push_back({});
    std::vector<DualLetter> letters;
    for (DKind k : {DKind::LPlus, DKind::LMinus})
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) letters.push_back({k, i, j});
    for (const auto& l : letters) out.push_back({l});
    for (DKind k : {DKind::SLPlus, DKind::SLMinus})
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) out.push_back({{k, i, j}});
    for (const auto& l1 : letters)
        for (const auto& l2 : letters) out.push_back({l1, l2});
    return out;
}

} // namespace detail

class VerifySuite {
public:
    VerifySuite(const PairingEngine& e, const StructureConstants& sc, int degree)
        : e_(e), sc_(sc), n_(e.n()), degree_(degree), cache_(e) {
        e_.for_each_test_word(degree_, false, [&](const AWord& w) {
            words_.push_back(w);
            return true;
        });
    }

    // ---- Woronowicz bicovariance conditions (23)-(28) -------------------------

    Report woronowicz() {
        Report rep;
        rep.add(check_23());
        rep.add(check_24());
        rep.add(check_25());
        rep.add(check_26());
        rep.add(check_27());
        rep.add(check_28());
        return rep;
    }

    // ---- functional commutation relations --------------------------------------

    Report functional_relations() {
        Report rep;
        rep.add(check_49());
        rep.add(check_51());
        rep.add(check_52());
        rep.add(check_53());
        rep.add(check_54());
        rep.add(check_55());
        rep.add(check_90());
        return rep;
    }

    // Delta(r^a_b) = sum_g r^g_b (x) r^a_g, exact on free words.
    CheckResult check_23() {
        bool ok = true;
        std::string wit;
        for_each_didx(n_, [&](DIdx a) {
            for_each_didx(n_, [&](DIdx b) {
                if (!ok) return;
                std::map<std::pair<AWord, AWord>, RatFunc> lhs, rhs;
                const AWord rw = e_.r_word(a, b).terms().begin()->first;
                for (const auto& [l, r] : coproduct_splits(rw, n_)) add_two_leg(lhs, l, r, RatFunc(1));
                for_each_didx(n_, [&](DIdx g) {
                    add_two_leg(rhs, e_.r_word(g, b).terms().begin()->first,
                                e_.r_word(a, g).terms().begin()->first, RatFunc(1));
                });
                if (lhs != rhs) {
                    ok = false;
                    wit = "r" + detail::didx_str(a) + detail::didx_str(b);
                }
            });
        });
        return ok ? CheckResult::ok("(23)") : CheckResult::fail("(23)", wit);
    }

    // Delta(f^a_b) = sum_g f^a_g (x) f^g_b, exact on free dual words.
    CheckResult check_24() {
        bool ok = true;
        std::string wit;
        for_each_didx(n_, [&](DIdx a) {
            for_each_didx(n_, [&](DIdx b) {
                if (!ok) return;
                std::map<std::pair<DWord, DWord>, RatFunc> lhs, rhs;
                const DWord fw = e_.f(a, b).terms().begin()->first;
                for (const auto& [l, r] : coproduct_splits(fw, n_)) add_two_leg(lhs, l, r, RatFunc(1));
                for_each_didx(n_, [&](DIdx g) {
                    add_two_leg(rhs, e_.f(a, g).terms().begin()->first, e_.f(g, b).terms().begin()->first,
                                RatFunc(1));
                });
                if (lhs != rhs) {
                    ok = false;
                    wit = "f" + detail::didx_str(a) + detail::didx_str(b);
                }
            });
        });
        return ok ? CheckResult::ok("(24)") : CheckResult::fail("(24)", wit);
    }

    // (f_i^j |> a) r_k^i = r_i^j (a <| f_k^i), in the dual form
    // sum_i y_(1) f^j_i <y_(2), r^i_k> = sum_i <y_(1), r^j_i> f^i_k y_(2).
    CheckResult check_25() {
        for (const DualLetter& y : relation_letters()) {
            DWord yw{y};
            auto splits = coproduct_splits(yw, n_);
            bool bad = false;
            DIdx bj{0, 0}, bk{0, 0};
            AWord bw;
            for_each_didx(n_, [&](DIdx j) {
                for_each_didx(n_, [&](DIdx k) {
                    if (bad) return;
                    DualElem lhs, rhs;
                    for_each_didx(n_, [&](DIdx i) {
                        for (const auto& [yl, yr] : splits) {
                            RatFunc cl = e_.pair(DualElem::word(yr), e_.r_word(i, k));
                            if (!cl.is_zero()) lhs += (DualElem::word(yl) * e_.f(j, i)).scaled(cl);
                            RatFunc cr = e_.pair(DualElem::word(yl), e_.r_word(j, i));
                            if (!cr.is_zero()) rhs += (e_.f(i, k) * DualElem::word(yr)).scaled(cr);
                        }
                    });
                    if (auto w = eq_witness(lhs, rhs)) {
                        bad = true;
                        bj = j;
                        bk = k;
                        bw = *w;
                    }
                });
            });
            if (bad)
                return CheckResult::fail("(25)",
                                         "y=" + to_string(y) + " j=" + detail::didx_str(bj) + " k=" +
                                             detail::didx_str(bk) + " word=" + to_string(bw),
                                         degree_);
        }
        return CheckResult::ok("(25)", degree_);
    }

    // Delta(chi_a) = chi_b (x) f^b_a + 1 (x) chi_a, exact on free dual words.
    CheckResult check_26() {
        bool ok = true;
        std::string wit;
        for_each_didx(n_, [&](DIdx a) {
            if (!ok) return;
            std::map<std::pair<DWord, DWord>, RatFunc> lhs, rhs;
            const DualElem chi_a = e_.chi(a);
            for (const auto& [w, c] : chi_a.terms())
                for (const auto& [l, r] : coproduct_splits(w, n_)) add_two_leg(lhs, l, r, c);
            for_each_didx(n_, [&](DIdx b) {
                const DWord fw = e_.f(b, a).terms().begin()->first;
                const DualElem chi_b = e_.chi(b);
                for (const auto& [w, c] : chi_b.terms()) add_two_leg(rhs, w, fw, c);
            });
            for (const auto& [w, c] : chi_a.terms()) add_two_leg(rhs, DWord{}, w, c);
            if (lhs != rhs) {
                ok = false;
                wit = "chi" + detail::didx_str(a);
            }
        });
        return ok ? CheckResult::ok("(26)") : CheckResult::fail("(26)", wit);
    }

    // a <| chi_i = (chi_j |> a) r_i^j, dually chi_i y = sum_j y_(1) chi_j <y_(2), r^j_i>.
    CheckResult check_27() {
        for (const DualLetter& y : relation_letters(false)) {
            for (int p = 0; p < n_ * n_; ++p) {
                DIdx a = unflatten(p, n_);
                DualElem lhs = e_.chi(a) * DualElem::word({y});
                DualElem rhs;
                for (const auto& [yl, yr] : coproduct_splits(DWord{y}, n_)) {
                    for_each_didx(n_, [&](DIdx b) {
                        RatFunc c = e_.pair(DualElem::word(yr), e_.r_word(b, a));
                        if (!c.is_zero()) rhs += (DualElem::word(yl) * e_.chi(b)).scaled(c);
                    });
                }
                if (auto w = eq_witness(lhs, rhs))
                    return CheckResult::fail(
                        "(27)", "y=" + to_string(y) + " i=" + detail::didx_str(a) + " word=" + to_string(*w),
                        degree_);
            }
        }
        return CheckResult::ok("(27)", degree_);
    }

    // counit and antipode normalizations.
    CheckResult check_28() {
        // eps(f) = delta, eps(r) = delta
        bool ok = true;
        std::string wit;
        for_each_didx(n_, [&](DIdx a) {
            for_each_didx(n_, [&](DIdx b) {
                RatFunc want(a == b ? 1 : 0);
                if (e_.pair(e_.f(a, b), AElem::unit()) != want) {
                    ok = false;
                    wit = "eps(f)" + detail::didx_str(a) + detail::didx_str(b);
                }
                if (e_.counit(e_.r_word(a, b)) != want) {
                    ok = false;
                    wit = "eps(r)" + detail::didx_str(a) + detail::didx_str(b);
                }
            });
        });
        if (!ok) return CheckResult::fail("(28)", wit);
        // S(f^g_b) f^b_a = delta^g_a eps : <., w> tested on all bounded words
        for_each_didx(n_, [&](DIdx g) {
            for_each_didx(n_, [&](DIdx a) {
                if (!ok) return;
                for (const AWord& w : words_) {
                    RatFunc acc(0);
                    for (const auto& [l, r] : coproduct_splits(w, n_)) {
                        AElem sl = e_.antipode(AElem::word(l));
                        for_each_didx(n_, [&](DIdx b) {
                            RatFunc left = e_.pair(e_.f(g, b), sl);
                            if (!left.is_zero()) left *= cache_.get(e_.f(b, a), r);
                            acc += left;
                        });
                    }
                    RatFunc want = g == a ? e_.counit(w) : RatFunc(0);
                    if (acc != want) {
                        ok = false;
                        wit = "S(f)f" + detail::didx_str(g) + detail::didx_str(a) + " word=" + to_string(w);
                        break;
                    }
                }
            });
        });
        if (!ok) return CheckResult::fail("(28)", wit, degree_);
        // S(r^k_a) r^b_k = delta^b_a, tested against dual words
        auto duals = detail::dual_test_words(n_);
        for_each_didx(n_, [&](DIdx a) {
            for_each_didx(n_, [&](DIdx b) {
                if (!ok) return;
                AElem lhs;
                for_each_didx(n_, [&](DIdx k) { lhs += e_.antipode(e_.r_word(k, a)) * e_.r_word(b, k); });
                if (a == b) lhs -= AElem::unit();
                for (const DWord& y : duals) {
                    RatFunc v(0);
                    for (const auto& [w, c] : lhs.terms()) v += c * e_.pair_word(y, w);
                    if (!v.is_zero()) {
                        ok = false;
                        wit = "S(r)r" + detail::didx_str(a) + detail::didx_str(b) + " dual=" + to_string(y);
                        break;
                    }
                }
            });
        });
        return ok ? CheckResult::ok("(28)", degree_) : CheckResult::fail("(28)", wit, degree_);
    }

    // chi_i h = (r_i^j |> h) chi_j
    CheckResult check_49() {
        for (const DualLetter& h : relation_letters()) {
            for (int p = 0; p < n_ * n_; ++p) {
                DIdx i = unflatten(p, n_);
                DualElem lhs = e_.chi(i) * DualElem::word({h});
                DualElem rhs;
                for_each_didx(n_, [&](DIdx j) {
                    rhs += e_.coregular_left(e_.r_word(j, i), DualElem::word({h})) * e_.chi(j);
                });
                if (auto w = eq_witness(lhs, rhs))
                    return CheckResult::fail(
                        "(49)", "h=" + to_string(h) + " i=" + detail::didx_str(i) + " word=" + to_string(*w),
                        degree_);
            }
        }
        return CheckResult::ok("(49)", degree_);
    }

    // f_i^j h = (r_i^k |> h <| S^-1(r_m^j)) f_k^m
    CheckResult check_51() {
        for (const DualLetter& h : relation_letters(false)) {
            bool bad = false;
            DIdx bi{0, 0}, bj{0, 0};
            AWord bw;
            for_each_didx(n_, [&](DIdx j) {
                for_each_didx(n_, [&](DIdx i) {
                    if (bad) return;
                    DualElem lhs = e_.f(j, i) * DualElem::word({h});
                    DualElem rhs;
                    for_each_didx(n_, [&](DIdx m) {
                        AElem sinv_r = e_.antipode_inv(e_.r_word(j, m));
                        DualElem h23 = e_.coregular_right(DualElem::word({h}), sinv_r);
                        for_each_didx(n_, [&](DIdx k) {
                            DualElem h2 = e_.coregular_left(e_.r_word(k, i), h23);
                            rhs += h2 * e_.f(m, k);
                        });
                    });
                    if (auto w = eq_witness(lhs, rhs)) {
                        bad = true;
                        bi = i;
                        bj = j;
                        bw = *w;
                    }
                });
            });
            if (bad)
                return CheckResult::fail("(51)",
                                         "h=" + to_string(h) + " j=" + detail::didx_str(bj) + " i=" +
                                             detail::didx_str(bi) + " word=" + to_string(bw),
                                         degree_);
        }
        return CheckResult::ok("(51)", degree_);
    }

    // chi_i chi_j - sigma_{ij}^{lk} chi_l chi_k = C_{ij}^k chi_k
    CheckResult check_52() {
        const int m = n_ * n_;
        for (int pi = 0; pi < m; ++pi)
            for (int pj = 0; pj < m; ++pj) {
                DIdx i = unflatten(pi, n_), j = unflatten(pj, n_);
                for (const AWord& w : words_) {
                    RatFunc acc(0);
                    for (const auto& [w1, w2] : coproduct_splits(w, n_)) {
                        acc += chi_val(i, w1) * chi_val(j, w2);
                        for_each_didx(n_, [&](DIdx l) {
                            for_each_didx(n_, [&](DIdx k) {
                                const RatFunc s = sc_.sigma_at(i, j, l, k);
                                if (!s.is_zero()) acc -= s * chi_val(l, w1) * chi_val(k, w2);
                            });
                        });
                    }
                    for_each_didx(n_, [&](DIdx k) {
                        const RatFunc c = sc_.c_at(i, j, k);
                        if (!c.is_zero()) acc -= c * chi_val(k, w);
                    });
                    if (!acc.is_zero())
                        return CheckResult::fail("(52)",
                                                 "i=" + detail::didx_str(i) + " j=" + detail::didx_str(j) +
                                                     " word=" + to_string(w),
                                                 degree_);
                }
            }
        return CheckResult::ok("(52)", degree_);
    }

    // sigma_{ij}^{mn} f_k^i f_l^j = sigma_{kl}^{ij} f_i^m f_j^n
    CheckResult check_53() {
        const int mdim = n_ * n_;
        for (int pm = 0; pm < mdim; ++pm)
            for (int pn = 0; pn < mdim; ++pn)
                for (int pk = 0; pk < mdim; ++pk)
                    for (int pl = 0; pl < mdim; ++pl) {
                        DIdx m = unflatten(pm, n_), nn = unflatten(pn, n_);
                        DIdx k = unflatten(pk, n_), l = unflatten(pl, n_);
                        for (const AWord& w : words_) {
                            RatFunc acc(0);
                            for (const auto& [w1, w2] : coproduct_splits(w, n_)) {
                                for_each_didx(n_, [&](DIdx i) {
                                    for_each_didx(n_, [&](DIdx j) {
                                        const RatFunc s1 = sc_.sigma_at(i, j, m, nn);
                                        if (!s1.is_zero())
                                            acc += s1 * f_val(i, k, w1) * f_val(j, l, w2);
                                        const RatFunc s2 = sc_.sigma_at(k, l, i, j);
                                        if (!s2.is_zero())
                                            acc -= s2 * f_val(m, i, w1) * f_val(nn, j, w2);
                                    });
                                });
                            }
                            if (!acc.is_zero())
                                return CheckResult::fail("(53)",
                                                         "m=" + detail::didx_str(m) + " n=" + detail::didx_str(nn) +
                                                             " k=" + detail::didx_str(k) + " l=" +
                                                             detail::didx_str(l) + " word=" + to_string(w),
                                                         degree_);
                        }
                    }
        return CheckResult::ok("(53)", degree_);
    }

    // chi_k f_l^n = sigma_{kl}^{ij} f_i^n chi_j
    CheckResult check_54() {
        const int mdim = n_ * n_;
        for (int pk = 0; pk < mdim; ++pk)
            for (int pl = 0; pl < mdim; ++pl)
                for (int pn = 0; pn < mdim; ++pn) {
                    DIdx k = unflatten(pk, n_), l = unflatten(pl, n_), nn = unflatten(pn, n_);
                    for (const AWord& w : words_) {
                        RatFunc acc(0);
                        for (const auto& [w1, w2] : coproduct_splits(w, n_)) {
                            acc += chi_val(k, w1) * f_val(nn, l, w2);
                            for_each_didx(n_, [&](DIdx i) {
                                for_each_didx(n_, [&](DIdx j) {
                                    const RatFunc s = sc_.sigma_at(k, l, i, j);
                                    if (!s.is_zero()) acc -= s * f_val(nn, i, w1) * chi_val(j, w2);
                                });
                            });
                        }
                        if (!acc.is_zero())
                            return CheckResult::fail("(54)",
                                                     "k=" + detail::didx_str(k) + " l=" + detail::didx_str(l) +
                                                         " n=" + detail::didx_str(nn) + " word=" + to_string(w),
                                                     degree_);
                    }
                }
        return CheckResult::ok("(54)", degree_);
    }

    // C_{mn}^i f_j^m f_k^n + f_j^i chi_k = sigma_{jk}^{mn} chi_m f_n^i + C_{jk}^m f_m^i
    CheckResult check_55() {
        const int mdim = n_ * n_;
        for (int pj = 0; pj < mdim; ++pj)
            for (int pk = 0; pk < mdim; ++pk)
                for (int pi = 0; pi < mdim; ++pi) {
                    DIdx j = unflatten(pj, n_), k = unflatten(pk, n_), i = unflatten(pi, n_);
                    for (const AWord& w : words_) {
                        RatFunc acc(0);
                        for (const auto& [w1, w2] : coproduct_splits(w, n_)) {
                            for_each_didx(n_, [&](DIdx m) {
                                for_each_didx(n_, [&](DIdx nn) {
                                    const RatFunc c = sc_.c_at(m, nn, i);
                                    if (!c.is_zero()) acc += c * f_val(m, j, w1) * f_val(nn, k, w2);
                                    const RatFunc s = sc_.sigma_at(j, k, m, nn);
                                    if (!s.is_zero()) acc -= s * chi_val(m, w1) * f_val(i, nn, w2);
                                });
                            });
                            acc += f_val(i, j, w1) * chi_val(k, w2);
                        }
                        for_each_didx(n_, [&](DIdx m) {
                            const RatFunc c = sc_.c_at(j, k, m);
                            if (!c.is_zero()) acc -= c * f_val(i, m, w);
                        });
                        if (!acc.is_zero())
                            return CheckResult::fail("(55)",
                                                     "j=" + detail::didx_str(j) + " k=" + detail::didx_str(k) +
                                                         " i=" + detail::didx_str(i) + " word=" + to_string(w),
                                                     degree_);
                    }
                }
        return CheckResult::ok("(55)", degree_);
    }

    // chi~_i h = (h <| r_i^j) chi~_j
    CheckResult check_90() {
        for (const DualLetter& h : relation_letters()) {
            for (int p = 0; p < n_ * n_; ++p) {
                DIdx i = unflatten(p, n_);
                DualElem lhs = e_.chi_tilde(i) * DualElem::word({h});
                DualElem rhs;
                for_each_didx(n_, [&](DIdx j) {
                    rhs += e_.coregular_right(DualElem::word({h}), e_.r_word(j, i)) * e_.chi_tilde(j);
                });
                if (auto w = eq_witness(lhs, rhs))
                    return CheckResult::fail(
                        "(90)", "h=" + to_string(h) + " i=" + detail::didx_str(i) + " word=" + to_string(*w),
                        degree_);
            }
        }
        return CheckResult::ok("(90)", degree_);
    }

private:
    template <class W>
    static void add_two_leg(std::map<std::pair<W, W>, RatFunc>& m, const W& l, const W& r, const RatFunc& c) {
        auto key = std::make_pair(l, r);
        auto it = m.find(key);
        if (it == m.end()) {
            if (!c.is_zero()) m.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) m.erase(it);
        }
    }

    std::vector<DualLetter> relation_letters(bool with_anti = true) const {
        std::vector<DualLetter> out;
        for (DKind k : {DKind::LPlus, DKind::LMinus})
            for (int i = 1; i <= n_; ++i)
                for (int j = 1; j <= n_; ++j) out.push_back({k, i, j});
        if (with_anti)
            for (DKind k : {DKind::SLPlus, DKind::SLMinus})
                for (int i = 1; i <= n_; ++i)
                    for (int j = 1; j <= n_; ++j) out.push_back({k, i, j});
        return out;
    }

    std::optional<AWord> eq_witness(const DualElem& x, const DualElem& y) {
        DualElem d = x - y;
        if (d.is_zero()) return std::nullopt;
        for (const AWord& w : words_) {
            RatFunc v = cache_.get(d, w);
            if (!v.is_zero()) return w;
        }
        return std::nullopt;
    }

    RatFunc chi_val(DIdx a, const AWord& w) {
        int p = flatten(a, n_);
        if (chi_.empty()) {
            chi_.resize(static_cast<std::size_t>(n_) * n_);
            for_each_didx(n_, [&](DIdx d) { chi_[static_cast<std::size_t>(flatten(d, n_))] = e_.chi(d); });
        }
        return cache_.get(chi_[static_cast<std::size_t>(p)], w);
    }

    RatFunc f_val(DIdx a, DIdx b, const AWord& w) { return cache_.get(e_.f(a, b), w); }

    const PairingEngine& e_;
    const StructureConstants& sc_;
    int n_;
    int degree_;
    detail::PairCache cache_;
    std::vector<AWord> words_;
    std::vector<DualElem> chi_;
};

inline Report verify_woronowicz(const PairingEngine& e, const StructureConstants& sc, int degree) {
    return VerifySuite(e, sc, degree).woronowicz();
}

inline Report verify_functional_relations(const PairingEngine& e, const StructureConstants& sc, int degree) {
    return VerifySuite(e, sc, degree).functional_relations();
}

} // namespace qgx
