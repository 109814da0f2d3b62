// The Hopf duality engine. Function-side words are built from t and S(t)
// letters, dual-side words from l+/l- letters and their antipode images.
// Single-letter pairings come from tables derived from the R-matrix; word
// pairings follow from the duality axioms (product against coproduct).
//
// Chain conventions baked in here and validated at construction:
//   Delta(t^i_j)    = t^i_m (x) t^m_j
//   Delta(S(t^i_j)) = S(t^m_j) (x) S(t^i_m)
//   plain kinds (l+, l-) pair against words by forward matrix chains,
//   antipode kinds (S(l±), S^-1(l±)) by reversed chains,
//   S^2(t) = D t D^-1 with D the trace of the second inverse.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgx/rmatrix.hpp"

namespace qgx {

// ---- letters and words -------------------------------------------------------

enum class DKind : std::uint8_t { LPlus, LMinus, SLPlus, SLMinus, SiLPlus, SiLMinus };
enum class AKind : std::uint8_t { T, ST };

inline bool is_anti(DKind k) { return k != DKind::LPlus && k != DKind::LMinus; }

inline const char* to_string(DKind k) {
    switch (k) {
        case DKind::LPlus: return "l+";
        case DKind::LMinus: return "l-";
        case DKind::SLPlus: return "S(l+)";
        case DKind::SLMinus: return "S(l-)";
        case DKind::SiLPlus: return "S^-1(l+)";
        case DKind::SiLMinus: return "S^-1(l-)";
    }
    return "?";
}

struct DualLetter {
    DKind kind;
    int row, col;
    auto operator<=>(const DualLetter&) const = default;
};

struct ALetter {
    AKind kind;
    int row, col;
    auto operator<=>(const ALetter&) const = default;
};

using DWord = std::vector<DualLetter>;
using AWord = std::vector<ALetter>;

inline std::string to_string(const ALetter& l) {
    std::string s = l.kind == AKind::T ? "t" : "S(t)";
    return s + "[" + std::to_string(l.row) + "," + std::to_string(l.col) + "]";
}
inline std::string to_string(const AWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += to_string(w[i]);
    }
    return s;
}
inline std::string to_string(const DualLetter& l) {
    return std::string(to_string(l.kind)) + "[" + std::to_string(l.row) + "," + std::to_string(l.col) + "]";
}
inline std::string to_string(const DWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += to_string(w[i]);
    }
    return s;
}

// Finite linear combination of words with exact coefficients.
template <class Word>
class LinComb {
public:
    LinComb() = default;
    explicit LinComb(const RatFunc& c) {
        if (!c.is_zero()) t_[Word{}] = c;
    }
    static LinComb unit() { return LinComb(RatFunc(1)); }
    static LinComb word(Word w, RatFunc c = RatFunc(1)) {
        LinComb e;
        if (!c.is_zero()) e.t_[std::move(w)] = std::move(c);
        return e;
    }

    const std::map<Word, RatFunc>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add(const Word& w, const RatFunc& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    LinComb& operator+=(const LinComb& o) {
        for (const auto& [w, c] : o.t_) add(w, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        for (const auto& [w, c] : o.t_) add(w, -c);
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    LinComb operator-() const {
        LinComb r;
        for (const auto& [w, c] : t_) r.t_[w] = -c;
        return r;
    }
    LinComb scaled(const RatFunc& s) const {
        LinComb r;
        if (s.is_zero()) return r;
        for (const auto& [w, c] : t_) r.t_[w] = c * s;
        return r;
    }
    // free product: concatenate words bilinearly
    friend LinComb operator*(const LinComb& a, const LinComb& b) {
        LinComb r;
        for (const auto& [wa, ca] : a.t_)
            for (const auto& [wb, cb] : b.t_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add(w, ca * cb);
            }
        return r;
    }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.t_ == b.t_; }

private:
    std::map<Word, RatFunc> t_;
};

using AElem = LinComb<AWord>;
using DualElem = LinComb<DWord>;

inline std::string to_string(const AElem& e) {
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : e.terms()) {
        s += first ? "" : " + ";
        s += "(" + to_string(c) + ")*" + to_string(w);
        first = false;
    }
    return s;
}

// Doubled index: the calculus index of the single-index formulas is an
// ordered pair of matrix indices.
struct DIdx {
    int a, b;
    auto operator<=>(const DIdx&) const = default;
};

namespace detail {
inline std::string didx_str(DIdx d) {
    return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")";
}
} // namespace detail

inline int flatten(DIdx d, int n) { return (d.a - 1) * n + (d.b - 1); }
inline DIdx unflatten(int p, int n) { return {p / n + 1, p % n + 1}; }

template <class Fn>
void for_each_didx(int n, Fn&& fn) {
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) fn(DIdx{a, b});
}

// ---- coproduct splits ---------------------------------------------------------

// All (left, right) words of the letterwise coproduct of w; coefficients are 1.
inline std::vector<std::pair<AWord, AWord>> coproduct_splits(const AWord& w, int n) {
    std::vector<std::pair<AWord, AWord>> out;
    std::size_t count = 1;
    for (std::size_t i = 0; i < w.size(); ++i) count *= static_cast<std::size_t>(n);
    out.reserve(count);
    std::vector<int> m(w.size(), 1);
    for (;;) {
        AWord left, right;
        left.reserve(w.size());
        right.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            const ALetter& l = w[i];
            if (l.kind == AKind::T) {
                left.push_back({AKind::T, l.row, m[i]});
                right.push_back({AKind::T, m[i], l.col});
            } else {
                left.push_back({AKind::ST, m[i], l.col});
                right.push_back({AKind::ST, l.row, m[i]});
            }
        }
        out.emplace_back(std::move(left), std::move(right));
        std::size_t i = 0;
        while (i < m.size() && m[i] == n) m[i++] = 1;
        if (i == m.size()) break;
        ++m[i];
    }
    return out;
}

inline std::vector<std::pair<DWord, DWord>> coproduct_splits(const DWord& w, int n) {
    std::vector<std::pair<DWord, DWord>> out;
    std::vector<int> m(w.size(), 1);
    for (;;) {
        DWord left, right;
        left.reserve(w.size());
        right.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            const DualLetter& l = w[i];
            if (!is_anti(l.kind)) {
                left.push_back({l.kind, l.row, m[i]});
                right.push_back({l.kind, m[i], l.col});
            } else {
                left.push_back({l.kind, m[i], l.col});
                right.push_back({l.kind, l.row, m[i]});
            }
        }
        out.emplace_back(std::move(left), std::move(right));
        std::size_t i = 0;
        while (i < m.size() && m[i] == n) m[i++] = 1;
        if (i == m.size()) break;
        ++m[i];
    }
    return out;
}

// ---- the engine ---------------------------------------------------------------

class PairingEngine {
public:
    explicit PairingEngine(RBundle bundle) : b_(std::move(bundle)), n_(b_.n) {
        build_tables();
    }

    const RBundle& bundle() const { return b_; }
    int n() const { return n_; }

    // <kind^{dr}_{dc}, akind^{ar}_{ac}>
    const RatFunc& table(DKind k, AKind a, int dr, int dc, int ar, int ac) const {
        return tab_[static_cast<int>(k)][static_cast<int>(a)][ofs(dr, dc, ar, ac)];
    }

    RatFunc counit(const AWord& w) const {
        for (const ALetter& l : w)
            if (l.row != l.col) return RatFunc(0);
        return RatFunc(1);
    }
    RatFunc counit(const AElem& e) const {
        RatFunc acc(0);
        for (const auto& [w, c] : e.terms())
            if (counit(w).is_one()) acc += c;
        return acc;
    }
    RatFunc counit_dual(const DWord& w) const {
        for (const DualLetter& l : w)
            if (l.row != l.col) return RatFunc(0);
        return RatFunc(1);
    }

    // single dual letter against an A-word: an n x n matrix chain, reversed
    // for antipode kinds
    RatFunc pair_letter(const DualLetter& x, const AWord& w) const {
        if (w.empty()) return RatFunc(x.row == x.col ? 1 : 0);
        std::vector<RatFunc> v(static_cast<std::size_t>(n_), RatFunc(0));
        v[static_cast<std::size_t>(x.row - 1)] = RatFunc(1);
        auto step = [&](const ALetter& a) {
            std::vector<RatFunc> nv(static_cast<std::size_t>(n_), RatFunc(0));
            for (int i = 1; i <= n_; ++i) {
                if (v[static_cast<std::size_t>(i - 1)].is_zero()) continue;
                for (int j = 1; j <= n_; ++j) {
                    const RatFunc& t = table(x.kind, a.kind, i, j, a.row, a.col);
                    if (!t.is_zero()) nv[static_cast<std::size_t>(j - 1)] += v[static_cast<std::size_t>(i - 1)] * t;
                }
            }
            v = std::move(nv);
        };
        if (!is_anti(x.kind))
            for (auto it = w.begin(); it != w.end(); ++it) step(*it);
        else
            for (auto it = w.rbegin(); it != w.rend(); ++it) step(*it);
        return v[static_cast<std::size_t>(x.col - 1)];
    }

    RatFunc pair_word(const DWord& x, const AWord& w) const {
        if (x.empty()) return counit(w);
        if (x.size() == 1) return pair_letter(x[0], w);
        DWord rest(x.begin() + 1, x.end());
        RatFunc acc(0);
        for (const auto& [left, right] : coproduct_splits(w, n_)) {
            RatFunc head = pair_letter(x[0], left);
            if (head.is_zero()) continue;
            acc += head * pair_word(rest, right);
        }
        return acc;
    }

    RatFunc pair(const DualElem& x, const AElem& a) const {
        RatFunc acc(0);
        for (const auto& [xw, xc] : x.terms())
            for (const auto& [aw, ac] : a.terms()) {
                RatFunc p = pair_word(xw, aw);
                if (!p.is_zero()) acc += xc * ac * p;
            }
        return acc;
    }

    // ---- actions (Eq. x |> a = a_(1) <x, a_(2)>, a <| x = a_(2) <x, a_(1)>) ----

    AElem left_action(const DualElem& x, const AElem& a) const {
        AElem out;
        for (const auto& [aw, ac] : a.terms())
            for (const auto& [l, r] : coproduct_splits(aw, n_)) {
                for (const auto& [xw, xc] : x.terms()) {
                    RatFunc p = pair_word(xw, r);
                    if (!p.is_zero()) out.add(l, ac * xc * p);
                }
            }
        return out;
    }

    AElem right_action(const AElem& a, const DualElem& x) const {
        AElem out;
        for (const auto& [aw, ac] : a.terms())
            for (const auto& [l, r] : coproduct_splits(aw, n_)) {
                for (const auto& [xw, xc] : x.terms()) {
                    RatFunc p = pair_word(xw, l);
                    if (!p.is_zero()) out.add(r, ac * xc * p);
                }
            }
        return out;
    }

    // r |> h = h_(1) <h_(2), r>  (the coregular action of A on A*)
    DualElem coregular_left(const AElem& r, const DualElem& h) const {
        DualElem out;
        for (const auto& [hw, hc] : h.terms())
            for (const auto& [l, rr] : coproduct_splits(hw, n_)) {
                for (const auto& [rw, rc] : r.terms()) {
                    RatFunc p = pair_word(rr, rw);
                    if (!p.is_zero()) out.add(l, hc * rc * p);
                }
            }
        return out;
    }

    // h <| r = <h_(1), r> h_(2)
    DualElem coregular_right(const DualElem& h, const AElem& r) const {
        DualElem out;
        for (const auto& [hw, hc] : h.terms())
            for (const auto& [l, rr] : coproduct_splits(hw, n_)) {
                for (const auto& [rw, rc] : r.terms()) {
                    RatFunc p = pair_word(l, rw);
                    if (!p.is_zero()) out.add(rr, hc * rc * p);
                }
            }
        return out;
    }

    // ---- antipode on the function side -----------------------------------------

    // S(t) letters are primitive; S^2 folds back to t by D-conjugation.
    AElem antipode(const AElem& e) const {
        AElem out;
        for (const auto& [w, c] : e.terms()) {
            AElem acc(RatFunc(1));
            for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * antipode_letter(*it);
            out += acc.scaled(c);
        }
        return out;
    }

    AElem antipode_inv(const AElem& e) const {
        AElem out;
        for (const auto& [w, c] : e.terms()) {
            AElem acc(RatFunc(1));
            for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * antipode_inv_letter(*it);
            out += acc.scaled(c);
        }
        return out;
    }

    // ---- the functionals of the calculus ---------------------------------------

    AElem r_word(DIdx alpha, DIdx beta) const {  // r^alpha_beta = S(t^{a1}_{b1}) t^{b2}_{a2}
        return AElem::word({{AKind::ST, alpha.a, beta.a}, {AKind::T, beta.b, alpha.b}});
    }

    DualElem f(DIdx alpha, DIdx beta) const {  // l-^{a1}_{b1} S(l+^{b2}_{a2})
        return DualElem::word({{DKind::LMinus, alpha.a, beta.a}, {DKind::SLPlus, beta.b, alpha.b}});
    }

    DualElem phi(DIdx alpha, DIdx beta) const {  // l+^{b2}_{a2} S^-1(l-^{a1}_{b1})
        return DualElem::word({{DKind::LPlus, beta.b, alpha.b}, {DKind::SiLMinus, alpha.a, beta.a}});
    }

    DualElem chi(DIdx alpha) const {
        DualElem e(dinv(alpha.b, alpha.a));
        for_each_didx(n_, [&](DIdx ij) { e -= f(ij, alpha).scaled(dinv(ij.b, ij.a)); });
        return e.scaled(RatFunc(1) / b_.lambda);
    }

    DualElem chi_tilde(DIdx alpha) const {
        DualElem e;
        for_each_didx(n_, [&](DIdx ij) { e += phi(DIdx{ij.b, ij.a}, alpha).scaled(dinv(ij.b, ij.a)); });
        e -= DualElem(dinv(alpha.b, alpha.a));
        return e.scaled(RatFunc(1) / b_.lambda);
    }

    // ---- bounded-degree equality in A* ------------------------------------------

    // Enumerates t-letter test words of length <= degree (optionally also the
    // words carrying exactly one S(t) letter), shortest first, in a fixed
    // deterministic order.
    template <class Fn>
    void for_each_test_word(int degree, bool with_s_letter, Fn&& fn) const {
        for (int len = 0; len <= degree; ++len) {
            AWord w(static_cast<std::size_t>(len), ALetter{AKind::T, 1, 1});
            int s_positions = with_s_letter ? len : 0;
            for (int sp = 0; sp <= s_positions; ++sp) {
                // sp == 0: all-t words; sp = k > 0: S(t) at position k-1
                std::vector<int> digits(static_cast<std::size_t>(len), 0);
                for (;;) {
                    for (int i = 0; i < len; ++i) {
                        w[static_cast<std::size_t>(i)] = {sp == i + 1 ? AKind::ST : AKind::T,
                                                          digits[static_cast<std::size_t>(i)] / n_ + 1,
                                                          digits[static_cast<std::size_t>(i)] % n_ + 1};
                    }
                    if (!fn(static_cast<const AWord&>(w))) return;
                    int i = 0;
                    while (i < len && digits[static_cast<std::size_t>(i)] == n_ * n_ - 1)
                        digits[static_cast<std::size_t>(i++)] = 0;
                    if (i == len) break;
                    ++digits[static_cast<std::size_t>(i)];
                }
                if (len == 0) break;
            }
        }
    }

    struct Witness {
        AWord word;
        RatFunc value;
    };

    // true + nullopt if <x - y, w> = 0 for every test word; first failing
    // word otherwise.
    std::optional<Witness> functional_eq_witness(const DualElem& x, const DualElem& y, int degree,
                                                 bool with_s_letter = false) const {
        DualElem d = x - y;
        if (d.is_zero()) return std::nullopt;
        std::optional<Witness> bad;
        for_each_test_word(degree, with_s_letter, [&](const AWord& w) {
            RatFunc v(0);
            for (const auto& [xw, xc] : d.terms()) {
                RatFunc p = pair_word(xw, w);
                if (!p.is_zero()) v += xc * p;
            }
            if (!v.is_zero()) {
                bad = Witness{w, v};
                return false;
            }
            return true;
        });
        return bad;
    }

    bool functional_eq(const DualElem& x, const DualElem& y, int degree, bool with_s_letter = false) const {
        return !functional_eq_witness(x, y, degree, with_s_letter).has_value();
    }

    // Construction-time sanity of the tables: antipode convolution identities
    // and <S(x), a> = <x, S(a)> on generator letters.
    bool validate_tables() const {
        for (DKind k : {DKind::LPlus, DKind::LMinus, DKind::SLPlus, DKind::SLMinus, DKind::SiLPlus,
                        DKind::SiLMinus}) {
            for (int dr = 1; dr <= n_; ++dr)
                for (int dc = 1; dc <= n_; ++dc) {
                    DWord x{{k, dr, dc}};
                    for (int i = 1; i <= n_; ++i)
                        for (int j = 1; j <= n_; ++j) {
                            RatFunc want(i == j && dr == dc ? 1 : 0);
                            RatFunc s1(0), s2(0);
                            for (int m = 1; m <= n_; ++m) {
                                s1 += pair_word(x, {{AKind::ST, i, m}, {AKind::T, m, j}});
                                s2 += pair_word(x, {{AKind::T, i, m}, {AKind::ST, m, j}});
                            }
                            if (s1 != want || s2 != want) return false;
                        }
                }
        }
        // <S(l±)^k_l, a> = <l±^k_l, S(a)> on single letters
        for (auto [plain, anti] : {std::pair{DKind::LPlus, DKind::SLPlus}, {DKind::LMinus, DKind::SLMinus}}) {
            for (int dr = 1; dr <= n_; ++dr)
                for (int dc = 1; dc <= n_; ++dc)
                    for (int i = 1; i <= n_; ++i)
                        for (int j = 1; j <= n_; ++j)
                            for (AKind ak : {AKind::T, AKind::ST}) {
                                AElem sa = antipode(AElem::word({{ak, i, j}}));
                                RatFunc lhs = table(anti, ak, dr, dc, i, j);
                                RatFunc rhs(0);
                                for (const auto& [w, c] : sa.terms()) rhs += c * pair_word({{plain, dr, dc}}, w);
                                if (lhs != rhs) return false;
                            }
        }
        return true;
    }

private:
    std::size_t ofs(int dr, int dc, int ar, int ac) const {
        return static_cast<std::size_t>(((dr - 1) * n_ + (dc - 1)) * n_ * n_ + (ar - 1) * n_ + (ac - 1));
    }

    RatFunc dmat(int r, int c) const { return b_.D.get({r, c}); }
    RatFunc dinv(int r, int c) const { return b_.Dinv.get({r, c}); }

    AElem antipode_letter(const ALetter& l) const {
        if (l.kind == AKind::T) return AElem::word({{AKind::ST, l.row, l.col}});
        AElem out;  // S^2(t^i_j) = D^i_a t^a_b (D^-1)^b_j
        for (int a = 1; a <= n_; ++a)
            for (int bb = 1; bb <= n_; ++bb) {
                RatFunc c = dmat(l.row, a) * dinv(bb, l.col);
                if (!c.is_zero()) out.add({{AKind::T, a, bb}}, c);
            }
        return out;
    }

    AElem antipode_inv_letter(const ALetter& l) const {
        if (l.kind == AKind::ST) return AElem::word({{AKind::T, l.row, l.col}});
        AElem out;  // S^-1(t^i_j) = (D^-1)^i_a S(t^a_b) D^b_j
        for (int a = 1; a <= n_; ++a)
            for (int bb = 1; bb <= n_; ++bb) {
                RatFunc c = dinv(l.row, a) * dmat(bb, l.col);
                if (!c.is_zero()) out.add({{AKind::ST, a, bb}}, c);
            }
        return out;
    }

    void build_tables() {
        for (auto& row : tab_)
            for (auto& t : row) t.assign(static_cast<std::size_t>(n_) * n_ * n_ * n_, RatFunc(0));
        auto put = [&](DKind k, AKind a, int dr, int dc, int ar, int ac, const RatFunc& v) {
            tab_[static_cast<int>(k)][static_cast<int>(a)][ofs(dr, dc, ar, ac)] = v;
        };
        const IndexedTensor& R = b_.R;
        const IndexedTensor& Ri = b_.Rinv;
        for (int k = 1; k <= n_; ++k)
            for (int l = 1; l <= n_; ++l)
                for (int i = 1; i <= n_; ++i)
                    for (int j = 1; j <= n_; ++j) {
                        put(DKind::LPlus, AKind::T, k, l, i, j, R.get({i, k, j, l}));
                        put(DKind::LMinus, AKind::T, k, l, i, j, Ri.get({k, i, l, j}));
                        put(DKind::SLPlus, AKind::T, k, l, i, j, Ri.get({i, k, j, l}));
                        put(DKind::SLMinus, AKind::T, k, l, i, j, R.get({k, i, l, j}));
                        put(DKind::LPlus, AKind::ST, k, l, i, j, Ri.get({i, k, j, l}));
                        put(DKind::LMinus, AKind::ST, k, l, i, j, R.get({k, i, l, j}));
                        put(DKind::SiLPlus, AKind::ST, k, l, i, j, R.get({i, k, j, l}));
                        put(DKind::SiLMinus, AKind::ST, k, l, i, j, Ri.get({k, i, l, j}));
                        RatFunc s_lp(0), s_lm(0), si_lp(0), si_lm(0);
                        for (int a = 1; a <= n_; ++a)
                            for (int bb = 1; bb <= n_; ++bb) {
                                RatFunc conj = dmat(i, a) * dinv(bb, j);
                                RatFunc conj_inv = dinv(i, a) * dmat(bb, j);
                                if (!conj.is_zero()) {
                                    s_lp += conj * R.get({a, k, bb, l});
                                    s_lm += conj * Ri.get({k, a, l, bb});
                                }
                                if (!conj_inv.is_zero()) {
                                    si_lp += conj_inv * Ri.get({a, k, bb, l});
                                    si_lm += conj_inv * R.get({k, a, l, bb});
                                }
                            }
                        put(DKind::SLPlus, AKind::ST, k, l, i, j, s_lp);
                        put(DKind::SLMinus, AKind::ST, k, l, i, j, s_lm);
                        put(DKind::SiLPlus, AKind::T, k, l, i, j, si_lp);
                        put(DKind::SiLMinus, AKind::T, k, l, i, j, si_lm);
                    }
    }

    RBundle b_;
    int n_;
    std::array<std::array<std::vector<RatFunc>, 2>, 6> tab_;
};

} // namespace qgx
