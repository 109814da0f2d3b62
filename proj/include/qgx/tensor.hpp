// Sparse multi-index tensors over the exact q-field, JSON import/export in
// the tool's interchange format, and exact dense linear algebra helpers.
#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgx/qfield.hpp"

namespace qgx {

using MultiIndex = std::vector<int>;  // 1-based entries

class IndexedTensor {
public:
    IndexedTensor() = default;
    IndexedTensor(int n, int legs) : n_(n), legs_(legs) {}

    int n() const { return n_; }
    int legs() const { return legs_; }

    const std::map<MultiIndex, RatFunc>& entries() const { return e_; }

    RatFunc get(const MultiIndex& idx) const {
        auto it = e_.find(idx);
        return it == e_.end() ? RatFunc(0) : it->second;
    }
    void set(const MultiIndex& idx, const RatFunc& v) {
        check_index(idx);
        if (v.is_zero())
            e_.erase(idx);
        else
            e_[idx] = v;
    }
    void add(const MultiIndex& idx, const RatFunc& v) {
        check_index(idx);
        auto it = e_.find(idx);
        if (it == e_.end()) {
            if (!v.is_zero()) e_[idx] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) e_.erase(it);
        }
    }

    std::size_t entry_count() const { return e_.size(); }

    friend bool operator==(const IndexedTensor& a, const IndexedTensor& b) {
        return a.n_ == b.n_ && a.legs_ == b.legs_ && a.e_ == b.e_;
    }

private:
    void check_index(const MultiIndex& idx) const {
        if (static_cast<int>(idx.size()) != legs_)
            throw dimension_mismatch("tensor index arity mismatch");
        for (int v : idx)
            if (v < 1 || v > n_) throw dimension_mismatch("tensor index out of range");
    }

    int n_ = 0;
    int legs_ = 0;
    std::map<MultiIndex, RatFunc> e_;
};

inline nlohmann::json to_json(const IndexedTensor& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [idx, val] : t.entries()) {
        entries.push_back({{"idx", idx}, {"val", to_string(val)}});
    }
    return {{"n", t.n()}, {"legs", t.legs()}, {"entries", entries}};
}

inline IndexedTensor tensor_from_json(const nlohmann::json& j) {
    IndexedTensor t(j.at("n").get<int>(), j.at("legs").get<int>());
    for (const auto& e : j.at("entries")) {
        MultiIndex idx = e.at("idx").get<MultiIndex>();
        t.set(idx, parse_ratfunc(e.at("val").get<std::string>()));
    }
    return t;
}

// ---- exact dense linear algebra --------------------------------------------

using Matrix = std::vector<std::vector<RatFunc>>;

inline Matrix identity_matrix(std::size_t n) {
    Matrix m(n, std::vector<RatFunc>(n, RatFunc(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = RatFunc(1);
    return m;
}

inline Matrix matrix_product(const Matrix& a, const Matrix& b) {
    std::size_t r = a.size(), c = b[0].size(), k = b.size();
    Matrix m(r, std::vector<RatFunc>(c, RatFunc(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < c; ++j) {
                if (b[t][j].is_zero()) continue;
                m[i][j] += a[i][t] * b[t][j];
            }
        }
    return m;
}

// Gauss-Jordan over the exact field; zero pivots are decidable so there is
// no pivoting subtlety beyond skipping them. Throws singular_system,
// naming the system being solved.
inline Matrix exact_inverse(Matrix a, const std::string& what) {
    const std::size_t n = a.size();
    Matrix inv = identity_matrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw singular_system("singular linear system: " + what);
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        RatFunc d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            RatFunc f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline bool is_identity(const Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != RatFunc(i == j ? 1 : 0)) return false;
    return true;
}

} // namespace qgx
