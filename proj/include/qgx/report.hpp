#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace qgx {

struct CheckResult {
    std::string equation;
    bool pass = false;
    int degree = -1;           // -1: not a bounded-degree check
    std::string witness;       // empty on pass

    static CheckResult ok(std::string eq, int deg = -1) { return {std::move(eq), true, deg, {}}; }
    static CheckResult fail(std::string eq, std::string wit, int deg = -1) {
        return {std::move(eq), false, deg, std::move(wit)};
    }
};

struct Report {
    std::vector<CheckResult> entries;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
    void add(CheckResult r) { entries.push_back(std::move(r)); }
    void merge(const Report& o) { entries.insert(entries.end(), o.entries.begin(), o.entries.end()); }
};

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : r.entries) {
        nlohmann::json item = {{"equation", e.equation},
                               {"status", e.pass ? "pass" : "fail"},
                               {"degree", e.degree >= 0 ? nlohmann::json(e.degree) : nlohmann::json(nullptr)},
                               {"witness", e.witness.empty() ? nlohmann::json(nullptr) : nlohmann::json(e.witness)}};
        out.push_back(std::move(item));
    }
    return out;
}

inline std::string to_text(const Report& r) {
    std::string out;
    for (const auto& e : r.entries) {
        out += e.equation;
        out.append(e.equation.size() < 28 ? 28 - e.equation.size() : 1, ' ');
        out += e.pass ? "pass" : "FAIL";
        if (e.degree >= 0) out += "  (degree " + std::to_string(e.degree) + ")";
        if (!e.pass && !e.witness.empty()) out += "  witness: " + e.witness;
        out += "\n";
    }
    return out;
}

} // namespace qgx
