#pragma once

#include <stdexcept>
#include <string>

namespace qgx {

struct qgx_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : qgx_error {
    division_by_zero() : qgx_error("division by zero in q-field") {}
};

// Denominator vanishes at the evaluation point; carries the point as text.
struct pole_error : qgx_error {
    std::string at;
    explicit pole_error(std::string point)
        : qgx_error("pole at q = " + point), at(std::move(point)) {}
};

struct parse_error : qgx_error {
    std::size_t pos;
    parse_error(std::size_t p, const std::string& what)
        : qgx_error("parse error at position " + std::to_string(p) + ": " + what), pos(p) {}
};

struct dimension_mismatch : qgx_error {
    using qgx_error::qgx_error;
};

// An exact linear system turned out singular; message names the system.
struct singular_system : qgx_error {
    using qgx_error::qgx_error;
};

// A relation family could not be oriented into rewrite rules.
struct rule_family_error : qgx_error {
    using qgx_error::qgx_error;
};

// Rewriting exceeded its fuel bound; carries the offending word as text.
struct fuel_exhausted : qgx_error {
    std::string word;
    explicit fuel_exhausted(std::string w)
        : qgx_error("rewrite fuel exhausted on word " + w), word(std::move(w)) {}
};

// Two independent computation routes disagreed (signals an internal bug).
struct consistency_error : qgx_error {
    using qgx_error::qgx_error;
};

struct grade_overflow : qgx_error {
    using qgx_error::qgx_error;
};

} // namespace qgx
