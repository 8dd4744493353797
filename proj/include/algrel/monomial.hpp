#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algrel/errors.hpp"

namespace algrel {

using Exponent = std::uint32_t;

/// A monomial x_1^{a_1} ... x_n^{a_n} stored as its exponent vector.
///
/// The same type doubles as a component-state tuple: the state
/// (s_1, ..., s_n) is identified with the monomial whose exponents are s_i.
/// The number of variables is fixed at construction.
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(std::size_t num_vars) : exponents_(num_vars, 0) {}

    explicit Monomial(std::vector<Exponent> exponents) : exponents_(std::move(exponents)) {
        degree_ = sum_exponents();
    }

    Monomial(std::initializer_list<Exponent> exponents) : exponents_(exponents) {
        degree_ = sum_exponents();
    }

    std::size_t size() const noexcept { return exponents_.size(); }
    std::uint64_t degree() const noexcept { return degree_; }
    Exponent operator[](std::size_t i) const { return exponents_[i]; }
    std::span<const Exponent> exponents() const noexcept { return exponents_; }

    bool is_one() const noexcept { return degree_ == 0; }

    /// Returns a copy with exponent i replaced.
    Monomial with(std::size_t i, Exponent value) const {
        Monomial out = *this;
        out.degree_ = out.degree_ - out.exponents_[i] + value;
        out.exponents_[i] = value;
        return out;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
        return a.exponents_ == b.exponents_;
    }
    // Plain lexicographic order on exponent vectors, for use as a map key.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
        return a.exponents_ <=> b.exponents_;
    }

private:
    std::uint64_t sum_exponents() const {
        std::uint64_t s = 0;
        for (Exponent e : exponents_) {
            s += e;
        }
        return s;
    }

    std::vector<Exponent> exponents_;
    std::uint64_t degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Exponent e : m.exponents()) {
            h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw DimensionError(std::string(op) + ": monomials live in rings with " + std::to_string(a) +
                             " and " + std::to_string(b) + " variables");
    }
}

}  // namespace detail

/// True iff a divides b, i.e. every exponent of a is at most the matching one of b.
inline bool divides(const Monomial& a, const Monomial& b) {
    detail::require_same_size(a.size(), b.size(), "divides");
    if (a.degree() > b.degree()) {
        return false;
    }
    const auto ea = a.exponents();
    const auto eb = b.exponents();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i] > eb[i]) {
            return false;
        }
    }
    return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    detail::require_same_size(a.size(), b.size(), "lcm");
    std::vector<Exponent> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::max(a[i], b[i]);
    }
    return Monomial(std::move(out));
}

/// Canonical generator order: graded reverse lexicographic, ascending.
/// Lower degree first; within a degree the monomial with the larger
/// exponent in the last differing variable comes first.  So x4x5 precedes
/// x3x4, which precedes x1x2.
inline bool canonical_less(const Monomial& a, const Monomial& b) noexcept {
    if (a.degree() != b.degree()) {
        return a.degree() < b.degree();
    }
    const auto ea = a.exponents();
    const auto eb = b.exponents();
    return std::lexicographical_compare(eb.rbegin(), eb.rend(), ea.rbegin(), ea.rend());
}

inline std::string to_string(const Monomial& m) {
    if (m.is_one()) {
        return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += 'x' + std::to_string(i + 1);
        if (m[i] > 1) {
            out += '^' + std::to_string(m[i]);
        }
    }
    return out;
}

/// A monomial ideal stored by its unique minimal generating set, kept in
/// canonical order.  No generators is the zero ideal; the single generator 1
/// is the unit ideal.
class MonomialIdeal {
public:
    MonomialIdeal() = default;

    static MonomialIdeal zero(std::size_t num_vars) { return MonomialIdeal(num_vars, {}); }
    static MonomialIdeal unit(std::size_t num_vars) {
        return MonomialIdeal(num_vars, {Monomial(num_vars)});
    }

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::vector<Monomial>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return generators_.size(); }

    bool is_zero() const noexcept { return generators_.empty(); }
    bool is_unit() const noexcept { return generators_.size() == 1 && generators_.front().is_one(); }
    bool is_principal() const noexcept { return generators_.size() == 1; }

    /// Membership test: m is a multiple of some minimal generator.
    bool contains(const Monomial& m) const {
        detail::require_same_size(num_vars_, m.size(), "contains");
        return std::any_of(generators_.begin(), generators_.end(),
                           [&](const Monomial& g) { return divides(g, m); });
    }

    friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

    friend MonomialIdeal minimalize(std::size_t num_vars, std::vector<Monomial> gens);

private:
    MonomialIdeal(std::size_t num_vars, std::vector<Monomial> minimal_sorted)
        : num_vars_(num_vars), generators_(std::move(minimal_sorted)) {}

    std::size_t num_vars_ = 0;
    std::vector<Monomial> generators_;
};

/// Keeps exactly the divisibility-minimal elements of gens (duplicates
/// collapse) and returns them as an ideal in canonical order.
inline MonomialIdeal minimalize(std::size_t num_vars, std::vector<Monomial> gens) {
    for (const auto& g : gens) {
        detail::require_same_size(num_vars, g.size(), "minimalize");
    }
    std::sort(gens.begin(), gens.end(), canonical_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    std::vector<Monomial> kept;
    kept.reserve(gens.size());
    for (auto& candidate : gens) {
        // Only strictly smaller degrees can divide a distinct monomial, and
        // kept is sorted by degree.
        bool redundant = false;
        for (const auto& k : kept) {
            if (k.degree() >= candidate.degree()) {
                break;
            }
            if (divides(k, candidate)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) {
            kept.push_back(std::move(candidate));
        }
    }
    return MonomialIdeal(num_vars, std::move(kept));
}

inline MonomialIdeal minimalize(std::vector<Monomial> gens) {
    if (gens.empty()) {
        throw DimensionError("minimalize: cannot infer the number of variables of an empty set");
    }
    const std::size_t n = gens.front().size();
    return minimalize(n, std::move(gens));
}

inline MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
    detail::require_same_size(a.num_vars(), b.num_vars(), "ideal_sum");
    std::vector<Monomial> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return minimalize(a.num_vars(), std::move(gens));
}

/// I ∩ <g>, generated by the lcms of g with the generators of I.
inline MonomialIdeal intersect_principal(const MonomialIdeal& ideal, const Monomial& g) {
    detail::require_same_size(ideal.num_vars(), g.size(), "intersect_principal");
    std::vector<Monomial> gens;
    gens.reserve(ideal.size());
    for (const auto& h : ideal.generators()) {
        gens.push_back(lcm(h, g));
    }
    return minimalize(ideal.num_vars(), std::move(gens));
}

inline std::string to_string(const MonomialIdeal& ideal) {
    std::string out = "<";
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += to_string(ideal.generators()[i]);
    }
    return out + ">";
}

}  // namespace algrel
