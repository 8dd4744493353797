#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "algrel/errors.hpp"
#include "algrel/monomial.hpp"

namespace algrel {

using Level = Exponent;

inline constexpr std::uint64_t kDefaultLatticeBudget = std::uint64_t{1} << 28;

/// Simple multi-state k-out-of-n system: the system level is the
/// (n-k+1)-th smallest component state, capped at the system maximum.
/// Components whose cap is below a level never count towards it.
struct SimpleKN {
    std::size_t k = 1;
    std::vector<Level> component_max_levels;
    Level system_max_level = 1;
};

/// Generalized multi-state k-out-of-n:G system.  The system is at level
/// >= j iff some l in [j, M] has at least thresholds[l-1] components at
/// level >= l.
struct GeneralizedKN {
    std::vector<std::size_t> thresholds;
    std::vector<Level> component_max_levels;
};

/// Binary system of n components with states 0..m that works iff the
/// states add up to at least k.
struct SumThreshold {
    std::size_t n = 1;
    Level m = 1;
    std::uint64_t k = 1;
};

/// Linear consecutive k-out-of-n:G system with binary components.
struct ConsecutiveKN {
    std::size_t n = 1;
    std::size_t k = 1;
};

class SystemSpec {
public:
    using Variant = std::variant<SimpleKN, GeneralizedKN, SumThreshold, ConsecutiveKN>;

    /// When system_max_level is omitted it defaults to the highest level
    /// that at least k components can reach.
    static SystemSpec simple_kn(std::size_t k, std::vector<Level> caps,
                                std::optional<Level> system_max_level = std::nullopt) {
        check_caps(caps);
        if (k < 1 || k > caps.size()) {
            throw ValidationError("simple_kn: k must satisfy 1 <= k <= n");
        }
        Level m = 0;
        if (system_max_level) {
            m = *system_max_level;
        } else {
            std::vector<Level> sorted = caps;
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            m = sorted[k - 1];
        }
        if (m < 1) {
            throw ValidationError("simple_kn: system max level must be >= 1");
        }
        return SystemSpec(SimpleKN{k, std::move(caps), m});
    }

    static SystemSpec generalized_kn(std::vector<std::size_t> thresholds, std::vector<Level> caps) {
        check_caps(caps);
        if (thresholds.empty()) {
            throw ValidationError("generalized_kn: at least one threshold is required");
        }
        for (std::size_t t : thresholds) {
            if (t < 1 || t > caps.size()) {
                throw ValidationError("generalized_kn: every threshold k_j must satisfy 1 <= k_j <= n");
            }
        }
        return SystemSpec(GeneralizedKN{std::move(thresholds), std::move(caps)});
    }

    static SystemSpec generalized_kn(std::size_t n, std::vector<std::size_t> thresholds) {
        const auto m = static_cast<Level>(thresholds.size());
        return generalized_kn(std::move(thresholds), std::vector<Level>(n, m));
    }

    static SystemSpec sum_threshold(std::size_t n, Level m, std::uint64_t k) {
        if (n < 1 || m < 1) {
            throw ValidationError("sum_threshold: n and m must be >= 1");
        }
        if (k > static_cast<std::uint64_t>(n) * m) {
            throw ValidationError("sum_threshold: k must not exceed n*m");
        }
        return SystemSpec(SumThreshold{n, m, k});
    }

    static SystemSpec consecutive_kn(std::size_t n, std::size_t k) {
        if (k < 1 || k > n) {
            throw ValidationError("consecutive_kn: k must satisfy 1 <= k <= n");
        }
        return SystemSpec(ConsecutiveKN{n, k});
    }

    const Variant& variant() const noexcept { return system_; }

    std::size_t num_components() const {
        return std::visit(
            [](const auto& s) -> std::size_t {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, SimpleKN> || std::is_same_v<T, GeneralizedKN>) {
                    return s.component_max_levels.size();
                } else {
                    return s.n;
                }
            },
            system_);
    }

    /// Highest system level M.
    Level max_level() const {
        return std::visit(
            [](const auto& s) -> Level {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, SimpleKN>) {
                    return s.system_max_level;
                } else if constexpr (std::is_same_v<T, GeneralizedKN>) {
                    return static_cast<Level>(s.thresholds.size());
                } else {
                    return 1;
                }
            },
            system_);
    }

    /// Per-component maximum states M_i.
    std::vector<Level> component_caps() const {
        return std::visit(
            [](const auto& s) -> std::vector<Level> {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, SimpleKN> || std::is_same_v<T, GeneralizedKN>) {
                    return s.component_max_levels;
                } else if constexpr (std::is_same_v<T, SumThreshold>) {
                    return std::vector<Level>(s.n, s.m);
                } else {
                    return std::vector<Level>(s.n, 1);
                }
            },
            system_);
    }

    std::string kind() const {
        switch (system_.index()) {
            case 0: return "simple_kn";
            case 1: return "generalized_kn";
            case 2: return "sum_threshold";
            default: return "consecutive_kn";
        }
    }

private:
    explicit SystemSpec(Variant v) : system_(std::move(v)) {}

    static void check_caps(const std::vector<Level>& caps) {
        if (caps.empty()) {
            throw ValidationError("a system needs at least one component");
        }
        for (Level c : caps) {
            if (c < 1) {
                throw ValidationError("component max levels must be >= 1");
            }
        }
    }

    Variant system_;
};

/// A tuple of component states (s_1, ..., s_n).
struct StateVector {
    std::vector<Level> states;

    StateVector() = default;
    explicit StateVector(std::vector<Level> s) : states(std::move(s)) {}
    StateVector(std::initializer_list<Level> s) : states(s) {}
    explicit StateVector(const Monomial& m) : states(m.exponents().begin(), m.exponents().end()) {}

    std::size_t size() const noexcept { return states.size(); }
    Monomial to_monomial() const { return Monomial(std::vector<Exponent>(states.begin(), states.end())); }

    friend bool operator==(const StateVector&, const StateVector&) = default;
    friend auto operator<=>(const StateVector&, const StateVector&) = default;
};

/// Standard pair (x^base, free_set) of a monomial ideal; free_set holds
/// 0-based variable indices in increasing order.
struct StandardPair {
    Monomial base;
    std::vector<std::size_t> free_set;

    friend bool operator==(const StandardPair&, const StandardPair&) = default;
    friend auto operator<=>(const StandardPair& a, const StandardPair& b) {
        if (auto c = a.base <=> b.base; c != 0) {
            return c;
        }
        return a.free_set <=> b.free_set;
    }
};

namespace detail {

// Unchecked structure function; callers guarantee the state fits the caps.
inline Level evaluate_structure(const SystemSpec& spec, std::span<const Level> x) {
    return std::visit(
        [&](const auto& s) -> Level {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SimpleKN>) {
                std::vector<Level> sorted(x.begin(), x.end());
                const std::size_t idx = sorted.size() - s.k;
                std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx),
                                 sorted.end());
                return std::min(sorted[idx], s.system_max_level);
            } else if constexpr (std::is_same_v<T, GeneralizedKN>) {
                // phi >= j iff some l >= j has N_l >= k_l, so phi is the
                // largest such l.
                const auto m = static_cast<Level>(s.thresholds.size());
                for (Level l = m; l >= 1; --l) {
                    std::size_t count = 0;
                    for (Level v : x) {
                        count += v >= l ? 1 : 0;
                    }
                    if (count >= s.thresholds[l - 1]) {
                        return l;
                    }
                }
                return 0;
            } else if constexpr (std::is_same_v<T, SumThreshold>) {
                std::uint64_t total = 0;
                for (Level v : x) {
                    total += v;
                }
                return total >= s.k ? 1 : 0;
            } else {
                std::size_t run = 0;
                for (Level v : x) {
                    run = v > 0 ? run + 1 : 0;
                    if (run >= s.k) {
                        return 1;
                    }
                }
                return 0;
            }
        },
        spec.variant());
}

inline void check_state(const SystemSpec& spec, std::span<const Level> x) {
    const auto caps = spec.component_caps();
    if (x.size() != caps.size()) {
        throw DimensionError("state vector has " + std::to_string(x.size()) + " entries, system has " +
                             std::to_string(caps.size()) + " components");
    }
    for (std::size_t i = 0; i < caps.size(); ++i) {
        if (x[i] > caps[i]) {
            throw DomainError("state of component " + std::to_string(i + 1) + " exceeds its cap " +
                              std::to_string(caps[i]));
        }
    }
}

inline void check_level(const SystemSpec& spec, Level j, Level lo, Level hi, const char* op) {
    if (j < lo || j > hi) {
        throw DomainError(std::string(op) + ": level " + std::to_string(j) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "] for a " + spec.kind() +
                          " system");
    }
}

// Calls fn(indices) for every k-subset of pool, in lexicographic order of
// positions within pool.
template <class Fn>
void for_each_subset(const std::vector<std::size_t>& pool, std::size_t k, Fn&& fn) {
    if (k > pool.size()) {
        return;
    }
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    std::vector<std::size_t> chosen(k);
    while (true) {
        for (std::size_t t = 0; t < k; ++t) {
            chosen[t] = pool[pick[t]];
        }
        fn(chosen);
        std::size_t t = k;
        while (t > 0 && pick[t - 1] == pool.size() - k + (t - 1)) {
            --t;
        }
        if (t == 0) {
            return;
        }
        ++pick[t - 1];
        for (std::size_t u = t; u < k; ++u) {
            pick[u] = pick[u - 1] + 1;
        }
    }
}

// Generators of I_{(k, eligible), level}: products of k eligible variables,
// each raised to `level`.
inline void append_threshold_generators(std::size_t n, const std::vector<std::size_t>& eligible,
                                        std::size_t k, Level level, std::vector<Monomial>& out) {
    for_each_subset(eligible, k, [&](const std::vector<std::size_t>& chosen) {
        std::vector<Exponent> e(n, 0);
        for (std::size_t i : chosen) {
            e[i] = level;
        }
        out.emplace_back(std::move(e));
    });
}

inline std::vector<std::size_t> components_reaching(const std::vector<Level>& caps, Level level) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < caps.size(); ++i) {
        if (caps[i] >= level) {
            out.push_back(i);
        }
    }
    return out;
}

inline void append_bounded_compositions(std::size_t n, Level m, std::uint64_t k, std::vector<Exponent>& e,
                                        std::size_t pos, std::uint64_t remaining,
                                        std::vector<Monomial>& out) {
    if (pos == n) {
        if (remaining == 0) {
            out.emplace_back(e);
        }
        return;
    }
    const std::uint64_t room_after = static_cast<std::uint64_t>(n - pos - 1) * m;
    const std::uint64_t hi = std::min<std::uint64_t>(m, remaining);
    const std::uint64_t lo = remaining > room_after ? remaining - room_after : 0;
    for (std::uint64_t v = lo; v <= hi; ++v) {
        e[pos] = static_cast<Exponent>(v);
        append_bounded_compositions(n, m, k, e, pos + 1, remaining - v, out);
    }
    e[pos] = 0;
}

inline std::uint64_t lattice_size(const std::vector<Level>& caps) {
    std::uint64_t size = 1;
    for (Level c : caps) {
        const std::uint64_t f = std::uint64_t{c} + 1;
        if (size > std::numeric_limits<std::uint64_t>::max() / f) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        size *= f;
    }
    return size;
}

}  // namespace detail

/// System level of state x.  Throws DomainError if a state exceeds its cap.
inline Level structure_function(const SystemSpec& spec, const StateVector& x) {
    detail::check_state(spec, x.states);
    return detail::evaluate_structure(spec, x.states);
}

/// Minimal generating set of the j-reliability ideal I_{S,j}: its monomials
/// are exactly the states with structure function >= j.
inline MonomialIdeal build_reliability_ideal(const SystemSpec& spec, Level j) {
    detail::check_level(spec, j, 1, spec.max_level(), "build_reliability_ideal");
    const std::size_t n = spec.num_components();
    std::vector<Monomial> gens;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SimpleKN>) {
                const auto eligible = detail::components_reaching(s.component_max_levels, j);
                detail::append_threshold_generators(n, eligible, s.k, j, gens);
            } else if constexpr (std::is_same_v<T, GeneralizedKN>) {
                for (Level i = j; i <= s.thresholds.size(); ++i) {
                    const auto eligible = detail::components_reaching(s.component_max_levels, i);
                    detail::append_threshold_generators(n, eligible, s.thresholds[i - 1], i, gens);
                }
            } else if constexpr (std::is_same_v<T, SumThreshold>) {
                std::vector<Exponent> e(n, 0);
                detail::append_bounded_compositions(n, s.m, s.k, e, 0, s.k, gens);
            } else {
                for (std::size_t start = 0; start + s.k <= n; ++start) {
                    std::vector<Exponent> e(n, 0);
                    std::fill(e.begin() + static_cast<std::ptrdiff_t>(start),
                              e.begin() + static_cast<std::ptrdiff_t>(start + s.k), 1);
                    gens.emplace_back(std::move(e));
                }
            }
        },
        spec.variant());
    return minimalize(n, std::move(gens));
}

/// Lower boundary points to level j: the minimal j-working states.
inline std::vector<StateVector> lower_boundary_points(const SystemSpec& spec, Level j) {
    const auto ideal = build_reliability_ideal(spec, j);
    std::vector<StateVector> out;
    out.reserve(ideal.size());
    for (const auto& g : ideal.generators()) {
        out.emplace_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Upper boundary points to level j: states x with phi(x) <= j such that
/// raising any single component (within its cap) lifts phi above j.
/// Found by a depth-first scan of the state lattice with monotonicity
/// pruning.  Throws ResourceError when the lattice exceeds the budget.
inline std::vector<StateVector> upper_boundary_points(const SystemSpec& spec, Level j,
                                                      std::uint64_t budget = kDefaultLatticeBudget) {
    detail::check_level(spec, j, 0, spec.max_level() - 1, "upper_boundary_points");
    const auto caps = spec.component_caps();
    const std::uint64_t size = detail::lattice_size(caps);
    if (size > budget) {
        throw ResourceError("upper_boundary_points: state lattice too large", size, budget);
    }
    const std::size_t n = caps.size();
    std::vector<Level> x(n, 0);
    std::vector<Level> probe(n, 0);
    std::vector<StateVector> out;

    auto is_maximal = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] < caps[i]) {
                ++x[i];
                const Level up = detail::evaluate_structure(spec, x);
                --x[i];
                if (up <= j) {
                    return false;
                }
            }
        }
        return true;
    };

    auto dfs = [&](auto&& self, std::size_t t) -> void {
        if (t == n) {
            if (is_maximal()) {
                out.emplace_back(x);
            }
            return;
        }
        for (Level v = 0; v <= caps[t]; ++v) {
            x[t] = v;
            // Remaining components are still 0 here; phi only grows with v.
            if (detail::evaluate_structure(spec, x) > j) {
                break;
            }
            if (v < caps[t]) {
                // Even with every later component at its cap, bumping this
                // one must cross level j.
                std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(t), probe.begin());
                probe[t] = v + 1;
                std::copy(caps.begin() + static_cast<std::ptrdiff_t>(t + 1), caps.end(),
                          probe.begin() + static_cast<std::ptrdiff_t>(t + 1));
                if (detail::evaluate_structure(spec, probe) <= j) {
                    continue;
                }
            }
            self(self, t + 1);
        }
        x[t] = 0;
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Maximal standard pairs of I_{S,j}, read off the upper boundary points to
/// level j-1: the free set is where the point sits at its cap, the base is
/// the point with those coordinates zeroed.
inline std::vector<StandardPair> maximal_standard_pairs(const SystemSpec& spec, Level j,
                                                        std::uint64_t budget = kDefaultLatticeBudget) {
    detail::check_level(spec, j, 1, spec.max_level(), "maximal_standard_pairs");
    const auto caps = spec.component_caps();
    std::vector<StandardPair> out;
    for (const auto& alpha : upper_boundary_points(spec, j - 1, budget)) {
        std::vector<Exponent> base(alpha.states.begin(), alpha.states.end());
        std::vector<std::size_t> free_set;
        for (std::size_t i = 0; i < caps.size(); ++i) {
            if (alpha.states[i] == caps[i]) {
                free_set.push_back(i);
                base[i] = 0;
            }
        }
        out.push_back(StandardPair{Monomial(std::move(base)), std::move(free_set)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Minimal cuts for level j of a generalized k-out-of-n system, enumerated
/// from per-level counts rather than the full lattice.  A state is below
/// level j iff N_l <= k_l - 1 for every l in [j, M]; maximal such states put
/// every non-high component at min(M_i, j-1) and saturate the count of the
/// level each raise would hit.  Simple k-out-of-n systems are handled as
/// generalized ones with constant thresholds.
inline std::vector<StateVector> generalized_kn_minimal_cuts(const SystemSpec& spec, Level j) {
    detail::check_level(spec, j, 1, spec.max_level(), "generalized_kn_minimal_cuts");
    std::vector<std::size_t> thresholds;
    if (const auto* g = std::get_if<GeneralizedKN>(&spec.variant())) {
        thresholds = g->thresholds;
    } else if (const auto* s = std::get_if<SimpleKN>(&spec.variant())) {
        thresholds.assign(s->system_max_level, s->k);
    } else {
        throw DomainError("generalized_kn_minimal_cuts: needs a simple or generalized k-out-of-n system");
    }
    const auto caps = spec.component_caps();
    const std::size_t n = caps.size();
    const Level top = static_cast<Level>(thresholds.size());

    // count[l] = number of components at level >= l, for l in [j, top].
    std::vector<std::size_t> count(top + 2, 0);
    std::vector<Level> x(n, 0);
    std::vector<StateVector> out;

    auto allowed = [&](Level l) { return thresholds[l - 1] - 1; };

    auto dfs = [&](auto&& self, std::size_t t) -> void {
        if (t == n) {
            for (std::size_t i = 0; i < n; ++i) {
                if (x[i] >= caps[i]) {
                    continue;
                }
                const Level next = x[i] + 1;
                if (next < j) {
                    return;
                }
                // Raising past the top level adds no count, so never blocked.
                if (next > top || count[next] != allowed(next)) {
                    return;
                }
            }
            out.emplace_back(x);
            return;
        }
        const Level low = std::min<Level>(caps[t], j - 1);
        x[t] = low;
        self(self, t + 1);
        for (Level v = std::max<Level>(j, low + 1); v <= caps[t]; ++v) {
            bool ok = true;
            for (Level l = j; l <= std::min(v, top); ++l) {
                if (++count[l] > allowed(l)) {
                    ok = false;
                }
            }
            if (ok) {
                x[t] = v;
                self(self, t + 1);
            }
            for (Level l = j; l <= std::min(v, top); ++l) {
                --count[l];
            }
            if (!ok) {
                break;
            }
        }
        x[t] = 0;
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Minimal cuts for level j: the upper boundary points to level j-1.  Falls
/// back to the count-based enumeration for k-out-of-n systems whose lattice
/// exceeds the budget.
inline std::vector<StateVector> minimal_cuts(const SystemSpec& spec, Level j,
                                             std::uint64_t budget = kDefaultLatticeBudget) {
    detail::check_level(spec, j, 1, spec.max_level(), "minimal_cuts");
    const auto size = detail::lattice_size(spec.component_caps());
    if (size > budget && (std::holds_alternative<GeneralizedKN>(spec.variant()) ||
                          std::holds_alternative<SimpleKN>(spec.variant()))) {
        return generalized_kn_minimal_cuts(spec, j);
    }
    return upper_boundary_points(spec, j - 1, budget);
}

}  // namespace algrel
