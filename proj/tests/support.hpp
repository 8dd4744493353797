#pragma once

// Shared test helpers: sample paths, seeded random systems, and naive
// reference computations written independently of the library.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "algrel/monomial.hpp"
#include "algrel/reliability.hpp"
#include "algrel/systems.hpp"

namespace testing_support {

using namespace algrel;

inline std::string sample(const std::string& name) { return std::string(ALGREL_SAMPLES_DIR) + "/" + name; }

inline std::vector<Monomial> monomials(std::initializer_list<std::initializer_list<Exponent>> rows) {
    std::vector<Monomial> out;
    for (const auto& r : rows) {
        out.emplace_back(r);
    }
    return out;
}

inline std::set<Monomial> as_set(const std::vector<Monomial>& v) { return {v.begin(), v.end()}; }

inline std::set<StateVector> as_states(std::initializer_list<std::initializer_list<Level>> rows) {
    std::set<StateVector> out;
    for (const auto& r : rows) {
        out.insert(StateVector(r));
    }
    return out;
}

template <class Range>
std::set<StateVector> state_set(const Range& r) {
    return {r.begin(), r.end()};
}

inline std::set<StateVector> generator_states(const MonomialIdeal& ideal) {
    std::set<StateVector> out;
    for (const auto& g : ideal.generators()) {
        out.insert(StateVector(g));
    }
    return out;
}

/// Every exponent vector in the box [0, caps].
inline std::vector<std::vector<Exponent>> box(const std::vector<Exponent>& caps) {
    std::vector<std::vector<Exponent>> out{{}};
    for (Exponent c : caps) {
        std::vector<std::vector<Exponent>> next;
        for (const auto& prefix : out) {
            for (Exponent v = 0; v <= c; ++v) {
                auto p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Survival arrays [1, s1, s2, s3] for S_{n,(4,2,1)}: the three component
/// types repeat with period three.
inline ProbabilityModel cycled_probabilities(std::size_t n) {
    const std::vector<std::vector<double>> types{
        {1.0, 0.5, 0.2, 0.1}, {1.0, 0.6, 0.15, 0.05}, {1.0, 0.4, 0.1, 0.05}};
    std::vector<std::vector<double>> survival;
    for (std::size_t i = 0; i < n; ++i) {
        survival.push_back(types[i % 3]);
    }
    return ProbabilityModel::from_survival(survival);
}

inline SystemSpec s421(std::size_t n) { return SystemSpec::generalized_kn({4, 2, 1}, std::vector<Level>(n, 3)); }

inline ProbabilityModel three_component_model() {
    return ProbabilityModel::from_mass({{0.1, 0.2, 0.3, 0.4}, {0.1, 0.1, 0.2, 0.6}, {0.1, 0.2, 0.4, 0.3}});
}

inline SystemSpec three_component_spec() { return SystemSpec::generalized_kn({3, 2, 2}, {3, 3, 3}); }

inline SystemSpec mixed_caps_spec() { return SystemSpec::simple_kn(2, {4, 3, 2, 2, 1}, 3); }

struct RandomSystem {
    SystemSpec spec;
    ProbabilityModel model;
    std::string description;
};

/// Random small system (n <= 5, caps <= 3) from one of the four families,
/// with a random mass function per component.
class SystemGenerator {
public:
    explicit SystemGenerator(std::uint64_t seed) : rng_(seed) {}

    RandomSystem next() {
        const int family = pick(0, 3);
        const auto n = static_cast<std::size_t>(pick(1, 5));
        std::string d;
        SystemSpec spec = SystemSpec::consecutive_kn(1, 1);
        if (family == 0) {
            std::vector<Level> caps(n);
            for (auto& c : caps) {
                c = static_cast<Level>(pick(1, 3));
            }
            const auto k = static_cast<std::size_t>(pick(1, static_cast<int>(n)));
            const Level top = *std::max_element(caps.begin(), caps.end());
            const auto m = static_cast<Level>(pick(1, static_cast<int>(top)));
            spec = SystemSpec::simple_kn(k, caps, m);
            d = "simple_kn k=" + std::to_string(k) + " M=" + std::to_string(m);
        } else if (family == 1) {
            std::vector<Level> caps(n);
            for (auto& c : caps) {
                c = static_cast<Level>(pick(1, 3));
            }
            const auto levels = static_cast<std::size_t>(pick(1, 3));
            std::vector<std::size_t> thresholds(levels);
            for (auto& t : thresholds) {
                t = static_cast<std::size_t>(pick(1, static_cast<int>(n)));
            }
            spec = SystemSpec::generalized_kn(thresholds, caps);
            d = "generalized_kn levels=" + std::to_string(levels);
        } else if (family == 2) {
            const auto m = static_cast<Level>(pick(1, 3));
            const auto k = static_cast<std::uint64_t>(pick(1, static_cast<int>(n * m)));
            spec = SystemSpec::sum_threshold(n, m, k);
            d = "sum_threshold m=" + std::to_string(m) + " k=" + std::to_string(k);
        } else {
            const auto k = static_cast<std::size_t>(pick(1, static_cast<int>(n)));
            spec = SystemSpec::consecutive_kn(n, k);
            d = "consecutive_kn k=" + std::to_string(k);
        }
        d += " n=" + std::to_string(n);
        return RandomSystem{spec, random_model(spec.component_caps()), d};
    }

    ProbabilityModel random_model(const std::vector<Level>& caps) {
        std::uniform_real_distribution<double> u(0.05, 1.0);
        std::vector<std::vector<double>> mass;
        for (Level c : caps) {
            std::vector<double> p(c + 1);
            double total = 0.0;
            for (auto& v : p) {
                v = u(rng_);
                total += v;
            }
            for (auto& v : p) {
                v /= total;
            }
            mass.push_back(std::move(p));
        }
        return ProbabilityModel::from_mass(mass);
    }

    /// Random ideal with up to `max_gens` generators in n variables,
    /// exponents up to `max_exp`.
    MonomialIdeal random_ideal(std::size_t n, std::size_t max_gens, Exponent max_exp) {
        const auto count = static_cast<std::size_t>(pick(1, static_cast<int>(max_gens)));
        std::vector<Monomial> gens;
        for (std::size_t g = 0; g < count; ++g) {
            std::vector<Exponent> e(n);
            for (auto& x : e) {
                x = static_cast<Exponent>(pick(0, static_cast<int>(max_exp)));
            }
            gens.emplace_back(std::move(e));
        }
        return minimalize(n, std::move(gens));
    }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testing_support
