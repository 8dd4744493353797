#pragma once

// Brute-force reference implementations.  Everything here works straight
// from the definitions (full lattice scans, subset expansions) and shares no
// code with the ideal builders, the tree engine or the bound evaluation.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "algrel/errors.hpp"
#include "algrel/monomial.hpp"
#include "algrel/reliability.hpp"
#include "algrel/systems.hpp"

namespace algrel::oracle {

inline constexpr std::size_t kMaxInclusionExclusionGenerators = 20;

namespace detail {

inline std::uint64_t checked_lattice(const std::vector<Level>& caps, std::uint64_t budget) {
    std::uint64_t size = 1;
    for (Level c : caps) {
        size *= std::uint64_t{c} + 1;
        if (size > budget) {
            throw ResourceError("oracle: state lattice too large", size, budget);
        }
    }
    return size;
}

// Odometer over all states of the lattice.
template <class Fn>
void for_each_state(const std::vector<Level>& caps, Fn&& fn) {
    std::vector<Level> x(caps.size(), 0);
    while (true) {
        fn(x);
        std::size_t i = 0;
        while (i < x.size() && x[i] == caps[i]) {
            x[i] = 0;
            ++i;
        }
        if (i == x.size()) {
            return;
        }
        ++x[i];
    }
}

}  // namespace detail

/// P(phi(X) >= j) by summing the joint mass of every state.
inline double brute_force_reliability(const SystemSpec& spec, const ProbabilityModel& model, Level j,
                                      std::uint64_t budget = kDefaultLatticeBudget) {
    check_model_fits(spec, model);
    const auto caps = spec.component_caps();
    detail::checked_lattice(caps, budget);
    CompensatedSum total;
    detail::for_each_state(caps, [&](const std::vector<Level>& x) {
        if (structure_function(spec, StateVector(x)) < j) {
            return;
        }
        double p = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            p *= model.mass(i, x[i]);
        }
        total.add(p);
    });
    return total.value();
}

/// Minimal j-working states: phi(x) >= j and every single decrement drops
/// below j.
inline std::vector<StateVector> brute_force_generators(const SystemSpec& spec, Level j,
                                                       std::uint64_t budget = kDefaultLatticeBudget) {
    const auto caps = spec.component_caps();
    detail::checked_lattice(caps, budget);
    std::vector<StateVector> out;
    detail::for_each_state(caps, [&](const std::vector<Level>& x) {
        if (structure_function(spec, StateVector(x)) < j) {
            return;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) {
                continue;
            }
            auto y = x;
            --y[i];
            if (structure_function(spec, StateVector(y)) >= j) {
                return;
            }
        }
        out.emplace_back(x);
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Maximal states with phi(x) <= j: every single increment that stays
/// within the caps pushes phi above j.
inline std::vector<StateVector> brute_force_upper_boundary(const SystemSpec& spec, Level j,
                                                           std::uint64_t budget = kDefaultLatticeBudget) {
    const auto caps = spec.component_caps();
    detail::checked_lattice(caps, budget);
    std::vector<StateVector> out;
    detail::for_each_state(caps, [&](const std::vector<Level>& x) {
        if (structure_function(spec, StateVector(x)) > j) {
            return;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == caps[i]) {
                continue;
            }
            auto y = x;
            ++y[i];
            if (structure_function(spec, StateVector(y)) <= j) {
                return;
            }
        }
        out.emplace_back(x);
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Hilbert numerator by full inclusion-exclusion over the generators:
/// sum over nonempty subsets T of (-1)^{|T|+1} lcm(T), cancelled.
inline std::map<Monomial, std::int64_t> inclusion_exclusion_numerator(const MonomialIdeal& ideal) {
    const auto& gens = ideal.generators();
    if (gens.size() > kMaxInclusionExclusionGenerators) {
        throw ResourceError("inclusion_exclusion_numerator: too many generators", gens.size(),
                            kMaxInclusionExclusionGenerators);
    }
    const std::size_t n = ideal.num_vars();
    std::map<Monomial, std::int64_t> out;
    std::vector<Exponent> running(n, 0);

    auto expand = [&](auto&& self, std::size_t from, std::size_t chosen) -> void {
        for (std::size_t t = from; t < gens.size(); ++t) {
            const std::vector<Exponent> saved = running;
            for (std::size_t i = 0; i < n; ++i) {
                running[i] = running[i] > gens[t][i] ? running[i] : gens[t][i];
            }
            out[Monomial(running)] += (chosen % 2 == 0) ? 1 : -1;
            self(self, t + 1, chosen + 1);
            running = saved;
        }
    };
    expand(expand, 0, 0);
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

}  // namespace algrel::oracle
