#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "algrel/errors.hpp"
#include "algrel/monomial.hpp"
#include "algrel/mvt.hpp"
#include "algrel/parallel.hpp"
#include "algrel/systems.hpp"

namespace algrel {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Independent components, each described by its survival function
/// p_i(a) = P(state_i >= a) for a = 0..M_i.
class ProbabilityModel {
public:
    ProbabilityModel() = default;

    static ProbabilityModel from_survival(std::vector<std::vector<double>> survival) {
        for (std::size_t i = 0; i < survival.size(); ++i) {
            const auto& s = survival[i];
            const std::string who = "component " + std::to_string(i + 1);
            if (s.size() < 2) {
                throw ValidationError(who + ": survival table needs entries for levels 0 and 1 at least");
            }
            if (s[0] != 1.0) {
                throw ValidationError(who + ": survival at level 0 must be exactly 1");
            }
            for (std::size_t a = 0; a < s.size(); ++a) {
                if (!(s[a] >= 0.0 && s[a] <= 1.0)) {
                    throw ValidationError(who + ": survival probabilities must lie in [0, 1]");
                }
                if (a > 0 && s[a] > s[a - 1]) {
                    throw ValidationError(who + ": survival function must be nonincreasing");
                }
            }
        }
        ProbabilityModel out;
        out.survival_ = std::move(survival);
        return out;
    }

    static ProbabilityModel from_mass(const std::vector<std::vector<double>>& mass) {
        std::vector<std::vector<double>> survival;
        survival.reserve(mass.size());
        for (std::size_t i = 0; i < mass.size(); ++i) {
            const auto& p = mass[i];
            const std::string who = "component " + std::to_string(i + 1);
            if (p.size() < 2) {
                throw ValidationError(who + ": mass function needs entries for levels 0 and 1 at least");
            }
            CompensatedSum total;
            for (double v : p) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw ValidationError(who + ": probabilities must lie in [0, 1]");
                }
                total.add(v);
            }
            if (std::abs(total.value() - 1.0) > 1e-9) {
                throw ValidationError(who + ": mass function sums to " + std::to_string(total.value()));
            }
            std::vector<double> s(p.size());
            CompensatedSum tail;
            for (std::size_t a = p.size(); a-- > 1;) {
                tail.add(p[a]);
                s[a] = std::min(1.0, tail.value());
            }
            s[0] = 1.0;
            survival.push_back(std::move(s));
        }
        return from_survival(std::move(survival));
    }

    std::size_t num_components() const noexcept { return survival_.size(); }
    Level cap(std::size_t i) const { return static_cast<Level>(survival_[i].size() - 1); }

    std::vector<Level> caps() const {
        std::vector<Level> out;
        for (std::size_t i = 0; i < survival_.size(); ++i) {
            out.push_back(cap(i));
        }
        return out;
    }

    /// P(state_i >= a); zero above the component's cap.
    double survival(std::size_t i, Exponent a) const {
        const auto& s = survival_[i];
        return a < s.size() ? s[a] : 0.0;
    }

    /// P(state_i = a).
    double mass(std::size_t i, Exponent a) const { return survival(i, a) - survival(i, a + 1); }

    const std::vector<std::vector<double>>& survival_table() const noexcept { return survival_; }

private:
    std::vector<std::vector<double>> survival_;
};

inline double weight(std::span<const Exponent> mu, const ProbabilityModel& model) {
    double w = 1.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] != 0) {
            w *= model.survival(i, mu[i]);
        }
    }
    return w;
}

/// Probability of the event "every component i is at level >= mu_i".
inline double weight(const Monomial& mu, const ProbabilityModel& model) {
    detail::require_same_size(mu.size(), model.num_components(), "weight");
    return weight(mu.exponents(), model);
}

/// Truncations of the alternating numerator sum.  partial_sums[t-1] holds
/// s_t = sum_{d<t} (-1)^d S_d, with S_d the total weight of the dimension-d
/// terms; odd t gives upper bounds u_t, even t lower bounds l_t.
struct BoundSequence {
    std::vector<double> dimension_totals;
    std::vector<double> partial_sums;
    double exact = 0.0;

    static bool is_upper(std::size_t t) { return t % 2 == 1; }
    static std::string label(std::size_t t) { return (is_upper(t) ? "u" : "l") + std::to_string(t); }
};

namespace detail {

inline BoundSequence finish_bounds(const std::vector<CompensatedSum>& totals) {
    BoundSequence out;
    CompensatedSum running;
    for (std::size_t d = 0; d < totals.size(); ++d) {
        const double s = totals[d].value();
        out.dimension_totals.push_back(s);
        running.add(d % 2 == 0 ? s : -s);
        out.partial_sums.push_back(running.value());
    }
    out.exact = out.partial_sums.empty() ? 0.0 : out.partial_sums.back();
    return out;
}

inline void check_model(std::size_t num_vars, const ProbabilityModel& model) {
    if (num_vars != model.num_components()) {
        throw DimensionError("probability model has " + std::to_string(model.num_components()) +
                             " components, numerator has " + std::to_string(num_vars) + " variables");
    }
}

}  // namespace detail

inline BoundSequence evaluate(const HilbertNumerator& numerator, const ProbabilityModel& model) {
    detail::check_model(numerator.num_vars, model);
    std::vector<CompensatedSum> totals(numerator.by_dimension.size());
    for (std::size_t d = 0; d < numerator.by_dimension.size(); ++d) {
        for (const auto& mu : numerator.by_dimension[d]) {
            totals[d].add(weight(mu.exponents(), model));
        }
    }
    return detail::finish_bounds(totals);
}

/// Same ladder, computed while walking the Mayer-Vietoris tree instead of
/// storing the numerator.
inline BoundSequence evaluate(const MonomialIdeal& ideal, const ProbabilityModel& model,
                              const MvtOptions& options = {}) {
    detail::check_model(ideal.num_vars(), model);
    std::vector<CompensatedSum> totals;
    if (ideal.is_zero()) {
        return detail::finish_bounds(totals);
    }
    walk_mvt(
        ideal,
        [&](const MvEvent& e) {
            if (totals.size() <= e.dimension) {
                totals.resize(e.dimension + 1);
            }
            totals[e.dimension].add(weight(e.multidegree, model));
        },
        options);
    return detail::finish_bounds(totals);
}

/// Reliability from a cancelled coefficient map.
inline double evaluate(const std::map<Monomial, std::int64_t>& coefficients, const ProbabilityModel& model) {
    CompensatedSum total;
    for (const auto& [mu, c] : coefficients) {
        detail::require_same_size(mu.size(), model.num_components(), "evaluate");
        total.add(static_cast<double>(c) * weight(mu.exponents(), model));
    }
    return total.value();
}

struct LevelReliability {
    Level level = 0;
    double at_least = 0.0;  // R_{S,j} = P(phi >= j)
    double exactly = 0.0;   // r_{S,j} = P(phi == j)
};

inline void check_model_fits(const SystemSpec& spec, const ProbabilityModel& model) {
    if (model.num_components() != spec.num_components()) {
        throw DimensionError("probability model has " + std::to_string(model.num_components()) +
                             " components, system has " + std::to_string(spec.num_components()));
    }
    const auto caps = spec.component_caps();
    for (std::size_t i = 0; i < caps.size(); ++i) {
        if (model.cap(i) != caps[i]) {
            throw ValidationError("component " + std::to_string(i + 1) + ": probability table covers levels 0.." +
                                  std::to_string(model.cap(i)) + " but the component cap is " +
                                  std::to_string(caps[i]));
        }
    }
}

struct EvaluationOptions {
    std::size_t threads = 1;
    MvtOptions mvt;
};

/// R_{S,j} and r_{S,j} for j = 0..M, with R_{S,0} = 1 and R_{S,M+1} = 0.
inline std::vector<LevelReliability> level_reliabilities(const SystemSpec& spec, const ProbabilityModel& model,
                                                         const EvaluationOptions& options = {}) {
    check_model_fits(spec, model);
    const Level top = spec.max_level();
    const auto at_least = parallel_map(top, options.threads, [&](std::size_t idx) {
        const auto j = static_cast<Level>(idx + 1);
        return evaluate(build_reliability_ideal(spec, j), model, options.mvt).exact;
    });
    std::vector<LevelReliability> out(top + 1);
    for (Level j = 0; j <= top; ++j) {
        out[j].level = j;
        out[j].at_least = j == 0 ? 1.0 : at_least[j - 1];
    }
    for (Level j = 0; j <= top; ++j) {
        const double next = j == top ? 0.0 : out[j + 1].at_least;
        out[j].exactly = out[j].at_least - next;
    }
    return out;
}

struct ClassicBounds {
    double path_bound = 0.0;  // l'_phi: best single minimal path
    double cut_bound = 0.0;   // l**_phi: product over minimal cuts
};

/// Path and cut lower bounds.  For a cut z, the factor is the probability
/// that some component exceeds it: 1 - prod_i (1 - P(x_i >= z_i + 1)).
inline ClassicBounds classic_lower_bounds(const SystemSpec& spec, const ProbabilityModel& model, Level j,
                                          std::uint64_t budget = kDefaultLatticeBudget) {
    check_model_fits(spec, model);
    ClassicBounds out;
    for (const auto& path : lower_boundary_points(spec, j)) {
        double p = 1.0;
        for (std::size_t i = 0; i < path.size(); ++i) {
            p *= model.survival(i, path.states[i]);
        }
        out.path_bound = std::max(out.path_bound, p);
    }
    double product = 1.0;
    for (const auto& cut : minimal_cuts(spec, j, budget)) {
        double none = 1.0;
        for (std::size_t i = 0; i < cut.size(); ++i) {
            none *= 1.0 - model.survival(i, cut.states[i] + 1);
        }
        product *= 1.0 - none;
    }
    out.cut_bound = product;
    return out;
}

}  // namespace algrel
