#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "algrel/monomial.hpp"
#include "algrel/mvt.hpp"

namespace algrel {

using BigInt = boost::multiprecision::cpp_int;

/// C(p, l, a, b): ordered l-tuples with entries in [a, b] summing to p.
struct CompositionQuery {
    std::int64_t total = 0;
    std::int64_t parts = 0;
    std::int64_t min_part = 0;
    std::int64_t max_part = 0;

    friend auto operator<=>(const CompositionQuery&, const CompositionQuery&) = default;
};

/// Counts restricted compositions with a table over (parts used, running
/// total).  An empty part range (a > b) admits only the empty composition.
inline BigInt restricted_compositions(const CompositionQuery& q) {
    if (q.parts < 0 || q.total < 0) {
        return 0;
    }
    if (q.parts == 0) {
        return q.total == 0 ? 1 : 0;
    }
    if (q.min_part > q.max_part || q.max_part < 0) {
        return 0;
    }
    const std::int64_t lo = std::max<std::int64_t>(q.min_part, 0);
    const std::int64_t shifted = q.total - q.parts * lo;
    if (shifted < 0) {
        return 0;
    }
    const std::int64_t width = q.max_part - lo;
    if (shifted > q.parts * width) {
        return 0;
    }
    const auto target = static_cast<std::size_t>(shifted);
    std::vector<BigInt> ways(target + 1, 0);
    ways[0] = 1;
    std::vector<BigInt> prefix(target + 2);
    for (std::int64_t t = 0; t < q.parts; ++t) {
        prefix[0] = 0;
        for (std::size_t s = 0; s <= target; ++s) {
            prefix[s + 1] = prefix[s] + ways[s];
        }
        for (std::size_t s = 0; s <= target; ++s) {
            const std::size_t from =
                s >= static_cast<std::size_t>(width) ? s - static_cast<std::size_t>(width) : 0;
            ways[s] = prefix[s + 1] - prefix[from];
        }
    }
    return ways[target];
}

/// Memoizing front end; safe for concurrent use.
class CompositionCounter {
public:
    BigInt operator()(const CompositionQuery& q) const {
        {
            std::shared_lock lock(mutex_);
            if (const auto it = memo_.find(q); it != memo_.end()) {
                return it->second;
            }
        }
        BigInt value = restricted_compositions(q);
        std::unique_lock lock(mutex_);
        memo_.emplace(q, value);
        return value;
    }

    BigInt operator()(std::int64_t total, std::int64_t parts, std::int64_t min_part,
                      std::int64_t max_part) const {
        return (*this)(CompositionQuery{total, parts, min_part, max_part});
    }

private:
    mutable std::shared_mutex mutex_;
    mutable std::map<CompositionQuery, BigInt> memo_;
};

inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt out = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

namespace detail {

// Calls fn(i, j, l, weight) for every block of generators of J^m_[n,k]
// that share maximum exponent i, distinguished variable j (1-based) and
// nonzero-prefix count l; weight is the number of such generators.
template <class Fn>
void for_each_generator_block(std::uint64_t m, std::uint64_t n, std::uint64_t k, const CompositionCounter& c,
                              Fn&& fn) {
    const auto kk = static_cast<std::int64_t>(k);
    const auto nn = static_cast<std::int64_t>(n);
    const auto top = static_cast<std::int64_t>(std::min(m, k));
    for (std::int64_t i = 0; i <= top; ++i) {
        for (std::int64_t j = 1; j <= nn; ++j) {
            for (std::int64_t l = 0; l <= j - 1; ++l) {
                BigInt weight = 0;
                for (std::int64_t p = 0; p <= kk - i; ++p) {
                    const BigInt head = c(p, l, 1, i - 1);
                    if (head == 0) {
                        continue;
                    }
                    weight += head * c(kk - i - p, nn - j, 0, i);
                }
                if (weight != 0) {
                    fn(i, j, l, weight * binomial(j - 1, l));
                }
            }
        }
    }
}

}  // namespace detail

/// Number of minimal generators N^m_[n,k] of the sum-threshold ideal,
/// summed block by block over (max exponent i, distinguished variable j,
/// prefix total p, nonzero prefix count l).  The exponent bound clamps i
/// to min(m, k).  k = 0 gives the unit ideal.
inline BigInt sum_threshold_generator_count(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
    if (k == 0) {
        return 1;
    }
    if (k > m * n) {
        return 0;
    }
    CompositionCounter c;
    BigInt total = 0;
    detail::for_each_generator_block(m, n, k, c, [&](auto, auto, auto, const BigInt& w) { total += w; });
    return total;
}

/// Graded Betti numbers beta_{d, k+d} of J^m_[n,k] for d = 0..n-1.
///
/// J^m_[n,k] has linear quotients: order the variables x_n > ... > x_1 and
/// the generators decreasingly in reverse lexicographic order.  The colon
/// ideal at a generator u is then generated by the variables x_t with t
/// after the first nonzero position p of u and u_t < m, so u contributes
/// binom(f, d) in dimension d, f being the size of that set.  Grouping the
/// generators by p, by a = u_p and by the number c of later exponents
/// equal to m gives
///   beta_d = sum binom(n-p, c) C(k-a-cm, n-p-c, 0, m-1) binom(n-p-c, d).
inline std::vector<BigInt> sum_threshold_betti(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
    std::vector<BigInt> out(n, 0);
    if (k == 0) {
        out[0] = 1;
        return out;
    }
    if (k > m * n) {
        return out;
    }
    CompositionCounter c;
    const auto nn = static_cast<std::int64_t>(n);
    const auto mm = static_cast<std::int64_t>(m);
    const auto kk = static_cast<std::int64_t>(k);
    for (std::int64_t p = 1; p <= nn; ++p) {
        const std::int64_t rest = nn - p;
        for (std::int64_t a = 1; a <= std::min(mm, kk); ++a) {
            for (std::int64_t full = 0; full <= rest; ++full) {
                const BigInt w = binomial(rest, full) * c(kk - a - full * mm, rest - full, 0, mm - 1);
                if (w == 0) {
                    continue;
                }
                for (std::int64_t d = 0; d <= rest - full; ++d) {
                    out[static_cast<std::size_t>(d)] += w * binomial(rest - full, d);
                }
            }
        }
    }
    return out;
}

/// A generator of J^m_[n,k] together with the data of its place in the
/// ordered listing.  Indices are 0-based.  free_set holds the variables
/// of the generator's colon ideal (see sum_threshold_betti).
struct OrderedGenerator {
    Monomial monomial;
    std::size_t distinguished_index = 0;
    Exponent distinguished_exponent = 0;
    std::size_t nonzero_prefix_count = 0;
    std::vector<std::size_t> free_set;
};

/// Generators of J^m_[n,k] grouped by maximum exponent i from m down, then
/// by distinguished variable j (the first variable reaching i) from x_1 to
/// x_n.  Within a block the order is lexicographic, larger first.
inline std::vector<OrderedGenerator> sum_threshold_ordered_generators(std::uint64_t m, std::uint64_t n,
                                                                      std::uint64_t k) {
    std::vector<OrderedGenerator> out;
    if (k > m * n) {
        return out;
    }
    if (k == 0) {
        // Unit ideal: principal, so no higher syzygies and an empty free set.
        OrderedGenerator g;
        g.monomial = Monomial(n);
        out.push_back(std::move(g));
        return out;
    }
    std::vector<Exponent> e(n, 0);
    for (std::uint64_t i = std::min(m, k); i >= 1; --i) {
        const auto cap = static_cast<Exponent>(i);
        for (std::size_t j = 0; j < n; ++j) {
            // Positions before j take values < i, j takes i, later ones <= i.
            auto fill = [&](auto&& self, std::size_t pos, std::uint64_t remaining) -> void {
                if (pos == n) {
                    if (remaining != 0) {
                        return;
                    }
                    OrderedGenerator g;
                    g.monomial = Monomial(e);
                    g.distinguished_index = j;
                    g.distinguished_exponent = cap;
                    std::size_t first = n;
                    for (std::size_t t = 0; t < n; ++t) {
                        if (e[t] > 0 && first == n) {
                            first = t;
                        }
                        if (t < j && e[t] > 0) {
                            ++g.nonzero_prefix_count;
                        }
                        if (first < t && e[t] < m) {
                            g.free_set.push_back(t);
                        }
                    }
                    out.push_back(std::move(g));
                    return;
                }
                if (pos == j) {
                    if (remaining < i) {
                        return;
                    }
                    e[pos] = cap;
                    self(self, pos + 1, remaining - i);
                    e[pos] = 0;
                    return;
                }
                const std::uint64_t bound = pos < j ? i - 1 : i;
                for (std::uint64_t v = std::min(bound, remaining) + 1; v-- > 0;) {
                    e[pos] = static_cast<Exponent>(v);
                    self(self, pos + 1, remaining - v);
                }
                e[pos] = 0;
            };
            fill(fill, 0, k);
        }
    }
    return out;
}

/// Multidegrees x^mu * prod_{t in sigma} x_t over the d-subsets sigma of
/// the generator's free set.
inline std::vector<Monomial> sum_threshold_multigraded_contributions(const OrderedGenerator& g, std::size_t d) {
    std::vector<Monomial> out;
    const auto& free = g.free_set;
    if (d > free.size()) {
        return out;
    }
    std::vector<std::size_t> pick(d);
    for (std::size_t t = 0; t < d; ++t) {
        pick[t] = t;
    }
    while (true) {
        std::vector<Exponent> e(g.monomial.exponents().begin(), g.monomial.exponents().end());
        for (std::size_t t : pick) {
            ++e[free[t]];
        }
        out.emplace_back(std::move(e));
        std::size_t t = d;
        while (t > 0 && pick[t - 1] == free.size() - d + (t - 1)) {
            --t;
        }
        if (t == 0) {
            break;
        }
        ++pick[t - 1];
        for (std::size_t u = t; u < d; ++u) {
            pick[u] = pick[u - 1] + 1;
        }
    }
    return out;
}

/// Hilbert numerator of J^m_[n,k] from the multigraded contributions of
/// its ordered generators (a minimal, k-linear resolution).
inline HilbertNumerator sum_threshold_numerator(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
    HilbertNumerator out;
    out.num_vars = n;
    const auto gens = sum_threshold_ordered_generators(m, n, k);
    if (gens.empty()) {
        return out;
    }
    out.by_dimension.resize(n);
    for (const auto& g : gens) {
        for (std::size_t d = 0; d <= g.free_set.size(); ++d) {
            auto terms = sum_threshold_multigraded_contributions(g, d);
            auto& bucket = out.by_dimension[d];
            bucket.insert(bucket.end(), std::make_move_iterator(terms.begin()),
                          std::make_move_iterator(terms.end()));
        }
    }
    while (!out.by_dimension.empty() && out.by_dimension.back().empty()) {
        out.by_dimension.pop_back();
    }
    return out;
}

}  // namespace algrel
