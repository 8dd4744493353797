#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "algrel/errors.hpp"
#include "algrel/monomial.hpp"

namespace algrel {

/// Node position in a Mayer-Vietoris tree: root 1, left child 2p, right
/// child 2p+1.  Positions grow one bit per level, so they are unbounded.
using TreePosition = boost::multiprecision::cpp_int;

/// Chooses the pivot among a node's generators (given in canonical order).
/// Returns an index into the span.
using PivotStrategy = std::function<std::size_t(std::span<const Monomial>)>;

struct MvtOptions {
    /// Positions are only needed by the compatibility criterion and for
    /// materialized trees; tracking them costs a big-integer per node.
    bool track_positions = false;
    /// Empty means "last generator in canonical order".
    PivotStrategy pivot;
};

/// One generator of a relevant node.  The generator becomes a pivot at
/// some node on the right spine below its relevant node; pivot_position is
/// that node.  Positions are null unless tracking is enabled.
struct MvEvent {
    std::size_t dimension;
    std::span<const Exponent> multidegree;
    std::uint64_t degree;
    const TreePosition* node_position;
    const TreePosition* pivot_position;
};

struct MvNode {
    TreePosition position;
    std::size_t dimension = 0;
    MonomialIdeal ideal;
    std::optional<Monomial> pivot;

    bool relevant() const { return position == 1 || (position & 1) == 0; }
};

/// Fully materialized tree; meant for inspection of small ideals.
struct MvTree {
    std::size_t num_vars = 0;
    std::vector<MvNode> nodes;  // depth-first order, root first

    std::vector<const MvNode*> relevant_nodes() const {
        std::vector<const MvNode*> out;
        for (const auto& node : nodes) {
            if (node.relevant()) {
                out.push_back(&node);
            }
        }
        return out;
    }
};

namespace detail {

// Generators stored contiguously, stride n.
struct FlatGens {
    std::size_t n = 0;
    std::vector<Exponent> data;
    std::vector<std::uint64_t> degree;

    std::size_t size() const { return degree.size(); }
    std::span<const Exponent> at(std::size_t i) const { return {data.data() + i * n, n}; }
};

inline bool flat_canonical_less(std::span<const Exponent> a, std::uint64_t da, std::span<const Exponent> b,
                                std::uint64_t db) {
    if (da != db) {
        return da < db;
    }
    return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
}

inline bool flat_divides(std::span<const Exponent> a, std::span<const Exponent> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

// Minimal generators of <lcm(h, pivot) : h in others>, canonical order.
inline FlatGens left_child(const FlatGens& node, const std::vector<std::size_t>& others,
                           std::span<const Exponent> pivot) {
    const std::size_t n = node.n;
    std::vector<Exponent> raw(others.size() * n);
    std::vector<std::uint64_t> raw_deg(others.size());
    for (std::size_t t = 0; t < others.size(); ++t) {
        const auto h = node.at(others[t]);
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Exponent e = std::max(h[i], pivot[i]);
            raw[t * n + i] = e;
            d += e;
        }
        raw_deg[t] = d;
    }
    auto view = [&](std::size_t t) { return std::span<const Exponent>(raw.data() + t * n, n); };

    std::vector<std::size_t> order(others.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return flat_canonical_less(view(a), raw_deg[a], view(b), raw_deg[b]);
    });

    FlatGens out;
    out.n = n;
    out.data.reserve(others.size() * n);
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const std::size_t t = order[idx];
        const auto cand = view(t);
        bool redundant = false;
        for (std::size_t k = out.size(); k-- > 0;) {
            // Equal multidegree means duplicate; smaller degree may divide.
            if (flat_divides(out.at(k), cand)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) {
            out.data.insert(out.data.end(), cand.begin(), cand.end());
            out.degree.push_back(raw_deg[t]);
        }
    }
    return out;
}

inline FlatGens flatten(const MonomialIdeal& ideal) {
    FlatGens out;
    out.n = ideal.num_vars();
    for (const auto& g : ideal.generators()) {
        out.data.insert(out.data.end(), g.exponents().begin(), g.exponents().end());
        out.degree.push_back(g.degree());
    }
    return out;
}

inline MonomialIdeal unflatten(const FlatGens& gens, const std::vector<std::size_t>& which) {
    std::vector<Monomial> out;
    out.reserve(which.size());
    for (std::size_t i : which) {
        const auto s = gens.at(i);
        out.emplace_back(std::vector<Exponent>(s.begin(), s.end()));
    }
    return minimalize(gens.n, std::move(out));
}

template <class OnEvent, class OnNode>
class MvtWalker {
public:
    MvtWalker(const MvtOptions& options, OnEvent& on_event, OnNode* on_node)
        : options_(options), on_event_(on_event), on_node_(on_node) {}

    // Walks the relevant node `node` together with its right spine.
    void walk(const FlatGens& node, std::size_t dimension, const TreePosition* position) {
        std::vector<std::size_t> remaining(node.size());
        std::iota(remaining.begin(), remaining.end(), std::size_t{0});

        const bool track = position != nullptr;
        TreePosition spine_pos;
        if (track) {
            spine_pos = *position;
        }

        while (!remaining.empty()) {
            const std::size_t pick = choose_pivot(node, remaining);
            const std::size_t pivot_index = remaining[pick];
            const auto pivot = node.at(pivot_index);

            if (on_node_ != nullptr) {
                (*on_node_)(spine_pos, dimension, node, remaining, pivot_index);
            }
            on_event_(MvEvent{dimension, pivot, node.degree[pivot_index], position,
                              track ? &spine_pos : nullptr});

            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
            if (remaining.empty()) {
                break;
            }
            const FlatGens child = left_child(node, remaining, pivot);
            if (track) {
                TreePosition child_pos = spine_pos * 2;
                walk(child, dimension + 1, &child_pos);
                spine_pos = spine_pos * 2 + 1;
            } else {
                walk(child, dimension + 1, nullptr);
            }
        }
    }

private:
    std::size_t choose_pivot(const FlatGens& node, const std::vector<std::size_t>& remaining) {
        if (!options_.pivot) {
            return remaining.size() - 1;
        }
        std::vector<Monomial> view;
        view.reserve(remaining.size());
        for (std::size_t i : remaining) {
            const auto s = node.at(i);
            view.emplace_back(std::vector<Exponent>(s.begin(), s.end()));
        }
        const std::size_t pick = options_.pivot(view);
        if (pick >= remaining.size()) {
            throw DomainError("pivot strategy returned an out-of-range index");
        }
        return pick;
    }

    const MvtOptions& options_;
    OnEvent& on_event_;
    OnNode* on_node_;
};

struct NoNodeCallback {
    void operator()(const TreePosition&, std::size_t, const FlatGens&, const std::vector<std::size_t>&,
                    std::size_t) {}
};

inline void require_nonzero(const MonomialIdeal& ideal) {
    if (ideal.is_zero()) {
        throw DomainError("Mayer-Vietoris tree of the zero ideal is undefined");
    }
}

}  // namespace detail

/// Streams the generators of every relevant node of the Mayer-Vietoris
/// tree of `ideal` to on_event, depth first.  Each node J = <f_1..f_r>
/// splits on its pivot f into the right child <f_1..f_r> \ f and the left
/// child (right child) ∩ <f>; generators are re-sorted canonically at
/// every node.
template <class OnEvent>
void walk_mvt(const MonomialIdeal& ideal, OnEvent&& on_event, const MvtOptions& options = {}) {
    detail::require_nonzero(ideal);
    const auto root = detail::flatten(ideal);
    detail::MvtWalker<std::remove_reference_t<OnEvent>, detail::NoNodeCallback> walker(options, on_event,
                                                                                       nullptr);
    if (options.track_positions) {
        const TreePosition one = 1;
        walker.walk(root, 0, &one);
    } else {
        walker.walk(root, 0, nullptr);
    }
}

/// Materializes every node of the tree, relevant or not.
inline MvTree build_mvt(const MonomialIdeal& ideal, const MvtOptions& options = {}) {
    detail::require_nonzero(ideal);
    MvTree tree;
    tree.num_vars = ideal.num_vars();
    auto on_node = [&](const TreePosition& pos, std::size_t dim, const detail::FlatGens& gens,
                       const std::vector<std::size_t>& remaining, std::size_t pivot_index) {
        MvNode node;
        node.position = pos;
        node.dimension = dim;
        node.ideal = detail::unflatten(gens, remaining);
        if (remaining.size() > 1) {
            const auto s = gens.at(pivot_index);
            node.pivot = Monomial(std::vector<Exponent>(s.begin(), s.end()));
        }
        tree.nodes.push_back(std::move(node));
    };
    auto ignore = [](const MvEvent&) {};
    MvtOptions tracked = options;
    tracked.track_positions = true;
    const auto root = detail::flatten(ideal);
    detail::MvtWalker<decltype(ignore), decltype(on_node)> walker(tracked, ignore, &on_node);
    const TreePosition one = 1;
    walker.walk(root, 0, &one);
    return tree;
}

// ---------------------------------------------------------------------------
// Hilbert series numerator

/// Numerator of the Hilbert series as the alternating sum over the
/// iterated mapping cone resolution: a term (mu, d) contributes
/// (-1)^d x^mu.  Terms are kept uncancelled, grouped by dimension.
struct HilbertNumerator {
    std::size_t num_vars = 0;
    std::vector<std::vector<Monomial>> by_dimension;

    std::size_t max_dimension() const { return by_dimension.empty() ? 0 : by_dimension.size() - 1; }

    std::size_t num_terms() const {
        std::size_t total = 0;
        for (const auto& d : by_dimension) {
            total += d.size();
        }
        return total;
    }

    /// Signed coefficient map after cancellation; zero coefficients dropped.
    std::map<Monomial, std::int64_t> coefficients() const {
        std::map<Monomial, std::int64_t> out;
        for (std::size_t d = 0; d < by_dimension.size(); ++d) {
            const std::int64_t sign = d % 2 == 0 ? 1 : -1;
            for (const auto& m : by_dimension[d]) {
                out[m] += sign;
            }
        }
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        return out;
    }
};

inline HilbertNumerator hilbert_numerator(const MonomialIdeal& ideal, const MvtOptions& options = {}) {
    HilbertNumerator out;
    out.num_vars = ideal.num_vars();
    if (ideal.is_zero()) {
        return out;
    }
    walk_mvt(
        ideal,
        [&](const MvEvent& e) {
            if (out.by_dimension.size() <= e.dimension) {
                out.by_dimension.resize(e.dimension + 1);
            }
            out.by_dimension[e.dimension].emplace_back(
                std::vector<Exponent>(e.multidegree.begin(), e.multidegree.end()));
        },
        options);
    return out;
}

inline HilbertNumerator hilbert_numerator(const MvTree& tree) {
    HilbertNumerator out;
    out.num_vars = tree.num_vars;
    for (const MvNode* node : tree.relevant_nodes()) {
        if (out.by_dimension.size() <= node->dimension) {
            out.by_dimension.resize(node->dimension + 1);
        }
        for (const auto& g : node->ideal.generators()) {
            out.by_dimension[node->dimension].push_back(g);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Betti number bounds

/// Multigraded Betti bounds read off a Mayer-Vietoris tree.
///
/// upper[d][mu] counts relevant-node generators of multidegree mu in
/// dimension d.  lower[d][mu] is the certified part of that count: all of
/// it when mu never shows up in two consecutive dimensions, otherwise (with
/// the compatibility criterion enabled) the generators that have no
/// compatible partner of the same multidegree one dimension up or down.
struct BettiSummary {
    std::size_t num_vars = 0;
    std::vector<std::map<Monomial, std::uint64_t>> upper;
    std::vector<std::map<Monomial, std::uint64_t>> lower;
    bool exact = false;

    /// Graded totals beta(d, degree).
    std::vector<std::map<std::uint64_t, std::uint64_t>> graded_upper() const { return graded(upper); }
    std::vector<std::map<std::uint64_t, std::uint64_t>> graded_lower() const { return graded(lower); }

    /// Total count per dimension (upper bound, exact when `exact`).
    std::vector<std::uint64_t> totals() const {
        std::vector<std::uint64_t> out(upper.size(), 0);
        for (std::size_t d = 0; d < upper.size(); ++d) {
            for (const auto& kv : upper[d]) {
                out[d] += kv.second;
            }
        }
        return out;
    }

    std::uint64_t upper_at(std::size_t d, const Monomial& mu) const { return lookup(upper, d, mu); }
    std::uint64_t lower_at(std::size_t d, const Monomial& mu) const { return lookup(lower, d, mu); }

private:
    static std::uint64_t lookup(const std::vector<std::map<Monomial, std::uint64_t>>& table, std::size_t d,
                                const Monomial& mu) {
        if (d >= table.size()) {
            return 0;
        }
        const auto it = table[d].find(mu);
        return it == table[d].end() ? 0 : it->second;
    }

    static std::vector<std::map<std::uint64_t, std::uint64_t>> graded(
        const std::vector<std::map<Monomial, std::uint64_t>>& table) {
        std::vector<std::map<std::uint64_t, std::uint64_t>> out(table.size());
        for (std::size_t d = 0; d < table.size(); ++d) {
            for (const auto& [mu, count] : table[d]) {
                if (count > 0) {
                    out[d][mu.degree()] += count;
                }
            }
        }
        return out;
    }
};

namespace detail {

// Path from the root as a string of '0' (left) and '1' (right).
inline std::string position_path(const TreePosition& pos) {
    const std::size_t bits = boost::multiprecision::msb(pos);
    std::string out(bits, '0');
    for (std::size_t i = 0; i < bits; ++i) {
        if (boost::multiprecision::bit_test(pos, bits - 1 - i)) {
            out[i] = '1';
        }
    }
    return out;
}

// True iff `high` (one dimension above `low`) sits in the left subtree of
// their first common ancestor and `low` in the right one.  The dimension
// offsets then agree automatically, which is the compatibility condition.
inline bool compatible(const std::string& high, const std::string& low) {
    std::size_t k = 0;
    while (k < high.size() && k < low.size() && high[k] == low[k]) {
        ++k;
    }
    if (k >= high.size() || k >= low.size()) {
        return false;
    }
    return high[k] == '0' && low[k] == '1';
}

}  // namespace detail

struct BettiOptions {
    /// Refine lower bounds with the compatible-node criterion.
    bool use_compatibility = false;
    MvtOptions mvt;
};

inline BettiSummary betti_bounds(const MonomialIdeal& ideal, const BettiOptions& options = {}) {
    BettiSummary out;
    out.num_vars = ideal.num_vars();
    if (ideal.is_zero()) {
        out.exact = true;
        return out;
    }

    struct Occurrences {
        std::map<std::size_t, std::uint64_t> per_dim;
        std::map<std::size_t, std::vector<std::string>> paths;  // compatibility only
    };
    std::unordered_map<Monomial, Occurrences, MonomialHash> seen;

    MvtOptions mvt = options.mvt;
    mvt.track_positions = mvt.track_positions || options.use_compatibility;
    walk_mvt(
        ideal,
        [&](const MvEvent& e) {
            auto& occ = seen[Monomial(std::vector<Exponent>(e.multidegree.begin(), e.multidegree.end()))];
            ++occ.per_dim[e.dimension];
            if (options.use_compatibility) {
                occ.paths[e.dimension].push_back(detail::position_path(*e.pivot_position));
            }
        },
        mvt);

    std::size_t max_dim = 0;
    for (const auto& [mu, occ] : seen) {
        max_dim = std::max(max_dim, occ.per_dim.rbegin()->first);
    }
    out.upper.resize(max_dim + 1);
    out.lower.resize(max_dim + 1);
    out.exact = true;

    for (const auto& [mu, occ] : seen) {
        bool consecutive = false;
        for (const auto& [d, count] : occ.per_dim) {
            if (occ.per_dim.count(d + 1) != 0) {
                consecutive = true;
            }
        }
        for (const auto& [d, count] : occ.per_dim) {
            out.upper[d][mu] = count;
            std::uint64_t certified = 0;
            if (!consecutive) {
                certified = count;
            } else if (options.use_compatibility) {
                const auto& mine = occ.paths.at(d);
                const auto up = occ.paths.find(d + 1);
                const auto down = d > 0 ? occ.paths.find(d - 1) : occ.paths.end();
                for (const auto& p : mine) {
                    bool paired = false;
                    if (up != occ.paths.end()) {
                        for (const auto& q : up->second) {
                            paired = paired || detail::compatible(q, p);
                        }
                    }
                    if (down != occ.paths.end()) {
                        for (const auto& q : down->second) {
                            paired = paired || detail::compatible(p, q);
                        }
                    }
                    certified += paired ? 0 : 1;
                }
            }
            if (certified > 0) {
                out.lower[d][mu] = certified;
            }
            if (certified != count) {
                out.exact = false;
            }
        }
    }
    return out;
}

}  // namespace algrel
