// Copyright 2026 The revsyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file assignment.hpp
/// \brief Pairing elementary cycles into library blocks.
///
/// Every factor of every chosen decomposition becomes a node. Nodes fall
/// into three classes by length: {2, 4}, {3} and {5}. Two nodes of a class
/// may share a block when they are disjoint and can be brought next to each
/// other without moving a factor past one it overlaps. Nodes of the {3}
/// and {5} classes may also stay alone (S3 and S5 blocks); 2- and 4-cycles
/// must be paired. A minimum-weight cover of each class picks the blocks.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "revsyn/block_type.hpp"
#include "revsyn/blocks.hpp"
#include "revsyn/decomposition.hpp"
#include "revsyn/errors.hpp"
#include "revsyn/permutation.hpp"

namespace revsyn {

enum class length_class { two_four, three, five };

inline std::optional<length_class> class_of(std::size_t length) {
    switch (length) {
        case 2:
        case 4: return length_class::two_four;
        case 3: return length_class::three;
        case 5: return length_class::five;
        default: return std::nullopt;
    }
}

inline bool allows_single(length_class c) { return c != length_class::two_four; }

/// A factor of one input cycle's decomposition, stored in canonical
/// rotation (the mapping does not depend on the rotation).
struct pairing_node {
    cycle factor;
    std::size_t origin = 0;    ///< index of the input cycle
    std::size_t position = 0;  ///< index in that cycle's factor list
    uint32_t level = 1;
    length_class cls = length_class::five;
};

struct pairing_edge {
    std::size_t a = 0;
    std::size_t b = 0;
    uint64_t weight = 0;
    /// Rotations of the canonical factors of `a` and `b`.
    std::pair<std::size_t, std::size_t> rotations{0, 0};
};

struct pairing_graph {
    uint32_t n = 0;
    std::vector<pairing_node> nodes;
    std::vector<pairing_edge> edges;
    /// Cost of the node as a block of its own, for the {3} and {5} classes.
    std::vector<std::optional<uint64_t>> single;
    std::vector<std::size_t> single_rotation;
};

struct matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> singles;
    uint64_t weight = 0;
};

/// Decomposition holding a cycle of length <= 5 as its only factor.
inline decomposition as_single_factor(cycle const& c) {
    return decomposition{{c}, {1}, {false}};
}

/// Thread-safe memo of `pair_weight` keyed by line count and the canonical
/// cycles, so repeated factors across candidate decompositions are
/// synthesized once.
class pair_weight_cache {
   public:
    pair_weight_result get(cycle const& a, std::optional<cycle> const& b, block_type t, uint32_t n,
                           kappa_cache& kc) {
        std::vector<uint32_t> key{n, static_cast<uint32_t>(t), static_cast<uint32_t>(a.length())};
        key.insert(key.end(), a.elements().begin(), a.elements().end());
        if (b) key.insert(key.end(), b->elements().begin(), b->elements().end());
        {
            std::lock_guard lock(mu_);
            if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        }
        auto const r = pair_weight(a, b, t, n, kc);
        std::lock_guard lock(mu_);
        entries_.emplace(std::move(key), r);
        return r;
    }

    std::size_t size() const {
        std::lock_guard lock(mu_);
        return entries_.size();
    }

   private:
    mutable std::mutex mu_;
    std::map<std::vector<uint32_t>, pair_weight_result> entries_;
};

struct graph_options {
    /// Classes larger than this get edges to nearby nodes only.
    std::size_t dense_limit = 20;
    /// Neighbours considered on each side in sparse classes.
    std::size_t window = 8;
    /// Only edges between consecutive nodes of a class (baseline pairing).
    bool consecutive_only = false;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

namespace detail {

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn const& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    std::size_t const workers = std::min<std::size_t>(threads, count);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
}

/// Same-origin nodes i < j (by position) can share a block when the earlier
/// one is disjoint from the later one and from every factor in between.
inline bool order_compatible(std::vector<std::vector<std::size_t>> const& by_origin,
                             std::vector<pairing_node> const& nodes, std::size_t a, std::size_t b) {
    auto const& na = nodes[a];
    auto const& nb = nodes[b];
    if (!na.factor.disjoint(nb.factor)) return false;
    if (na.origin != nb.origin) return true;
    auto const& first = na.position < nb.position ? na : nb;
    auto const& last = na.position < nb.position ? nb : na;
    auto const& seq = by_origin[first.origin];
    for (std::size_t p = first.position + 1; p < last.position; ++p) {
        if (!first.factor.disjoint(nodes[seq[p]].factor)) return false;
    }
    return true;
}

}  // namespace detail

/// Nodes for every factor and weighted edges for every compatible pair.
inline pairing_graph build_graph(std::vector<decomposition> const& decomps, uint32_t n,
                                 graph_options const& opt = {},
                                 kappa_cache& kc = default_kappa_cache(),
                                 pair_weight_cache* weights = nullptr) {
    pairing_graph g;
    g.n = n;
    std::vector<std::vector<std::size_t>> by_origin(decomps.size());
    for (std::size_t o = 0; o < decomps.size(); ++o) {
        auto const& d = decomps[o];
        for (std::size_t p = 0; p < d.factors.size(); ++p) {
            auto const cls = class_of(d.factors[p].length());
            if (!cls) throw domain_error("factor " + d.factors[p].to_string() + " is not a block cycle");
            by_origin[o].push_back(g.nodes.size());
            g.nodes.push_back({d.factors[p].canonical(), o, p, d.levels[p], *cls});
        }
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
            if (g.nodes[i].origin != g.nodes[j].origin && !g.nodes[i].factor.disjoint(g.nodes[j].factor)) {
                throw domain_error("factors of different input cycles overlap");
            }
        }
    }

    auto const weigh = [&](cycle const& a, std::optional<cycle> const& b, block_type t) {
        return weights ? weights->get(a, b, t, n, kc) : pair_weight(a, b, t, n, kc);
    };

    // candidate edges per class, in (origin, position) order
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (auto cls : {length_class::two_four, length_class::three, length_class::five}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            if (g.nodes[i].cls == cls) members.push_back(i);
        }
        bool const dense = !opt.consecutive_only && members.size() <= opt.dense_limit;
        for (std::size_t x = 0; x < members.size(); ++x) {
            std::size_t found = 0;
            for (std::size_t y = x + 1; y < members.size(); ++y) {
                std::size_t const a = members[x], b = members[y];
                if (!block_for(g.nodes[a].factor.length(), g.nodes[b].factor.length())) continue;
                if (!detail::order_compatible(by_origin, g.nodes, a, b)) continue;
                candidates.emplace_back(a, b);
                ++found;
                if (opt.consecutive_only ? found >= 1 : (!dense && found >= opt.window)) break;
            }
        }
    }

    g.edges.resize(candidates.size());
    detail::parallel_for(candidates.size(), opt.threads, [&](std::size_t e) {
        auto const [a, b] = candidates[e];
        auto const t = *block_for(g.nodes[a].factor.length(), g.nodes[b].factor.length());
        auto const r = weigh(g.nodes[a].factor, g.nodes[b].factor, t);
        g.edges[e] = {a, b, r.cost, r.rotations};
    });

    g.single.assign(g.nodes.size(), std::nullopt);
    g.single_rotation.assign(g.nodes.size(), 0);
    detail::parallel_for(g.nodes.size(), opt.threads, [&](std::size_t i) {
        if (!allows_single(g.nodes[i].cls)) return;
        auto const t = *block_for(g.nodes[i].factor.length());
        auto const r = weigh(g.nodes[i].factor, std::nullopt, t);
        g.single[i] = r.cost;
        g.single_rotation[i] = r.rotations.first;
    });
    return g;
}

namespace detail {

inline constexpr uint64_t no_edge = std::numeric_limits<uint64_t>::max();

/// Local view of one class: weights between members and single costs.
struct class_problem {
    std::vector<std::size_t> members;
    std::vector<std::vector<uint64_t>> w;  ///< no_edge when not allowed
    std::vector<uint64_t> single;          ///< no_edge when not allowed
};

/// Optimal cover of `subset` (indices into the problem) by pairs and
/// singles, by recursion over the lowest uncovered member with memo.
inline std::optional<std::pair<uint64_t, std::vector<std::pair<std::size_t, std::size_t>>>>
exact_cover(class_problem const& p, std::vector<std::size_t> const& subset) {
    std::size_t const m = subset.size();
    if (m > 24) throw too_large("exact matching is limited to 24 nodes");
    std::size_t const full = (std::size_t{1} << m) - 1;
    std::vector<uint64_t> best(full + 1, no_edge);
    std::vector<uint8_t> choice(full + 1, 0);  // partner index + 1, or 0 for single
    best[full] = 0;
    for (std::size_t mask = full; mask-- > 0;) {
        std::size_t const i = static_cast<std::size_t>(std::countr_one(mask));
        std::size_t const with_i = mask | (std::size_t{1} << i);
        auto const ui = subset[i];
        if (p.single[ui] != no_edge && best[with_i] != no_edge) {
            uint64_t const c = best[with_i] + p.single[ui];
            if (c < best[mask]) {
                best[mask] = c;
                choice[mask] = 0;
            }
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            if (mask >> j & 1u) continue;
            uint64_t const wij = p.w[ui][subset[j]];
            std::size_t const next = with_i | (std::size_t{1} << j);
            if (wij == no_edge || best[next] == no_edge) continue;
            uint64_t const c = best[next] + wij;
            if (c < best[mask]) {
                best[mask] = c;
                choice[mask] = static_cast<uint8_t>(j + 1);
            }
        }
    }
    if (best[0] == no_edge) return std::nullopt;
    std::vector<std::pair<std::size_t, std::size_t>> units;  // (i, i) marks a single
    for (std::size_t mask = 0; mask != full;) {
        std::size_t const i = static_cast<std::size_t>(std::countr_one(mask));
        if (choice[mask] == 0) {
            units.emplace_back(subset[i], subset[i]);
            mask |= std::size_t{1} << i;
        } else {
            std::size_t const j = choice[mask] - 1u;
            units.emplace_back(subset[i], subset[j]);
            mask |= (std::size_t{1} << i) | (std::size_t{1} << j);
        }
    }
    return std::pair{best[0], std::move(units)};
}

inline uint64_t unit_cost(class_problem const& p, std::pair<std::size_t, std::size_t> u) {
    return u.first == u.second ? p.single[u.first] : p.w[u.first][u.second];
}

/// Greedy cover followed by exchanges between any two units until no
/// exchange lowers the total.
/// Grows `mate` (m for a free node) along augmenting paths, contracting
/// odd cycles, until no free node can be matched. Returns true when every
/// node is matched.
inline bool complete_matching(class_problem const& p, std::vector<std::size_t>& mate) {
    std::size_t const m = p.members.size();
    std::size_t const none = m;
    std::vector<std::vector<std::size_t>> adj(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j && p.w[i][j] != no_edge) adj[i].push_back(j);
        }
    }
    std::vector<std::size_t> parent(m), base(m);
    std::vector<bool> in_queue(m), in_blossom(m);
    std::deque<std::size_t> queue;

    auto const lca = [&](std::size_t a, std::size_t b) {
        std::vector<bool> seen(m, false);
        for (;;) {
            a = base[a];
            seen[a] = true;
            if (mate[a] == none) break;
            a = parent[mate[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b]) return b;
            b = parent[mate[b]];
        }
    };
    auto const mark_path = [&](std::size_t v, std::size_t b, std::size_t child) {
        while (base[v] != b) {
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    };
    auto const find_path = [&](std::size_t root) -> std::size_t {
        std::fill(parent.begin(), parent.end(), none);
        std::fill(in_queue.begin(), in_queue.end(), false);
        for (std::size_t i = 0; i < m; ++i) base[i] = i;
        queue.assign(1, root);
        in_queue[root] = true;
        while (!queue.empty()) {
            std::size_t const v = queue.front();
            queue.pop_front();
            for (std::size_t u : adj[v]) {
                if (base[v] == base[u] || mate[v] == u) continue;
                if (u == root || (mate[u] != none && parent[mate[u]] != none)) {
                    std::size_t const b = lca(v, u);
                    std::fill(in_blossom.begin(), in_blossom.end(), false);
                    mark_path(v, b, u);
                    mark_path(u, b, v);
                    for (std::size_t i = 0; i < m; ++i) {
                        if (!in_blossom[base[i]]) continue;
                        base[i] = b;
                        if (!in_queue[i]) in_queue[i] = true, queue.push_back(i);
                    }
                } else if (parent[u] == none) {
                    parent[u] = v;
                    if (mate[u] == none) return u;
                    in_queue[mate[u]] = true;
                    queue.push_back(mate[u]);
                }
            }
        }
        return none;
    };

    bool complete = true;
    for (std::size_t root = 0; root < m; ++root) {
        if (mate[root] != none) continue;
        std::size_t u = find_path(root);
        if (u == none) {
            complete = false;
            continue;
        }
        while (u != none) {
            std::size_t const pv = parent[u], next = mate[pv];
            mate[u] = pv;
            mate[pv] = u;
            u = next;
        }
    }
    return complete;
}

inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>> greedy_cover(class_problem const& p) {
    std::size_t const m = p.members.size();
    struct option {
        int64_t gain;
        std::size_t i, j;
    };
    std::vector<option> opts;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (p.w[i][j] == no_edge) continue;
            bool const singles = p.single[i] != no_edge && p.single[j] != no_edge;
            // without singles any pair beats leaving a node uncovered
            int64_t const gain = singles ? static_cast<int64_t>(p.single[i] + p.single[j]) -
                                               static_cast<int64_t>(p.w[i][j])
                                         : std::numeric_limits<int32_t>::max() -
                                               static_cast<int64_t>(p.w[i][j]);
            if (gain > 0) opts.push_back({gain, i, j});
        }
    }
    std::stable_sort(opts.begin(), opts.end(), [](option const& x, option const& y) { return x.gain > y.gain; });
    std::vector<bool> used(m, false);
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (auto const& o : opts) {
        if (used[o.i] || used[o.j]) continue;
        used[o.i] = used[o.j] = true;
        units.emplace_back(o.i, o.j);
    }
    if (std::any_of(p.single.begin(), p.single.end(), [](uint64_t s) { return s == no_edge; })) {
        // nodes without a single block must all be paired
        std::vector<std::size_t> mate(m, m);
        for (auto [i, j] : units) mate[i] = j, mate[j] = i;
        if (!complete_matching(p, mate)) {
            for (std::size_t i = 0; i < m; ++i) {
                if (mate[i] == m && p.single[i] == no_edge) return std::nullopt;
            }
        }
        units.clear();
        std::fill(used.begin(), used.end(), false);
        for (std::size_t i = 0; i < m; ++i) {
            if (mate[i] != m && i < mate[i]) units.emplace_back(i, mate[i]), used[i] = used[mate[i]] = true;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (used[i]) continue;
        if (p.single[i] == no_edge) return std::nullopt;
        units.emplace_back(i, i);
    }

    // each accepted exchange lowers the total, so this terminates; the cap
    // only bounds the time spent
    for (std::size_t round = 0; round < 4 * m + 16; ++round) {
        bool improved = false;
        for (std::size_t x = 0; x < units.size() && !improved; ++x) {
            for (std::size_t y = x + 1; y < units.size() && !improved; ++y) {
                std::vector<std::size_t> subset{units[x].first};
                if (units[x].second != units[x].first) subset.push_back(units[x].second);
                subset.push_back(units[y].first);
                if (units[y].second != units[y].first) subset.push_back(units[y].second);
                uint64_t const now = unit_cost(p, units[x]) + unit_cost(p, units[y]);
                auto const alt = exact_cover(p, subset);
                if (!alt || alt->first >= now) continue;
                units.erase(units.begin() + static_cast<std::ptrdiff_t>(y));
                units.erase(units.begin() + static_cast<std::ptrdiff_t>(x));
                units.insert(units.end(), alt->second.begin(), alt->second.end());
                improved = true;
            }
        }
        if (!improved) break;
    }
    return units;
}

}  // namespace detail

/// Minimum-weight cover of every class by pairs along graph edges and, in
/// the {3} and {5} classes, singles. Exact up to 20 nodes per class.
inline matching min_weight_matching(pairing_graph const& g, std::size_t exact_limit = 20) {
    std::map<std::pair<std::size_t, std::size_t>, uint64_t> edge_weight;
    for (auto const& e : g.edges) {
        auto key = std::minmax(e.a, e.b);
        auto [it, fresh] = edge_weight.emplace(key, e.weight);
        if (!fresh) it->second = std::min(it->second, e.weight);
    }

    matching out;
    for (auto cls : {length_class::two_four, length_class::three, length_class::five}) {
        detail::class_problem p;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            if (g.nodes[i].cls == cls) p.members.push_back(i);
        }
        std::size_t const m = p.members.size();
        if (m == 0) continue;
        if (!allows_single(cls) && m % 2 == 1) {
            throw infeasible("odd number of 2- and 4-cycles cannot be paired");
        }
        p.w.assign(m, std::vector<uint64_t>(m, detail::no_edge));
        p.single.assign(m, detail::no_edge);
        for (std::size_t x = 0; x < m; ++x) {
            if (allows_single(cls) && x < g.single.size() && g.single[p.members[x]]) {
                p.single[x] = *g.single[p.members[x]];
            }
            for (std::size_t y = x + 1; y < m; ++y) {
                auto const it = edge_weight.find(std::minmax(p.members[x], p.members[y]));
                if (it != edge_weight.end()) p.w[x][y] = p.w[y][x] = it->second;
            }
        }

        std::vector<std::pair<std::size_t, std::size_t>> units;
        if (m <= exact_limit) {
            std::vector<std::size_t> all(m);
            for (std::size_t x = 0; x < m; ++x) all[x] = x;
            auto const r = detail::exact_cover(p, all);
            if (!r) throw infeasible("no perfect cover of a cycle class");
            units = r->second;
        } else {
            auto r = detail::greedy_cover(p);
            if (!r) throw infeasible("no perfect cover of a cycle class");
            units = std::move(*r);
        }
        for (auto [x, y] : units) {
            out.weight += detail::unit_cost(p, {x, y});
            if (x == y) out.singles.push_back(p.members[x]);
            else out.pairs.emplace_back(std::min(p.members[x], p.members[y]), std::max(p.members[x], p.members[y]));
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    std::sort(out.singles.begin(), out.singles.end());
    return out;
}

/// Baseline cover: within each class, in (origin, position) order, each
/// node is paired with the next free node it has an edge to; the rest stay
/// single.
inline matching consecutive_matching(pairing_graph const& g) {
    std::map<std::pair<std::size_t, std::size_t>, uint64_t> edge_weight;
    for (auto const& e : g.edges) edge_weight.emplace(std::minmax(e.a, e.b), e.weight);
    matching out;
    std::vector<bool> used(g.nodes.size(), false);
    for (auto cls : {length_class::two_four, length_class::three, length_class::five}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            if (g.nodes[i].cls == cls) members.push_back(i);
        }
        for (std::size_t x = 0; x < members.size(); ++x) {
            std::size_t const a = members[x];
            if (used[a]) continue;
            for (std::size_t y = x + 1; y < members.size(); ++y) {
                std::size_t const b = members[y];
                if (used[b]) continue;
                auto const it = edge_weight.find(std::minmax(a, b));
                if (it == edge_weight.end()) continue;
                used[a] = used[b] = true;
                out.pairs.emplace_back(a, b);
                out.weight += it->second;
                break;
            }
            if (used[a]) continue;
            if (!g.single[a]) throw infeasible("a 2- or 4-cycle was left without a partner");
            used[a] = true;
            out.singles.push_back(a);
            out.weight += *g.single[a];
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    std::sort(out.singles.begin(), out.singles.end());
    return out;
}

namespace detail {

/// Blocks of a matching with the dependencies between them: a factor must
/// follow every earlier factor of its input cycle that it overlaps.
struct unit_graph {
    std::vector<std::vector<std::size_t>> members;  // node indices per unit
    std::vector<std::vector<std::size_t>> succ;
    std::vector<std::size_t> unit_of;
};

inline unit_graph units_of(pairing_graph const& g, matching const& m) {
    unit_graph u;
    u.unit_of.assign(g.nodes.size(), std::numeric_limits<std::size_t>::max());
    auto const claim = [&](std::size_t node, std::size_t unit) {
        if (node >= g.nodes.size() || u.unit_of[node] != std::numeric_limits<std::size_t>::max()) {
            throw order_violation("matching does not cover every factor exactly once");
        }
        u.unit_of[node] = unit;
    };
    for (auto [a, b] : m.pairs) {
        claim(a, u.members.size());
        claim(b, u.members.size());
        u.members.push_back({a, b});
    }
    for (auto s : m.singles) {
        claim(s, u.members.size());
        u.members.push_back({s});
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (u.unit_of[i] == std::numeric_limits<std::size_t>::max()) {
            throw order_violation("matching does not cover every factor exactly once");
        }
    }
    u.succ.assign(u.members.size(), {});
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            auto const& a = g.nodes[i];
            auto const& b = g.nodes[j];
            if (a.origin != b.origin || a.position >= b.position) continue;
            if (a.factor.disjoint(b.factor)) continue;
            if (u.unit_of[i] == u.unit_of[j]) throw order_violation("a block holds overlapping factors");
            u.succ[u.unit_of[i]].push_back(u.unit_of[j]);
        }
    }
    for (auto& s : u.succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return u;
}

/// Units on some dependency cycle, or empty when the unit graph is acyclic.
inline std::vector<std::size_t> find_cycle(unit_graph const& u) {
    std::size_t const k = u.members.size();
    std::vector<uint8_t> state(k, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> parent(k, k);
    for (std::size_t root = 0; root < k; ++root) {
        if (state[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == u.succ[v].size()) {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            std::size_t const w = u.succ[v][next++];
            if (state[w] == 1) {
                std::vector<std::size_t> cyc{w};
                for (std::size_t x = v; x != w; x = parent[x]) cyc.push_back(x);
                return cyc;
            }
            if (state[w] == 0) {
                state[w] = 1;
                parent[w] = v;
                stack.emplace_back(w, 0);
            }
        }
    }
    return {};
}

}  // namespace detail

/// Splits pairs until the blocks can be ordered. Two pairs can each be
/// legal yet demand opposite orders of their input cycles; the pair on such
/// a cycle that is cheapest to split is turned into two singles. Returns
/// the number of pairs split.
inline std::size_t resolve_order_conflicts(pairing_graph const& g, matching& m) {
    std::map<std::pair<std::size_t, std::size_t>, uint64_t> edge_weight;
    for (auto const& e : g.edges) edge_weight.emplace(std::minmax(e.a, e.b), e.weight);
    std::size_t splits = 0;
    for (;;) {
        auto const u = detail::units_of(g, m);
        auto const cyc = detail::find_cycle(u);
        if (cyc.empty()) return splits;
        std::optional<std::size_t> pick;
        int64_t pick_penalty = 0;
        for (std::size_t unit : cyc) {
            if (u.members[unit].size() != 2) continue;
            auto const a = u.members[unit][0], b = u.members[unit][1];
            if (!g.single[a] || !g.single[b]) continue;
            int64_t const penalty = static_cast<int64_t>(*g.single[a] + *g.single[b]) -
                                    static_cast<int64_t>(edge_weight.at(std::minmax(a, b)));
            if (!pick || penalty < pick_penalty) {
                pick = unit;
                pick_penalty = penalty;
            }
        }
        if (!pick) throw order_violation("blocks cannot be ordered and no pair can be split");
        auto const a = u.members[*pick][0], b = u.members[*pick][1];
        std::erase(m.pairs, std::pair{std::min(a, b), std::max(a, b)});
        m.singles.push_back(a);
        m.singles.push_back(b);
        std::sort(m.singles.begin(), m.singles.end());
        m.weight = static_cast<uint64_t>(static_cast<int64_t>(m.weight) + pick_penalty);
        ++splits;
    }
}

/// Orders the blocks of `m` so that the left-to-right product of their
/// cycles is the product of the input cycles. Among ready blocks, the one
/// whose latest factor has the lowest (level, input cycle, position) comes
/// first.
inline std::vector<block_instance> schedule(pairing_graph const& g, matching const& m) {
    auto const u = detail::units_of(g, m);
    std::size_t const k = u.members.size();
    std::vector<std::size_t> indegree(k, 0);
    for (auto const& s : u.succ) {
        for (auto t : s) ++indegree[t];
    }
    auto const key = [&](std::size_t unit) {
        std::tuple<uint32_t, std::size_t, std::size_t> best{0, 0, 0};
        for (auto node : u.members[unit]) {
            auto const& nd = g.nodes[node];
            best = std::max(best, std::tuple{nd.level, nd.origin, nd.position});
        }
        return std::tuple_cat(best, std::tuple{unit});
    };
    using entry = decltype(key(0));
    std::priority_queue<entry, std::vector<entry>, std::greater<>> ready;
    for (std::size_t i = 0; i < k; ++i) {
        if (indegree[i] == 0) ready.push(key(i));
    }

    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> rotations;
    for (auto const& e : g.edges) rotations.emplace(std::pair{e.a, e.b}, e.rotations);

    std::vector<block_instance> out;
    while (!ready.empty()) {
        std::size_t const unit = std::get<3>(ready.top());
        ready.pop();
        auto const& mem = u.members[unit];
        if (mem.size() == 1) {
            auto const& nd = g.nodes[mem[0]];
            std::size_t const r = mem[0] < g.single_rotation.size() ? g.single_rotation[mem[0]] : 0;
            out.push_back(block_instance::make(*block_for(nd.factor.length()), {nd.factor.rotated(r)}, g.n));
        } else {
            auto a = mem[0], b = mem[1];
            std::pair<std::size_t, std::size_t> rot{0, 0};
            if (auto it = rotations.find({a, b}); it != rotations.end()) {
                rot = it->second;
            } else if (auto it2 = rotations.find({b, a}); it2 != rotations.end()) {
                rot = {it2->second.second, it2->second.first};
            }
            auto const& na = g.nodes[a];
            auto const& nb = g.nodes[b];
            out.push_back(block_instance::make(*block_for(na.factor.length(), nb.factor.length()),
                                               {na.factor.rotated(rot.first), nb.factor.rotated(rot.second)},
                                               g.n));
        }
        for (auto t : u.succ[unit]) {
            if (--indegree[t] == 0) ready.push(key(t));
        }
    }
    if (out.size() != k) throw order_violation("blocks have cyclic ordering constraints");
    return out;
}

}  // namespace revsyn
