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

/// \file blocks.hpp
/// \brief Building-block synthesis by conjugation.
///
/// A block is realized as R kappa R^-1: the routing circuit R sends the
/// block's elements, in cycle order, to the top k values of the state space,
/// kappa applies the block's cycle pattern to those values, and R^-1 sends
/// them back. Values outside the block pass through unchanged whatever R
/// does to them.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "revsyn/block_type.hpp"
#include "revsyn/circuit.hpp"
#include "revsyn/cost.hpp"
#include "revsyn/errors.hpp"
#include "revsyn/netlist.hpp"
#include "revsyn/peephole.hpp"
#include "revsyn/permutation.hpp"
#include "revsyn/transform_synth.hpp"

namespace revsyn {

/// One or two disjoint cycles forming a library block on `n` lines. Cycles
/// are kept in `block_lengths` order.
struct block_instance {
    block_type type = block_type::s3;
    std::vector<cycle> cycles;
    uint32_t n = 0;

    static block_instance make(block_type t, std::vector<cycle> cycles, uint32_t n) {
        auto const lengths = block_lengths(t);
        if (cycles.size() != lengths.size()) throw domain_error("wrong number of cycles for the block");
        // longer cycle first; equal lengths put the smaller minimum first,
        // so a pair names the same block in either order
        if (cycles.size() == 2) {
            auto const lowest = [](cycle const& c) {
                return *std::min_element(c.elements().begin(), c.elements().end());
            };
            if (cycles[0].length() != lengths[0] ||
                (cycles[0].length() == cycles[1].length() && lowest(cycles[1]) < lowest(cycles[0]))) {
                std::swap(cycles[0], cycles[1]);
            }
        }
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            if (cycles[i].length() != lengths[i]) throw domain_error("cycle lengths do not match the block");
        }
        if (cycles.size() == 2 && !cycles[0].disjoint(cycles[1])) {
            throw domain_error("block cycles must be disjoint");
        }
        if (n == 0 || n > max_lines) throw domain_error("line count must be in [1, 32]");
        uint64_t const space = uint64_t{1} << n;
        if (space < block_element_count(t)) throw domain_error("block does not fit on the lines");
        for (auto const& c : cycles) {
            if (c.max_element() >= space) throw domain_error("block element out of range");
        }
        return block_instance{t, std::move(cycles), n};
    }

    /// Elements in cycle order, first cycle first.
    std::vector<uint32_t> elements() const {
        std::vector<uint32_t> out;
        for (auto const& c : cycles) out.insert(out.end(), c.elements().begin(), c.elements().end());
        return out;
    }

    permutation as_permutation(uint32_t cap = default_bit_cap) const {
        return cycle_product(cycles, n, cap);
    }
};

/// The top k values 2^n - k, ..., 2^n - 1, k being the block's element count.
inline std::vector<uint32_t> canonical_targets(block_type t, uint32_t n) {
    std::size_t const k = block_element_count(t);
    if (n == 0 || n > max_lines || (uint64_t{1} << n) < k) {
        throw domain_error("block " + std::string(to_string(t)) + " does not fit on " +
                           std::to_string(n) + " lines");
    }
    uint64_t const top = uint64_t{1} << n;
    std::vector<uint32_t> out;
    for (uint64_t v = top - k; v < top; ++v) out.push_back(static_cast<uint32_t>(v));
    return out;
}

/// The block's cycle pattern laid over `canonical_targets`.
inline std::vector<cycle> canonical_cycles(block_type t, uint32_t n) {
    auto const targets = canonical_targets(t, n);
    std::vector<cycle> out;
    std::size_t at = 0;
    for (std::size_t len : block_lengths(t)) {
        out.emplace_back(std::vector<uint32_t>(targets.begin() + static_cast<std::ptrdiff_t>(at),
                                               targets.begin() + static_cast<std::ptrdiff_t>(at + len)));
        at += len;
    }
    return out;
}

inline permutation canonical_permutation(block_type t, uint32_t n, uint32_t cap = default_bit_cap) {
    return cycle_product(canonical_cycles(t, n), n, cap);
}

namespace detail {

/// Greedy bit-fixing router. Sources are placed one at a time; a value
/// already at its target must not be touched by any later gate.
class router {
   public:
    router(std::vector<uint32_t> sources, uint32_t n) : n_(n), cur_(std::move(sources)), out_(n) {}

    void place(std::size_t j, uint32_t t) {
        // direct bit-by-bit moves almost always exist; search only when blocked
        while (cur_[j] != t) {
            auto const m = cheapest_direct_move(cur_[j], t);
            if (!m) break;
            emit(*m);
        }
        if (cur_[j] == t) {
            placed_.push_back(t);
            return;
        }
        if (auto path = cheapest_path(cur_[j], t)) {
            for (auto const& m : *path) emit(m);
        } else {
            transpose(cur_[j], t);
        }
        placed_.push_back(t);
    }

    circuit take() { return std::move(out_); }

   private:
    uint32_t line_mask() const { return static_cast<uint32_t>((uint64_t{1} << n_) - 1); }

    void emit(gate const& g) {
        out_.add(g);
        for (auto& v : cur_) v = apply_gate(v, g);
    }

    /// A gate flipping `target` whose controls match `value` on every
    /// control line; lines in `negated` are controlled on 0 by way of NOT
    /// gates on both sides.
    struct move {
        uint32_t controls = 0;
        uint32_t negated = 0;
        uint32_t target = 0;
    };

    uint64_t move_cost(move const& m) const {
        return mct_cost(static_cast<uint32_t>(std::popcount(m.controls)), n_) +
               2 * static_cast<uint64_t>(std::popcount(m.negated));
    }

    void emit(move const& m) {
        for (uint32_t z = m.negated; z; z &= z - 1) emit(gate::not_gate(static_cast<uint32_t>(std::countr_zero(z))));
        emit(gate{m.controls, m.target});
        for (uint32_t z = m.negated; z; z &= z - 1) emit(gate::not_gate(static_cast<uint32_t>(std::countr_zero(z))));
    }

    /// Controls that tell v apart from every placed value, picked greedily
    /// (most placed values separated first, positive literals on ties).
    /// None when a placed value differs from v in bit b only.
    std::optional<move> move_for(uint32_t v, uint32_t b) const {
        uint32_t const others = line_mask() & ~(uint32_t{1} << b);
        auto& open = scratch_;
        open.clear();
        for (uint32_t w : placed_) {
            uint32_t const s = (v ^ w) & others;
            if (s == 0) return std::nullopt;
            open.push_back(s);
        }
        uint32_t c = 0;
        while (!open.empty()) {
            uint32_t best_bit = 0;
            std::size_t best_hits = 0;
            bool best_positive = false;
            for (uint32_t rest = others & ~c; rest; rest &= rest - 1) {
                uint32_t const bit = rest & (~rest + 1);
                auto const hits = static_cast<std::size_t>(
                    std::count_if(open.begin(), open.end(), [&](uint32_t s) { return s & bit; }));
                bool const positive = (v & bit) != 0;
                if (hits > best_hits || (hits == best_hits && hits > 0 && positive && !best_positive)) {
                    best_hits = hits;
                    best_bit = bit;
                    best_positive = positive;
                }
            }
            c |= best_bit;
            std::erase_if(open, [&](uint32_t s) { return s & best_bit; });
        }
        return move{c, c & ~v, b};
    }

    std::optional<move> cheapest_direct_move(uint32_t v, uint32_t t) const {
        std::optional<move> best;
        uint64_t best_cost = 0;
        for (uint32_t diff = v ^ t; diff; diff &= diff - 1) {
            auto const m = move_for(v, static_cast<uint32_t>(std::countr_zero(diff)));
            if (!m) continue;
            uint64_t const cost = move_cost(*m);
            if (!best || cost < best_cost) {
                best = m;
                best_cost = cost;
            }
        }
        return best;
    }

    /// Weighted A* over single-bit moves of the current value, each one
    /// leaving every placed value alone. Gives up after a bounded number of
    /// expansions.
    std::optional<std::vector<move>> cheapest_path(uint32_t from, uint32_t to) const {
        constexpr std::size_t expansion_limit = std::size_t{1} << 12;
        std::unordered_map<uint32_t, std::pair<uint64_t, move>> reached;  // cost so far, last move
        using entry = std::pair<uint64_t, uint32_t>;
        std::priority_queue<entry, std::vector<entry>, std::greater<>> open;
        auto const estimate = [&](uint32_t v) { return 16 * static_cast<uint64_t>(std::popcount(v ^ to)); };
        reached[from] = {0, move{}};
        open.push({estimate(from), from});
        std::size_t expanded = 0;
        while (!open.empty()) {
            auto const [f, v] = open.top();
            open.pop();
            uint64_t const d = reached[v].first;
            if (f != d + estimate(v)) continue;  // stale
            if (v == to) break;
            if (++expanded > expansion_limit) return std::nullopt;
            for (uint32_t b = 0; b < n_; ++b) {
                auto const m = move_for(v, b);
                if (!m) continue;
                uint32_t const u = v ^ (uint32_t{1} << b);
                uint64_t const nd = d + move_cost(*m);
                auto const it = reached.find(u);
                if (it != reached.end() && it->second.first <= nd) continue;
                reached[u] = {nd, *m};
                open.push({nd + estimate(u), u});
            }
        }
        if (!reached.contains(to)) return std::nullopt;
        std::vector<move> path;
        for (uint32_t u = to; u != from;) {
            move const m = reached[u].second;
            path.push_back(m);
            u ^= uint32_t{1} << m.target;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    /// Exact transposition (v t) as a chain of single-point swaps along a
    /// bit path, each one a fully controlled gate between NOT sandwiches.
    void transpose(uint32_t v, uint32_t t) {
        std::vector<std::vector<gate>> swaps;
        uint32_t w = v;
        for (uint32_t diff = v ^ t; diff; diff &= diff - 1) {
            uint32_t const b = static_cast<uint32_t>(std::countr_zero(diff));
            uint32_t const others = line_mask() & ~(uint32_t{1} << b);
            std::vector<gate> s;
            for (uint32_t z = others & ~w; z; z &= z - 1) {
                s.push_back(gate::not_gate(static_cast<uint32_t>(std::countr_zero(z))));
            }
            std::size_t const nots = s.size();
            s.push_back(gate{others, b});
            for (std::size_t i = 0; i < nots; ++i) s.push_back(s[i]);
            swaps.push_back(std::move(s));
            w ^= uint32_t{1} << b;
        }
        for (auto const& s : swaps) {
            for (auto const& g : s) emit(g);
        }
        for (std::size_t i = swaps.size() - 1; i-- > 0;) {
            for (auto const& g : swaps[i]) emit(g);
        }
    }

    uint32_t n_;
    std::vector<uint32_t> cur_;
    std::vector<uint32_t> placed_;
    circuit out_;
    mutable std::vector<uint32_t> scratch_;
};

inline void check_values(std::vector<uint32_t> const& values, uint32_t n, char const* what) {
    uint64_t const space = uint64_t{1} << n;
    std::vector<uint32_t> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw domain_error(std::string(what) + " values must be distinct");
    }
    if (!sorted.empty() && sorted.back() >= space) throw domain_error(std::string(what) + " value out of range");
}

}  // namespace detail

namespace detail {

inline circuit route_greedy(std::vector<uint32_t> const& sources, std::vector<uint32_t> const& targets,
                            uint32_t n) {
    // values with few ones are rarely a superset of a control set, so they
    // are placed first; the all-ones value goes last
    std::vector<std::size_t> order(sources.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::popcount(targets[a]) < std::popcount(targets[b]);
    });
    router r(sources, n);
    for (std::size_t j : order) r.place(j, targets[j]);
    return r.take();
}

}  // namespace detail

/// Circuit sending sources[i] to targets[i]; other values go wherever the
/// gates take them. Both directions are tried: routing targets back to the
/// sources and inverting is often cheaper, since dense values make poor
/// fixed points but good moving ones.
inline circuit route(std::vector<uint32_t> const& sources, std::vector<uint32_t> const& targets,
                     uint32_t n) {
    if (sources.size() != targets.size()) throw length_mismatch("sources and targets differ in length");
    if (n == 0 || n > max_lines) throw domain_error("line count must be in [1, 32]");
    detail::check_values(sources, n, "source");
    detail::check_values(targets, n, "target");

    auto forward = peephole_optimize(detail::route_greedy(sources, targets, n));
    auto backward = peephole_optimize(invert(detail::route_greedy(targets, sources, n)));
    return circuit_cost(backward) < circuit_cost(forward) ? backward : forward;
}

namespace detail {

/// The top values of 2^n all carry ones on lines w..n-1, so a circuit for
/// the canonical pattern on w lines lifts to n lines by controlling every
/// gate on those lines as well.
inline circuit lift_kappa(circuit const& base, uint32_t n) {
    uint32_t const w = base.lines();
    uint32_t const high = static_cast<uint32_t>(((uint64_t{1} << n) - 1) & ~((uint64_t{1} << w) - 1));
    circuit out(n);
    for (auto const& g : base.gates()) out.add(gate{g.controls | high, g.target});
    return out;
}

/// Double transpositions (p q)(r s), as indices into the canonical targets
/// plus two spare values, whose left-to-right product is the block pattern.
inline std::vector<std::array<std::size_t, 4>> double_transpositions(block_type t) {
    // k and k + 1 name spare values outside the block
    switch (t) {
        case block_type::p22: return {{0, 1, 2, 3}};
        case block_type::s3: return {{0, 1, 3, 4}, {0, 2, 3, 4}};
        case block_type::p33: return {{0, 1, 3, 4}, {0, 2, 3, 5}};
        case block_type::p42: return {{0, 1, 2, 3}, {0, 2, 4, 5}};
        case block_type::p44: return {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 2, 4, 6}};
        case block_type::s5: return {{0, 1, 2, 4}, {0, 2, 3, 4}};
        case block_type::p55: return {{0, 1, 2, 4}, {0, 2, 3, 4}, {5, 6, 7, 9}, {5, 7, 8, 9}};
    }
    return {};
}

/// The pattern as a product of conjugated copies of the single gate that
/// swaps 2^n-4 with 2^n-3 and 2^n-2 with 2^n-1. Every gate of the lifted
/// form can need n-1 controls, which this form avoids.
inline std::optional<circuit> kappa_by_double_transpositions(block_type t, uint32_t n) {
    std::size_t const k = block_element_count(t);
    auto values = canonical_targets(t, n);
    uint64_t const space = uint64_t{1} << n;
    if (space >= k + 2) {
        values.push_back(static_cast<uint32_t>(space - k - 1));
        values.push_back(static_cast<uint32_t>(space - k - 2));
    } else if (t == block_type::s3) {
        return std::nullopt;
    }

    auto const top4 = canonical_targets(block_type::p22, n);
    gate const swap_top{static_cast<uint32_t>((space - 1) & ~uint64_t{3}), 0};
    circuit out(n);
    for (auto const& d : double_transpositions(t)) {
        auto const r = route({values[d[0]], values[d[1]], values[d[2]], values[d[3]]}, top4, n);
        out.append(r);
        out.add(swap_top);
        out.append(invert(r));
    }
    return peephole_optimize(out);
}

inline circuit generate_kappa(block_type t, uint32_t n) {
    std::size_t const k = block_element_count(t);
    uint32_t w = 1;
    while ((uint64_t{1} << w) < k) ++w;
    std::optional<circuit> best;
    uint64_t best_cost = 0;
    for (uint32_t width = w; width <= std::min(n, w + 2); ++width) {
        auto base = peephole_optimize(mini_transform_synth(canonical_permutation(t, width)));
        auto lifted = lift_kappa(base, n);
        uint64_t const cost = circuit_cost(lifted);
        if (!best || cost < best_cost) {
            best = std::move(lifted);
            best_cost = cost;
        }
    }
    if (t != block_type::p22) {
        if (auto alt = kappa_by_double_transpositions(t, n); alt && circuit_cost(*alt) < best_cost) {
            best = std::move(alt);
        }
    }
    return *best;
}

}  // namespace detail

/// Per-(block, n) store of kappa circuits. Reads are shared, inserts are
/// exclusive; a second thread generating the same entry is harmless since
/// generation is deterministic. With a directory, entries are also kept on
/// disk as netlists.
class kappa_cache {
   public:
    kappa_cache() = default;
    explicit kappa_cache(std::filesystem::path directory) : dir_(std::move(directory)) {}

    circuit get(block_type t, uint32_t n) {
        auto const key = std::pair{t, n};
        {
            std::shared_lock lock(mu_);
            if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        }
        auto c = load(t, n);
        if (!c) {
            c = detail::generate_kappa(t, n);
            store(t, n, *c);
        }
        std::unique_lock lock(mu_);
        return entries_.try_emplace(key, std::move(*c)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return entries_.size();
    }

    std::optional<std::filesystem::path> const& directory() const noexcept { return dir_; }

   private:
    std::filesystem::path file_for(block_type t, uint32_t n) const {
        return *dir_ / ("kappa-" + std::string(to_string(t)) + "-" + std::to_string(n) + ".real");
    }

    std::optional<circuit> load(block_type t, uint32_t n) const {
        if (!dir_) return std::nullopt;
        std::ifstream in(file_for(t, n));
        if (!in) return std::nullopt;
        std::stringstream text;
        text << in.rdbuf();
        try {
            auto c = parse_netlist(text.str());
            if (c.lines() != n) return std::nullopt;
            // a stale or foreign file is regenerated rather than trusted
            if (n <= 16 && !(simulate(c, 16) == canonical_permutation(t, n, 16))) return std::nullopt;
            return c;
        } catch (error const&) {
            return std::nullopt;
        }
    }

    void store(block_type t, uint32_t n, circuit const& c) const {
        if (!dir_) return;
        std::error_code ec;
        std::filesystem::create_directories(*dir_, ec);
        auto const path = file_for(t, n);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) return;
            out << write_netlist(c);
        }
        std::filesystem::rename(tmp, path, ec);
    }

    mutable std::shared_mutex mu_;
    std::map<std::pair<block_type, uint32_t>, circuit> entries_;
    std::optional<std::filesystem::path> dir_;
};

inline kappa_cache& default_kappa_cache() {
    static kappa_cache cache;
    return cache;
}

/// Circuit realizing exactly the block's pattern on its canonical targets.
inline circuit kappa(block_type t, uint32_t n, kappa_cache& cache = default_kappa_cache(),
                     uint32_t cap = default_bit_cap) {
    if (n > cap) throw cap_exceeded("kappa requested for " + std::to_string(n) + " lines");
    canonical_targets(t, n);  // range check
    return cache.get(t, n);
}

inline circuit synth_block(block_instance const& b, kappa_cache& cache = default_kappa_cache()) {
    auto const r = route(b.elements(), canonical_targets(b.type, b.n), b.n);
    circuit out(b.n);
    out.append(r);
    out.append(kappa(b.type, b.n, cache, max_lines));
    out.append(invert(r));
    return out;
}

struct pair_weight_result {
    uint64_t cost = 0;
    std::pair<std::size_t, std::size_t> rotations{0, 0};
    std::size_t candidates = 0;
};

/// Cheapest post-peephole cost over every rotation of each cycle. Rotations
/// refer to the cycles as passed in.
inline pair_weight_result pair_weight(cycle const& c1, std::optional<cycle> const& c2, block_type t,
                                      uint32_t n, kappa_cache& cache = default_kappa_cache()) {
    auto const expected = block_for(c1.length(), c2 ? std::optional{c2->length()} : std::nullopt);
    if (expected != t) throw domain_error("cycles do not form a " + std::string(to_string(t)) + " block");
    if (!c2) {
        pair_weight_result best;
        for (std::size_t i = 0; i < c1.length(); ++i) {
            auto const b = block_instance::make(t, {c1.rotated(i)}, n);
            uint64_t const cost = circuit_cost(peephole_optimize(synth_block(b, cache)));
            if (best.candidates == 0 || cost < best.cost) best.cost = cost, best.rotations = {i, 0};
            ++best.candidates;
        }
        return best;
    }

    // fixed member order keeps the weight symmetric in its arguments
    auto const lowest = [](cycle const& c) {
        return *std::min_element(c.elements().begin(), c.elements().end());
    };
    bool swapped = false;
    if (c1.length() != c2->length()) swapped = c1.length() < c2->length();
    else swapped = lowest(*c2) < lowest(c1);
    cycle const& a = swapped ? *c2 : c1;
    cycle const& b = swapped ? c1 : *c2;

    pair_weight_result best;
    for (std::size_t i = 0; i < a.length(); ++i) {
        for (std::size_t j = 0; j < b.length(); ++j) {
            auto const blk = block_instance::make(t, {a.rotated(i), b.rotated(j)}, n);
            uint64_t const cost = circuit_cost(peephole_optimize(synth_block(blk, cache)));
            if (best.candidates == 0 || cost < best.cost) best.cost = cost, best.rotations = {i, j};
            ++best.candidates;
        }
    }
    if (swapped) std::swap(best.rotations.first, best.rotations.second);
    return best;
}

}  // namespace revsyn
