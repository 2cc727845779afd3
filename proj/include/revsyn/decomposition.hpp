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

/// \file decomposition.hpp
/// \brief Minimal 5-cycle decompositions of long cycles.
///
/// A cycle (b_1, ..., b_m) with m > 5 is split into q = floor(m/5) disjoint
/// runs (b_1..b_5)(b_6..b_10)... followed by the residual cycle
/// (b_{5q+1}, ..., b_m, b_1, b_6, ..., b_{5(q-1)+1}) of length m - 4q. The
/// left-to-right product of the runs and the residual is the input cycle.
/// The residual is split again until it is at most 5 long. Every rotation
/// of the input at every level gives one decomposition, so the total number
/// of decompositions is `ndcm(m)`.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "revsyn/counting.hpp"
#include "revsyn/permutation.hpp"

namespace revsyn {

/// Ordered factor list whose left-to-right product is the source cycle.
struct decomposition {
    std::vector<cycle> factors;
    /// 1 for runs detached from the source cycle, 2 for runs detached from the
    /// first residual, and so on. The final residual gets the next level.
    std::vector<uint32_t> levels;
    /// Set for detached runs; clear for the final residual.
    std::vector<bool> disjoint;

    std::size_t size() const noexcept { return factors.size(); }
    bool operator==(decomposition const&) const = default;
};

struct detached_level {
    std::vector<cycle> blocks;
    std::optional<cycle> residual;
};

inline detached_level detach_level(cycle const& c, std::size_t rotation) {
    std::size_t const m = c.length();
    if (m <= 5) throw domain_error("only cycles longer than 5 are detached");
    if (rotation >= m) throw domain_error("rotation out of range");
    auto const b = c.rotated(rotation);
    std::size_t const q = m / 5;

    detached_level out;
    for (std::size_t j = 0; j < q; ++j) {
        auto const e = b.elements().subspan(5 * j, 5);
        out.blocks.emplace_back(std::vector<uint32_t>(e.begin(), e.end()));
    }
    std::vector<uint32_t> rest;
    for (std::size_t i = 5 * q; i < m; ++i) rest.push_back(b[i]);
    for (std::size_t j = 0; j < q; ++j) rest.push_back(b[5 * j]);
    // m - 4q >= 2 whenever m > 5
    out.residual.emplace(std::move(rest));
    return out;
}

namespace detail {

template <class Fn>
bool decompose_rec(cycle const& c, uint32_t level, decomposition& prefix, Fn& fn) {
    if (c.length() <= 5) {
        prefix.factors.push_back(c);
        prefix.levels.push_back(level);
        prefix.disjoint.push_back(false);
        bool const go_on = fn(static_cast<decomposition const&>(prefix));
        prefix.factors.pop_back();
        prefix.levels.pop_back();
        prefix.disjoint.pop_back();
        return go_on;
    }
    for (std::size_t r = 0; r < c.length(); ++r) {
        auto lvl = detach_level(c, r);
        for (auto& blk : lvl.blocks) {
            prefix.factors.push_back(std::move(blk));
            prefix.levels.push_back(level);
            prefix.disjoint.push_back(true);
        }
        bool const go_on = decompose_rec(*lvl.residual, level + 1, prefix, fn);
        for (std::size_t j = 0; j < lvl.blocks.size(); ++j) {
            prefix.factors.pop_back();
            prefix.levels.pop_back();
            prefix.disjoint.pop_back();
        }
        if (!go_on) return false;
    }
    return true;
}

/// Sparse left-to-right product over the union of the factors' elements.
inline std::map<uint32_t, uint32_t> sparse_product(std::span<cycle const> factors) {
    std::map<uint32_t, uint32_t> image;
    for (auto const& f : factors) {
        for (uint32_t e : f.elements()) image.emplace(e, e);
    }
    std::map<uint32_t, uint32_t> source;
    for (auto [x, y] : image) source[y] = x;
    for (auto const& f : factors) {
        std::size_t const k = f.length();
        std::vector<uint32_t> moved(k);
        for (std::size_t i = 0; i < k; ++i) moved[i] = source[f[i]];
        for (std::size_t i = 0; i < k; ++i) {
            uint32_t const next = f[(i + 1) % k];
            image[moved[i]] = next;
            source[next] = moved[i];
        }
    }
    return image;
}

}  // namespace detail

/// Visits every decomposition of `c` in rotation order, depth first, until
/// `fn` returns false.
template <class Fn>
void foreach_decomposition(cycle const& c, Fn&& fn) {
    if (c.length() <= 5) throw domain_error("only cycles longer than 5 are decomposed");
    decomposition prefix;
    detail::decompose_rec(c, 1, prefix, fn);
}

/// The first `limit` decompositions of `c` (all of them without a limit).
inline std::vector<decomposition> enumerate_decompositions(cycle const& c,
                                                           std::optional<std::size_t> limit = {}) {
    std::vector<decomposition> out;
    if (limit && *limit == 0) {
        if (c.length() <= 5) throw domain_error("only cycles longer than 5 are decomposed");
        return out;
    }
    foreach_decomposition(c, [&](decomposition const& d) {
        out.push_back(d);
        return !limit || out.size() < *limit;
    });
    return out;
}

/// True when the factors multiply to `original` (as a mapping).
inline bool same_product(std::span<cycle const> factors, cycle const& original) {
    auto const image = detail::sparse_product(factors);
    std::map<uint32_t, uint32_t> goal;
    for (std::size_t i = 0; i < original.length(); ++i) {
        goal[original[i]] = original[(i + 1) % original.length()];
    }
    for (auto [x, y] : image) {
        auto const it = goal.find(x);
        if ((it == goal.end() ? x : it->second) != y) return false;
    }
    for (auto [x, y] : goal) {
        if (!image.contains(x)) return false;
    }
    return true;
}

/// Checks every structural property a decomposition of `original` must have:
/// product identity, minimality, the 5-cycle count, and the level-1
/// disjoint runs.
inline bool validate(decomposition const& d, cycle const& original) {
    std::size_t const n = original.length();
    if (n <= 5 || d.factors.empty()) return false;
    if (d.levels.size() != d.size() || d.disjoint.size() != d.size()) return false;

    std::size_t fives = 0, shorts = 0, weight = 0;
    std::vector<cycle const*> level1;
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto const len = d.factors[i].length();
        if (len > 5) return false;
        if (len == 5) ++fives;
        else ++shorts;
        weight += len - 1;
        if (d.levels[i] == 1 && d.disjoint[i]) level1.push_back(&d.factors[i]);
    }
    if (shorts > 1 || weight != n - 1) return false;
    if (fives != n5(n) || level1.size() != max_disjoint(n)) return false;
    for (std::size_t i = 0; i < level1.size(); ++i) {
        for (std::size_t j = i + 1; j < level1.size(); ++j) {
            if (!level1[i]->disjoint(*level1[j])) return false;
        }
    }
    return same_product(d.factors, original);
}

}  // namespace revsyn
