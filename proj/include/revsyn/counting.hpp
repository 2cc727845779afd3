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

/// \file counting.hpp
/// \brief Exact counts of cycle factorizations and 5-cycle decompositions.
///
/// All counts are arbitrary-precision integers. `oracle_enumerate` is a
/// brute-force enumerator over small cycles that the closed forms are
/// checked against.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "revsyn/block_type.hpp"
#include "revsyn/errors.hpp"
#include "revsyn/permutation.hpp"

namespace revsyn {

using big_int = boost::multiprecision::cpp_int;

/// Factor length k -> number of k-cycle factors i_k.
using cycle_index = std::map<uint32_t, uint32_t>;

namespace detail {

inline big_int factorial(uint64_t n) {
    big_int r = 1;
    for (uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

inline big_int binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    big_int r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

struct index_totals {
    uint64_t factors = 0;   // r
    uint64_t weighted = 0;  // sum k * i_k
    big_int denominator = 1;
};

inline index_totals totals(cycle_index const& idx) {
    index_totals t;
    for (auto [k, count] : idx) {
        if (k < 2) throw domain_error("factor length must be at least 2");
        t.factors += count;
        t.weighted += uint64_t{k} * count;
        t.denominator *= factorial(count);
    }
    return t;
}

}  // namespace detail

/// (n)_k = n (n-1) ... (n-k+1).
inline big_int falling_factorial(big_int const& n, uint64_t k) {
    if (n < 0 || big_int(k) > n) throw domain_error("falling factorial needs 0 <= k <= n");
    big_int r = 1;
    for (uint64_t i = 0; i < k; ++i) r *= n - i;
    return r;
}

/// Number of ordered element choices for a block on n lines, (2^n)_k.
inline big_int block_space_size(block_type t, uint32_t lines) {
    if (lines > 64) throw domain_error("line count too large");
    big_int const space = big_int(1) << lines;
    auto const k = block_element_count(t);
    if (big_int(k) > space) {
        throw domain_error(std::string(to_string(t)) + " needs " + std::to_string(k) +
                           " values but only " + space.str() + " exist");
    }
    return falling_factorial(space, k);
}

/// Inequivalent transposition factorizations of an n-cycle:
/// C(3n-3, n-1) / (2n-1).
inline big_int catalan_inequivalent_2cycle_count(uint32_t n) {
    if (n < 2) throw domain_error("cycle length must be at least 2");
    return detail::binomial(3 * uint64_t{n} - 3, n - 1) / (2 * uint64_t{n} - 1);
}

/// Ordered minimal factorizations of an n-cycle with the given index:
/// n^(r-1) r! / prod i_k!, or 0 when n + r - 1 != sum k i_k.
inline big_int factorization_count(uint32_t n, cycle_index const& idx) {
    if (n < 2) throw domain_error("cycle length must be at least 2");
    auto const t = detail::totals(idx);
    if (t.factors == 0 || n + t.factors - 1 != t.weighted) return 0;
    return boost::multiprecision::pow(big_int(n), static_cast<unsigned>(t.factors - 1)) *
           detail::factorial(t.factors) / t.denominator;
}

/// Inequivalent minimal factorizations of an n-cycle with the given index:
/// (2n+r-2)! / ((2n-1)! prod i_k!), or 0 when n + r - 1 != sum k i_k.
inline big_int inequivalent_factorization_count(uint32_t n, cycle_index const& idx) {
    if (n < 2) throw domain_error("cycle length must be at least 2");
    auto const t = detail::totals(idx);
    if (t.factors == 0) throw domain_error("cycle index must not be all zero");
    if (n + t.factors - 1 != t.weighted) return 0;
    return detail::factorial(2 * uint64_t{n} + t.factors - 2) /
           (detail::factorial(2 * uint64_t{n} - 1) * t.denominator);
}

/// Minimum number of 5-cycle factors in a decomposition of an n-cycle.
/// Defined as 1 for n == 5 and 0 below that.
inline uint64_t n5(uint64_t n) {
    if (n < 2) throw domain_error("cycle length must be at least 2");
    if (n <= 5) return n == 5 ? 1 : 0;
    if (n % 4 == 0) return (n - 4) / 4;
    return (n - n % 4) / 4;
}

/// Largest number of pairwise disjoint 5-cycles in such a decomposition.
inline uint64_t max_disjoint(uint64_t n) { return n / 5; }

/// Number of decompositions with the maximum number of disjoint 5-cycles:
/// the product of the residual lengths L(0)=n, L(j)=L(j-1)-4*floor(L(j-1)/5)
/// over every level longer than 5.
inline big_int ndcm(uint64_t n) {
    if (n <= 5) throw domain_error("N_DCM is defined for cycles longer than 5");
    big_int product = 1;
    for (uint64_t level = n; level > 5; level -= 4 * (level / 5)) product *= level;
    return product;
}

/// One factor sequence produced by the oracle.
using factor_sequence = std::vector<cycle>;

namespace detail {

/// All k-cycles on `support`, each in canonical rotation, sorted.
inline std::vector<cycle> all_cycles_on(std::vector<uint32_t> const& support, std::size_t k) {
    std::vector<cycle> out;
    std::vector<uint32_t> pick;
    std::vector<bool> used(support.size(), false);
    // The first element is the minimum of the chosen set; the rest are an
    // arrangement of larger elements, which yields each cycle exactly once.
    std::function<void()> rec = [&] {
        if (pick.size() == k) {
            out.emplace_back(pick);
            return;
        }
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (used[i]) continue;
            if (!pick.empty() && support[i] < pick.front()) continue;
            used[i] = true;
            pick.push_back(support[i]);
            rec();
            pick.pop_back();
            used[i] = false;
        }
    };
    rec();
    std::sort(out.begin(), out.end());
    return out;
}

/// Lexicographically least word in the trace class of `seq`, where
/// adjacent disjoint factors commute.
inline factor_sequence trace_normal_form(factor_sequence const& seq) {
    std::size_t const m = seq.size();
    std::vector<std::vector<std::size_t>> preds(m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (!seq[i].disjoint(seq[j])) preds[j].push_back(i);
        }
    }
    std::vector<bool> done(m, false);
    factor_sequence out;
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t best = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (done[j]) continue;
            bool ready = std::all_of(preds[j].begin(), preds[j].end(),
                                     [&](std::size_t i) { return done[i]; });
            if (ready && (best == m || seq[j] < seq[best])) best = j;
        }
        done[best] = true;
        out.push_back(seq[best]);
    }
    return out;
}

}  // namespace detail

/// Brute-force list of factor sequences matching `idx` whose left-to-right
/// product is `target`. Factors range over all cycles on the target's
/// elements. With `inequivalent`, one representative (the trace normal
/// form) is returned per class of sequences related by exchanging adjacent
/// disjoint factors.
inline std::vector<factor_sequence> oracle_enumerate(cycle const& target, cycle_index const& idx,
                                                     bool inequivalent) {
    if (target.length() > 6) throw too_large("oracle is limited to cycles of length <= 6");
    auto const t = detail::totals(idx);
    if (t.factors == 0) return {};
    if (t.factors > 8) throw too_large("oracle is limited to at most 8 factors");

    std::vector<uint32_t> support(target.elements().begin(), target.elements().end());
    std::sort(support.begin(), support.end());
    std::map<uint32_t, std::vector<cycle>> by_length;
    for (auto [k, count] : idx) {
        if (count > 0) by_length[k] = detail::all_cycles_on(support, k);
    }

    // Apply factors to a small image table over the support only.
    std::map<uint32_t, uint32_t> goal;
    for (std::size_t i = 0; i < target.length(); ++i) {
        goal[target[i]] = target[(i + 1) % target.length()];
    }

    std::vector<std::vector<cycle>> found;
    std::set<factor_sequence> classes;
    cycle_index remaining = idx;
    factor_sequence seq;
    std::map<uint32_t, uint32_t> image;
    for (uint32_t v : support) image[v] = v;

    std::function<void()> rec = [&] {
        if (seq.size() == t.factors) {
            if (image != goal) return;
            if (!inequivalent) {
                found.push_back(seq);
            } else if (classes.insert(detail::trace_normal_form(seq)).second) {
                found.push_back(detail::trace_normal_form(seq));
            }
            return;
        }
        for (auto& [k, left] : remaining) {
            if (left == 0) continue;
            --left;
            for (auto const& f : by_length[k]) {
                auto const saved = image;
                // x -> image[x] -> f(image[x])
                for (auto& [x, y] : image) {
                    for (std::size_t i = 0; i < f.length(); ++i) {
                        if (f[i] == y) {
                            y = f[(i + 1) % f.length()];
                            break;
                        }
                    }
                }
                seq.push_back(f);
                rec();
                seq.pop_back();
                image = saved;
            }
            ++left;
        }
    };
    rec();
    return found;
}

}  // namespace revsyn
