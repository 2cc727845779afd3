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

/// \file permutation.hpp
/// \brief Permutations of {0..2^n-1}, cycles, and the canonical cycle form.
///
/// A reversible function on n lines is stored as its full image table. The
/// synthesis flow works on the canonical cycle form (CCF): the disjoint
/// cycles of the permutation with fixed points dropped, each cycle rotated
/// to start at its smallest element, cycles sorted by that element.
///
/// Products of cycles are read left to right: in `(1,2)(1,4)` the
/// transposition `(1,2)` is applied first.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "revsyn/errors.hpp"

namespace revsyn {

/// Largest bit-width accepted for full-table permutations unless a caller
/// passes its own cap.
inline constexpr uint32_t default_bit_cap = 20;

/// Hard ceiling for any cap; values are stored in 32-bit words.
inline constexpr uint32_t max_bit_cap = 30;

enum class parity { even, odd };

inline char const* to_string(parity p) { return p == parity::even ? "even" : "odd"; }

class permutation {
   public:
    permutation() : n_(1), images_{0, 1} {}

    /// Validates `images` as a bijection on {0..2^n-1}.
    static permutation from_images(uint32_t n, std::vector<uint32_t> images,
                                   uint32_t cap = default_bit_cap) {
        check_width(n, cap);
        std::size_t const size = std::size_t{1} << n;
        if (images.size() != size) {
            throw length_mismatch("expected " + std::to_string(size) + " images for n=" +
                                  std::to_string(n) + ", got " +
                                  std::to_string(images.size()));
        }
        std::vector<bool> seen(size, false);
        for (std::size_t x = 0; x < size; ++x) {
            uint32_t const y = images[x];
            if (y >= size) {
                throw not_bijective("image " + std::to_string(y) + " of " + std::to_string(x) +
                                    " is out of range");
            }
            if (seen[y]) {
                throw not_bijective("value " + std::to_string(y) + " appears twice");
            }
            seen[y] = true;
        }
        return permutation(n, std::move(images));
    }

    static permutation identity(uint32_t n, uint32_t cap = default_bit_cap) {
        check_width(n, cap);
        std::vector<uint32_t> images(std::size_t{1} << n);
        for (std::size_t x = 0; x < images.size(); ++x) images[x] = static_cast<uint32_t>(x);
        return permutation(n, std::move(images));
    }

    uint32_t bits() const noexcept { return n_; }
    std::size_t size() const noexcept { return images_.size(); }
    uint32_t operator()(uint32_t x) const { return images_[x]; }
    std::span<uint32_t const> images() const noexcept { return images_; }

    bool is_identity() const {
        for (std::size_t x = 0; x < images_.size(); ++x) {
            if (images_[x] != x) return false;
        }
        return true;
    }

    permutation inverse() const {
        std::vector<uint32_t> inv(images_.size());
        for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<uint32_t>(x);
        return permutation(n_, std::move(inv));
    }

    /// `this` first, then `next`: x -> next(this(x)).
    permutation then(permutation const& next) const {
        if (next.n_ != n_) throw length_mismatch("composing permutations of different widths");
        std::vector<uint32_t> out(images_.size());
        for (std::size_t x = 0; x < images_.size(); ++x) out[x] = next.images_[images_[x]];
        return permutation(n_, std::move(out));
    }

    bool operator==(permutation const&) const = default;

   private:
    permutation(uint32_t n, std::vector<uint32_t> images) : n_(n), images_(std::move(images)) {}

    static void check_width(uint32_t n, uint32_t cap) {
        if (n == 0) throw domain_error("bit-width must be at least 1");
        if (n > cap || n > max_bit_cap) {
            throw cap_exceeded("bit-width " + std::to_string(n) + " exceeds cap " +
                               std::to_string(std::min(cap, max_bit_cap)));
        }
    }

    uint32_t n_;
    std::vector<uint32_t> images_;
};

/// A cycle (a_1, ..., a_k), k >= 2, mapping a_i to a_{i+1} and a_k to a_1.
class cycle {
   public:
    explicit cycle(std::vector<uint32_t> elems) : elems_(std::move(elems)) {
        if (elems_.size() < 2) throw domain_error("a cycle needs at least two elements");
        std::unordered_set<uint32_t> seen;
        for (uint32_t e : elems_) {
            if (!seen.insert(e).second) {
                throw domain_error("element " + std::to_string(e) + " repeated in cycle");
            }
        }
    }

    cycle(std::initializer_list<uint32_t> elems) : cycle(std::vector<uint32_t>(elems)) {}

    std::size_t length() const noexcept { return elems_.size(); }
    std::span<uint32_t const> elements() const noexcept { return elems_; }
    uint32_t operator[](std::size_t i) const { return elems_[i]; }
    uint32_t max_element() const { return *std::max_element(elems_.begin(), elems_.end()); }

    bool contains(uint32_t v) const {
        return std::find(elems_.begin(), elems_.end(), v) != elems_.end();
    }

    bool disjoint(cycle const& other) const {
        for (uint32_t e : elems_) {
            if (other.contains(e)) return false;
        }
        return true;
    }

    /// Same cycle written starting at `elements()[k]`.
    cycle rotated(std::size_t k) const {
        std::vector<uint32_t> out(elems_.size());
        for (std::size_t i = 0; i < elems_.size(); ++i) out[i] = elems_[(i + k) % elems_.size()];
        return cycle(std::move(out), unchecked{});
    }

    /// Rotation starting at the smallest element.
    cycle canonical() const {
        auto const it = std::min_element(elems_.begin(), elems_.end());
        return rotated(static_cast<std::size_t>(it - elems_.begin()));
    }

    /// Equality as mappings, ignoring the starting element.
    bool same_mapping(cycle const& other) const {
        return canonical().elems_ == other.canonical().elems_;
    }

    /// Sequence equality (rotation-sensitive).
    bool operator==(cycle const&) const = default;
    auto operator<=>(cycle const&) const = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(elems_[i]);
        }
        return s + ")";
    }

   private:
    struct unchecked {};
    cycle(std::vector<uint32_t> elems, unchecked) : elems_(std::move(elems)) {}

    std::vector<uint32_t> elems_;
};

inline std::string to_string(std::span<cycle const> cycles) {
    std::string s;
    for (auto const& c : cycles) s += c.to_string();
    return s;
}

/// Canonical cycle form: disjoint cycles in canonical order, no fixed points.
struct ccf {
    uint32_t n = 1;
    std::vector<cycle> cycles;

    bool operator==(ccf const&) const = default;
};

inline ccf to_ccf(permutation const& p) {
    ccf out{p.bits(), {}};
    std::vector<bool> visited(p.size(), false);
    for (uint32_t x = 0; x < p.size(); ++x) {
        if (visited[x] || p(x) == x) continue;
        std::vector<uint32_t> elems;
        for (uint32_t y = x; !visited[y]; y = p(y)) {
            visited[y] = true;
            elems.push_back(y);
        }
        out.cycles.emplace_back(std::move(elems));
    }
    return out;
}

/// Re-sorts an arbitrary set of disjoint cycles into canonical CCF order.
inline ccf canonicalize(ccf c) {
    for (auto& cy : c.cycles) cy = cy.canonical();
    std::sort(c.cycles.begin(), c.cycles.end(),
              [](cycle const& a, cycle const& b) { return a[0] < b[0]; });
    return c;
}

inline parity parity_of(permutation const& p) {
    std::size_t transpositions = 0;
    for (auto const& c : to_ccf(p).cycles) transpositions += c.length() - 1;
    return transpositions % 2 == 0 ? parity::even : parity::odd;
}

/// Left-to-right product of `factors` as a permutation on n bits.
inline permutation cycle_product(std::span<cycle const> factors, uint32_t n,
                                 uint32_t cap = default_bit_cap) {
    auto const id = permutation::identity(n, cap);
    std::vector<uint32_t> images(id.images().begin(), id.images().end());
    // source[y] is the x whose running image is y
    std::vector<uint32_t> source = images;
    for (auto const& f : factors) {
        if (f.max_element() >= images.size()) {
            throw domain_error("cycle element " + std::to_string(f.max_element()) +
                               " does not fit in " + std::to_string(n) + " bits");
        }
        auto const e = f.elements();
        std::vector<uint32_t> moved(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) moved[i] = source[e[i]];
        for (std::size_t i = 0; i < e.size(); ++i) {
            uint32_t const next = e[(i + 1) % e.size()];
            images[moved[i]] = next;
            source[next] = moved[i];
        }
    }
    return permutation::from_images(n, std::move(images), cap);
}

inline permutation cycle_product(std::initializer_list<cycle> factors, uint32_t n,
                                 uint32_t cap = default_bit_cap) {
    std::vector<cycle> v(factors);
    return cycle_product(std::span<cycle const>(v), n, cap);
}

/// Adds a new most-significant line that is passed through unchanged.
/// Every cycle is duplicated, so the result is always even.
inline permutation extend_with_line(permutation const& p, uint32_t cap = default_bit_cap) {
    uint32_t const n = p.bits();
    if (n + 1 > cap) {
        throw cap_exceeded("extending to " + std::to_string(n + 1) + " lines exceeds cap " +
                           std::to_string(cap));
    }
    std::vector<uint32_t> images(p.size() * 2);
    uint32_t const top = uint32_t{1} << n;
    for (uint32_t x = 0; x < p.size(); ++x) {
        images[x] = p(x);
        images[x | top] = p(x) | top;
    }
    return permutation::from_images(n + 1, std::move(images), cap);
}

}  // namespace revsyn
