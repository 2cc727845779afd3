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

/// \file circuit.hpp
/// \brief Multi-controlled Toffoli gates and netlists.
///
/// Line i carries bit i of the integer encoding of a state. A gate flips its
/// target bit iff every control bit is 1 (positive controls only).

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "revsyn/errors.hpp"
#include "revsyn/permutation.hpp"

namespace revsyn {

/// Largest line count a circuit may have; controls are a 32-bit mask.
inline constexpr uint32_t max_lines = 32;

struct gate {
    uint32_t controls = 0;  ///< bit mask of control lines
    uint32_t target = 0;

    static gate make(std::initializer_list<uint32_t> control_lines, uint32_t target) {
        gate g{0, target};
        for (uint32_t c : control_lines) {
            if (c >= max_lines) throw domain_error("control line out of range");
            g.controls |= uint32_t{1} << c;
        }
        if (target >= max_lines) throw domain_error("target line out of range");
        if (g.controls >> target & 1u) throw domain_error("target cannot also be a control");
        return g;
    }

    static gate not_gate(uint32_t target) { return make({}, target); }

    uint32_t control_count() const noexcept { return static_cast<uint32_t>(std::popcount(controls)); }
    uint32_t target_mask() const noexcept { return uint32_t{1} << target; }
    /// Controls plus target.
    uint32_t lines() const noexcept { return controls | target_mask(); }

    bool valid_for(uint32_t n) const noexcept {
        if (target >= n || (controls >> target & 1u)) return false;
        return n >= 32 || (controls >> n) == 0;
    }

    bool operator==(gate const&) const = default;
    auto operator<=>(gate const&) const = default;
};

inline uint32_t apply_gate(uint32_t v, gate const& g) noexcept {
    return (v & g.controls) == g.controls ? v ^ g.target_mask() : v;
}

class circuit {
   public:
    explicit circuit(uint32_t n = 1) : n_(n) {
        if (n == 0 || n > max_lines) throw domain_error("line count must be in [1, 32]");
    }

    circuit(uint32_t n, std::vector<gate> gates) : circuit(n) {
        for (auto const& g : gates) add(g);
    }

    uint32_t lines() const noexcept { return n_; }
    std::vector<gate> const& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }

    /// Per-gate provenance labels; empty strings when unlabelled.
    std::vector<std::string> const& labels() const noexcept { return labels_; }

    void add(gate const& g, std::string label = {}) {
        if (!g.valid_for(n_)) {
            throw domain_error("gate with target " + std::to_string(g.target) +
                               " is not valid on " + std::to_string(n_) + " lines");
        }
        gates_.push_back(g);
        labels_.push_back(std::move(label));
    }

    void append(circuit const& other) {
        if (other.n_ != n_) throw length_mismatch("appending a circuit of different width");
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        labels_.insert(labels_.end(), other.labels_.begin(), other.labels_.end());
    }

    void relabel(std::string const& label) { std::fill(labels_.begin(), labels_.end(), label); }

    /// Netlists compare gate for gate; labels are ignored.
    bool operator==(circuit const& o) const { return n_ == o.n_ && gates_ == o.gates_; }

   private:
    uint32_t n_;
    std::vector<gate> gates_;
    std::vector<std::string> labels_;
};

/// Permutation realized by applying the gates left to right.
inline permutation simulate(circuit const& c, uint32_t cap = default_bit_cap) {
    auto table = permutation::identity(c.lines(), cap);
    std::vector<uint32_t> images(table.images().begin(), table.images().end());
    for (auto const& g : c.gates()) {
        uint32_t const ctrl = g.controls;
        uint32_t const flip = g.target_mask();
        for (auto& v : images) {
            if ((v & ctrl) == ctrl) v ^= flip;
        }
    }
    return permutation::from_images(c.lines(), std::move(images), cap);
}

/// Every gate is self-inverse, so the inverse is the reversed gate list.
inline circuit invert(circuit const& c) {
    circuit out(c.lines());
    for (std::size_t i = c.size(); i-- > 0;) out.add(c.gates()[i], c.labels()[i]);
    return out;
}

}  // namespace revsyn
