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

/// \file transform_synth.hpp
/// \brief Bidirectional transformation-based synthesis.
///
/// Walks i = 0, 1, ... and, whenever f(i) != i, adds gates on the output
/// side (moving f(i) to i) or on the input side (moving f^-1(i) to i),
/// whichever needs fewer bit flips. Values below i are already fixed and
/// must not be disturbed: a gate with control mask C touches only values
/// that contain C, the smallest of which is C itself, so any C >= i is safe.
/// Controls are the fewest high bits of the moving value that reach i.

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "revsyn/circuit.hpp"
#include "revsyn/permutation.hpp"

namespace revsyn {

namespace detail {

/// Fewest bits of `available` (highest first) whose sum is >= `floor`.
inline uint32_t high_controls(uint32_t available, uint32_t floor) {
    uint32_t c = 0;
    while (c < floor && available) {
        uint32_t const top = uint32_t{1} << (31 - std::countl_zero(available));
        c |= top;
        available &= ~top;
    }
    return c;
}

/// Relabels the values of `fwd` by `g` and keeps `inv` its inverse.
inline void apply_to_values(std::vector<uint32_t>& fwd, std::vector<uint32_t>& inv, gate const& g) {
    uint32_t const t = g.target_mask();
    for (auto& v : fwd) v = apply_gate(v, g);
    for (uint32_t y = 0; y < inv.size(); ++y) {
        if ((y & g.controls) == g.controls && !(y & t)) std::swap(inv[y], inv[y | t]);
    }
}

/// Gates moving `fwd[i]` to `i` on the value side of `fwd`.
inline void fix_point(std::vector<uint32_t>& fwd, std::vector<uint32_t>& inv, uint32_t i,
                      std::vector<gate>& emitted) {
    uint32_t y = fwd[i];
    // set bits first so the moving value only grows
    for (uint32_t set = i & ~y; set; set &= set - 1) {
        uint32_t const b = static_cast<uint32_t>(std::countr_zero(set));
        gate const g{high_controls(y, i), b};
        apply_to_values(fwd, inv, g);
        emitted.push_back(g);
        y |= uint32_t{1} << b;
    }
    for (uint32_t clear = y & ~i; clear; clear &= clear - 1) {
        uint32_t const b = static_cast<uint32_t>(std::countr_zero(clear));
        gate const g{high_controls(y & ~(uint32_t{1} << b), i), b};
        apply_to_values(fwd, inv, g);
        emitted.push_back(g);
        y &= ~(uint32_t{1} << b);
    }
}

}  // namespace detail

/// Circuit realizing `p` exactly, on the same lines, without ancillae.
inline circuit mini_transform_synth(permutation const& p, uint32_t cap = default_bit_cap) {
    if (p.bits() > cap) throw cap_exceeded("permutation wider than the synthesis cap");
    std::vector<uint32_t> f(p.images().begin(), p.images().end());
    auto const pinv = p.inverse();
    std::vector<uint32_t> finv(pinv.images().begin(), pinv.images().end());

    // output-side gates act on f's values; input-side gates act on finv's values
    std::vector<gate> output_side, input_side;
    for (uint32_t i = 0; i < f.size(); ++i) {
        if (f[i] == i) continue;
        if (std::popcount(i ^ f[i]) <= std::popcount(i ^ finv[i])) {
            detail::fix_point(f, finv, i, output_side);
        } else {
            detail::fix_point(finv, f, i, input_side);
        }
    }

    circuit c(p.bits());
    for (auto const& g : input_side) c.add(g);
    for (auto it = output_side.rbegin(); it != output_side.rend(); ++it) c.add(*it);
    return c;
}

}  // namespace revsyn
