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

/// \file generators.hpp
/// \brief Benchmark permutations.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "revsyn/permutation.hpp"

namespace revsyn {

/// Hidden weighted bit: x rotated left by its weight, modulo n.
inline permutation gen_hwb(uint32_t n, uint32_t cap = default_bit_cap) {
    if (n > cap) throw cap_exceeded("hwb" + std::to_string(n) + " exceeds the bit cap");
    if (n == 0) throw domain_error("hwb needs at least one line");
    uint32_t const mask = static_cast<uint32_t>((uint64_t{1} << n) - 1);
    std::vector<uint32_t> images(std::size_t{1} << n);
    for (uint32_t x = 0; x < images.size(); ++x) {
        uint32_t const s = static_cast<uint32_t>(std::popcount(x)) % n;
        images[x] = s == 0 ? x : ((x << s) | (x >> (n - s))) & mask;
    }
    return permutation::from_images(n, std::move(images), cap);
}

/// Uniform even permutation: a shuffled table, with its first two images
/// swapped when the shuffle came out odd.
inline permutation gen_random_even(uint32_t n, uint64_t seed, uint32_t cap = default_bit_cap) {
    if (n > cap) throw cap_exceeded("random permutation exceeds the bit cap");
    std::vector<uint32_t> images(std::size_t{1} << n);
    std::iota(images.begin(), images.end(), 0u);
    std::mt19937_64 rng(seed);
    std::shuffle(images.begin(), images.end(), rng);
    auto p = permutation::from_images(n, images, cap);
    if (parity_of(p) == parity::odd) {
        std::swap(images[0], images[1]);
        p = permutation::from_images(n, std::move(images), cap);
    }
    return p;
}

/// Published quantum cost of the hwb benchmark on n lines, for comparison
/// in reports.
inline std::optional<uint64_t> reference_hwb_cost(uint32_t n) {
    static std::map<uint32_t, uint64_t> const table{
        {7, 2727}, {8, 6535}, {9, 15462}, {10, 34224}, {11, 86942}};
    auto const it = table.find(n);
    return it == table.end() ? std::nullopt : std::optional{it->second};
}

}  // namespace revsyn
