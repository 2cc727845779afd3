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

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

namespace revsyn {

/// The seven building blocks of the library.
enum class block_type {
    p22,  ///< pair of 2-cycles
    s3,   ///< single 3-cycle
    p33,  ///< pair of 3-cycles
    p42,  ///< 4-cycle with a 2-cycle
    p44,  ///< pair of 4-cycles
    s5,   ///< single 5-cycle
    p55,  ///< pair of 5-cycles
};

inline constexpr std::array<block_type, 7> all_block_types = {
    block_type::p22, block_type::s3, block_type::p33, block_type::p42,
    block_type::p44, block_type::s5, block_type::p55};

/// Cycle lengths of a block, longest first.
inline std::vector<std::size_t> block_lengths(block_type t) {
    switch (t) {
        case block_type::p22: return {2, 2};
        case block_type::s3: return {3};
        case block_type::p33: return {3, 3};
        case block_type::p42: return {4, 2};
        case block_type::p44: return {4, 4};
        case block_type::s5: return {5};
        case block_type::p55: return {5, 5};
    }
    return {};
}

inline std::size_t block_element_count(block_type t) {
    auto const l = block_lengths(t);
    return std::accumulate(l.begin(), l.end(), std::size_t{0});
}

inline std::string_view to_string(block_type t) {
    switch (t) {
        case block_type::p22: return "P22";
        case block_type::s3: return "S3";
        case block_type::p33: return "P33";
        case block_type::p42: return "P42";
        case block_type::p44: return "P44";
        case block_type::s5: return "S5";
        case block_type::p55: return "P55";
    }
    return "?";
}

/// Block type for one cycle of length `a`, or a pair of lengths `a`, `b`.
inline std::optional<block_type> block_for(std::size_t a, std::optional<std::size_t> b = {}) {
    if (!b) {
        if (a == 3) return block_type::s3;
        if (a == 5) return block_type::s5;
        return std::nullopt;
    }
    auto const hi = std::max(a, *b);
    auto const lo = std::min(a, *b);
    if (hi == 2 && lo == 2) return block_type::p22;
    if (hi == 3 && lo == 3) return block_type::p33;
    if (hi == 4 && lo == 2) return block_type::p42;
    if (hi == 4 && lo == 4) return block_type::p44;
    if (hi == 5 && lo == 5) return block_type::p55;
    return std::nullopt;
}

}  // namespace revsyn
