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

/// \file io.hpp
/// \brief Permutation files.
///
///     # comment
///     n=3
///     perm: 1 2 0 3 4 5 6 7
///
/// or, with unlisted values fixed,
///
///     n=5
///     cycles: (3,5,6,7,9)(22,27)

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "revsyn/errors.hpp"
#include "revsyn/permutation.hpp"

namespace revsyn {

namespace detail {

/// Character cursor with 1-based positions; `#` runs to the end of the line.
class text_cursor {
   public:
    explicit text_cursor(std::string_view text, std::size_t first_line = 1)
        : text_(text), line_(first_line) {}

    void skip_space() {
        while (pos_ < text_.size()) {
            char const ch = text_[pos_];
            if (ch == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    bool done() {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char ch) {
        if (peek() != ch) return false;
        advance();
        return true;
    }

    void expect(char ch) {
        if (!accept(ch)) fail(std::string("expected '") + ch + "'");
    }

    void expect_word(std::string_view word) {
        skip_space();
        if (text_.substr(pos_, word.size()) != word) fail("expected '" + std::string(word) + "'");
        for (std::size_t i = 0; i < word.size(); ++i) advance();
    }

    uint64_t number() {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9') fail("expected a non-negative integer");
        uint64_t v = 0;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            v = v * 10 + static_cast<uint64_t>(text_[pos_] - '0');
            if (v > 0xffffffffull) fail("integer too large");
            advance();
        }
        return v;
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

    [[noreturn]] void fail(std::string const& message) const { throw parse_error(message, line_, column_); }

   private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t column_ = 1;
};

/// Reads `(a,b,...)(...)...` until the input ends. Values must be below
/// `limit` and appear at most once overall.
inline std::vector<cycle> read_cycles(text_cursor& in, uint64_t limit) {
    std::vector<cycle> out;
    std::set<uint32_t> seen;
    while (!in.done()) {
        in.expect('(');
        std::vector<uint32_t> elems;
        do {
            in.skip_space();
            auto const line = in.line(), col = in.column();
            uint64_t const v = in.number();
            if (v >= limit) throw parse_error("value " + std::to_string(v) + " out of range", line, col);
            if (!seen.insert(static_cast<uint32_t>(v)).second) {
                throw parse_error("value " + std::to_string(v) + " repeated in cycle notation", line, col);
            }
            elems.push_back(static_cast<uint32_t>(v));
        } while (in.accept(','));
        in.expect(')');
        if (elems.size() >= 2) out.emplace_back(std::move(elems));
    }
    return out;
}

}  // namespace detail

/// Parses cycle notation such as "(1,2,3)(4,5)". Cycles must be disjoint;
/// one-element cycles are dropped.
inline std::vector<cycle> parse_cycles(std::string_view text) {
    detail::text_cursor in(text);
    if (in.done()) in.fail("expected at least one cycle");
    return detail::read_cycles(in, uint64_t{1} << 32);
}

inline permutation parse_perm(std::string_view text, uint32_t cap = default_bit_cap) {
    detail::text_cursor in(text);
    if (in.done()) in.fail("empty input");
    in.expect_word("n");
    in.expect('=');
    in.skip_space();
    auto const n_line = in.line(), n_col = in.column();
    uint64_t const n = in.number();
    if (n == 0 || n > std::min(cap, max_bit_cap)) {
        throw parse_error("n must be in [1, " + std::to_string(std::min(cap, max_bit_cap)) + "]", n_line, n_col);
    }
    uint64_t const size = uint64_t{1} << n;
    uint32_t const bits = static_cast<uint32_t>(n);

    if (in.peek() == 'p') {
        in.expect_word("perm");
        in.expect(':');
        std::vector<uint32_t> images;
        images.reserve(size);
        while (!in.done()) {
            in.skip_space();
            auto const line = in.line(), col = in.column();
            uint64_t const v = in.number();
            if (v >= size) throw parse_error("value " + std::to_string(v) + " out of range", line, col);
            if (images.size() == size) throw parse_error("more than 2^n values", line, col);
            images.push_back(static_cast<uint32_t>(v));
        }
        if (images.size() != size) {
            in.fail("expected " + std::to_string(size) + " values, got " + std::to_string(images.size()));
        }
        return permutation::from_images(bits, std::move(images), cap);
    }
    in.expect_word("cycles");
    in.expect(':');
    auto const cycles = detail::read_cycles(in, size);
    return cycle_product(std::span<cycle const>(cycles), bits, cap);
}

inline std::string write_perm(permutation const& p) {
    std::string out = "n=" + std::to_string(p.bits()) + "\nperm:";
    for (uint32_t y : p.images()) out += " " + std::to_string(y);
    return out + "\n";
}

/// Cycle-notation form; the identity is written with an empty body.
inline std::string write_perm_cycles(permutation const& p) {
    std::string out = "n=" + std::to_string(p.bits()) + "\ncycles: ";
    auto const form = to_ccf(p);
    return out + to_string(std::span<cycle const>(form.cycles)) + "\n";
}

}  // namespace revsyn
