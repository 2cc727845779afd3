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

/// \file netlist.hpp
/// \brief Reading and writing `.real`-style netlists.
///
///     .version 1.0
///     .numvars 3
///     .variables x0 x1 x2
///     .begin
///     t3 x1 x2 x0
///     .end
///
/// A gate line `t<k>` lists k distinct variables, controls first and the
/// target last. Variable i of `.variables` is line i (bit i of a state).

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revsyn/circuit.hpp"
#include "revsyn/errors.hpp"

namespace revsyn {

inline std::string write_netlist(circuit const& c) {
    std::string out = ".version 1.0\n.numvars " + std::to_string(c.lines()) + "\n.variables";
    for (uint32_t i = 0; i < c.lines(); ++i) out += " x" + std::to_string(i);
    out += "\n.begin\n";
    for (auto const& g : c.gates()) {
        out += "t" + std::to_string(g.control_count() + 1);
        for (uint32_t m = g.controls; m; m &= m - 1) out += " x" + std::to_string(std::countr_zero(m));
        out += " x" + std::to_string(g.target) + "\n";
    }
    out += ".end\n";
    return out;
}

namespace detail {

struct token {
    std::string_view text;
    std::size_t column;  ///< 1-based
};

inline std::vector<token> split_words(std::string_view line) {
    std::vector<token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t const start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

inline uint32_t parse_count(token const& t, std::size_t line_no) {
    uint32_t v = 0;
    if (t.text.empty() || t.text.size() > 9) throw parse_error("expected a number", line_no, t.column);
    for (char ch : t.text) {
        if (ch < '0' || ch > '9') throw parse_error("expected a number", line_no, t.column);
        v = v * 10 + static_cast<uint32_t>(ch - '0');
    }
    return v;
}

}  // namespace detail

inline circuit parse_netlist(std::string_view text) {
    enum class stage { header, body, done };
    stage at = stage::header;
    std::optional<uint32_t> numvars;
    std::map<std::string, uint32_t, std::less<>> names;
    std::vector<gate> gates;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t const eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto const words = detail::split_words(line);
        if (words.empty()) continue;
        auto const& head = words.front();
        if (at == stage::done) throw parse_error("content after .end", line_no, head.column);

        if (head.text == ".version") continue;
        if (head.text == ".numvars") {
            if (words.size() != 2) throw parse_error(".numvars takes one value", line_no, head.column);
            numvars = detail::parse_count(words[1], line_no);
            if (*numvars == 0 || *numvars > max_lines) {
                throw parse_error("line count must be in [1, 32]", line_no, words[1].column);
            }
            continue;
        }
        if (head.text == ".variables") {
            for (std::size_t i = 1; i < words.size(); ++i) {
                if (!names.emplace(std::string(words[i].text), static_cast<uint32_t>(i - 1)).second) {
                    throw parse_error("duplicate variable name", line_no, words[i].column);
                }
            }
            continue;
        }
        if (head.text == ".begin") {
            if (!numvars) throw parse_error(".begin before .numvars", line_no, head.column);
            if (names.empty()) {
                for (uint32_t i = 0; i < *numvars; ++i) names.emplace("x" + std::to_string(i), i);
            }
            if (names.size() != *numvars) {
                throw parse_error(".variables does not match .numvars", line_no, head.column);
            }
            at = stage::body;
            continue;
        }
        if (head.text == ".end") {
            if (at != stage::body) throw parse_error(".end without .begin", line_no, head.column);
            at = stage::done;
            continue;
        }
        if (head.text.starts_with('.')) {
            if (at == stage::header) continue;  // other header directives are ignored
            throw parse_error("directive inside the gate list", line_no, head.column);
        }
        if (at != stage::body) throw parse_error("gate outside .begin/.end", line_no, head.column);
        if (head.text.size() < 2 || head.text[0] != 't') {
            throw parse_error("unknown gate '" + std::string(head.text) + "'", line_no, head.column);
        }
        uint32_t const arity = detail::parse_count({head.text.substr(1), head.column + 1}, line_no);
        if (arity == 0 || arity != words.size() - 1) {
            throw parse_error("gate arity does not match its operand count", line_no, head.column);
        }
        gate g;
        uint32_t used = 0;
        for (std::size_t i = 1; i < words.size(); ++i) {
            auto const it = names.find(words[i].text);
            if (it == names.end()) {
                throw unknown_variable(std::to_string(line_no) + ":" + std::to_string(words[i].column) +
                                       ": unknown variable '" + std::string(words[i].text) + "'");
            }
            uint32_t const bit = uint32_t{1} << it->second;
            if (used & bit) throw parse_error("line used twice in one gate", line_no, words[i].column);
            used |= bit;
            if (i + 1 == words.size()) g.target = it->second;
            else g.controls |= bit;
        }
        gates.push_back(g);
    }
    if (at != stage::done) throw parse_error("missing .end", line_no, 1);
    return circuit(*numvars, std::move(gates));
}

}  // namespace revsyn
