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

#include <cassert>
#include <vector>

#include "revsyn/circuit.hpp"

namespace revsyn {

/// True when the two gates can be exchanged: neither target drives a control
/// of the other.
inline bool gates_commute(gate const& a, gate const& b) noexcept {
    return (a.controls & b.target_mask()) == 0 && (b.controls & a.target_mask()) == 0;
}

/// Removes pairs of identical gates that can be brought next to each other
/// by exchanging commuting gates. Never adds a gate, so the cost cannot grow.
inline circuit peephole_optimize(circuit const& c) {
    std::vector<gate> gates = c.gates();
    std::vector<std::string> labels = c.labels();
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<gate> out;
        std::vector<std::string> out_labels;
        out.reserve(gates.size());
        for (std::size_t i = 0; i < gates.size(); ++i) {
            gate const& g = gates[i];
            bool cancelled = false;
            for (std::size_t j = out.size(); j-- > 0;) {
                if (out[j] == g) {
                    out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
                    out_labels.erase(out_labels.begin() + static_cast<std::ptrdiff_t>(j));
                    cancelled = true;
                    break;
                }
                if (!gates_commute(out[j], g)) break;
            }
            if (cancelled) {
                changed = true;
            } else {
                out.push_back(g);
                out_labels.push_back(labels[i]);
            }
        }
        gates = std::move(out);
        labels = std::move(out_labels);
    }
    circuit result(c.lines());
    for (std::size_t i = 0; i < gates.size(); ++i) result.add(gates[i], std::move(labels[i]));
#ifndef NDEBUG
    if (c.lines() <= 10) assert(simulate(result) == simulate(c));
#endif
    return result;
}

}  // namespace revsyn
