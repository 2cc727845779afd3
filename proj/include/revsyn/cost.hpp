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

/// \file cost.hpp
/// \brief Quantum cost of multi-controlled Toffoli gates.
///
/// Cost of a C^m NOT gate on a circuit of n lines:
///
///   m = 0, 1                         1
///   m = 2                            5
///   m = n - 1                        2^n - 3   (no free line)
///   3 <= m <= ceil(n/2), n >= 5      12m - 22
///   ceil(n/2) < m <= n - 2           24m - 40  (24n - 88 at m = n - 2)
///
/// The last row applies the C^{n-2} construction on the gate's own m + 2
/// lines. For n = 5 and 6, where that construction is unavailable, the
/// cheaper of 24m - 40 and 2^n - 3 is used.

#pragma once

#include <cstdint>
#include <string>

#include "revsyn/circuit.hpp"
#include "revsyn/errors.hpp"

namespace revsyn {

struct cost_model {
    enum class variant { standard };
    variant kind = variant::standard;
};

inline uint64_t mct_cost(uint32_t m, uint32_t n, cost_model const& = {}) {
    if (n == 0 || m >= n) {
        throw domain_error("C^" + std::to_string(m) + "NOT does not fit on " + std::to_string(n) +
                           " lines");
    }
    if (n > 63) throw domain_error("line count too large for cost accounting");
    if (m <= 1) return 1;
    if (m == 2) return 5;
    uint64_t const exponential = (uint64_t{1} << n) - 3;
    if (m == n - 1) return exponential;
    uint32_t const half = (n + 1) / 2;
    if (m <= half) return 12 * uint64_t{m} - 22;  // n >= 5 here since 3 <= m <= n - 2
    uint64_t const linear = 24 * uint64_t{m} - 40;
    if (n < 7) return std::min(linear, exponential);
    return linear;
}

inline uint64_t gate_cost(gate const& g, uint32_t n, cost_model const& model = {}) {
    return mct_cost(g.control_count(), n, model);
}

inline uint64_t circuit_cost(circuit const& c, cost_model const& model = {}) {
    uint64_t total = 0;
    for (auto const& g : c.gates()) total += gate_cost(g, c.lines(), model);
    return total;
}

}  // namespace revsyn
