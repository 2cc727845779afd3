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

#include "revsyn/assignment.hpp"
#include "revsyn/block_type.hpp"
#include "revsyn/blocks.hpp"
#include "revsyn/circuit.hpp"
#include "revsyn/cost.hpp"
#include "revsyn/counting.hpp"
#include "revsyn/decomposition.hpp"
#include "revsyn/errors.hpp"
#include "revsyn/generators.hpp"
#include "revsyn/io.hpp"
#include "revsyn/netlist.hpp"
#include "revsyn/peephole.hpp"
#include "revsyn/permutation.hpp"
#include "revsyn/pipeline.hpp"
#include "revsyn/transform_synth.hpp"
