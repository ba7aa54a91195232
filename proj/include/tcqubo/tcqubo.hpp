// Copyright 2026 The tc-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "tcqubo/decoder.hpp"
#include "tcqubo/error.hpp"
#include "tcqubo/generate.hpp"
#include "tcqubo/graph.hpp"
#include "tcqubo/hamiltonian.hpp"
#include "tcqubo/io.hpp"
#include "tcqubo/layout.hpp"
#include "tcqubo/oracle.hpp"
#include "tcqubo/phylo.hpp"
#include "tcqubo/phylo_io.hpp"
#include "tcqubo/polynomial.hpp"
#include "tcqubo/solver.hpp"
