// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qwalk/marked.hpp"
#include "qwalk/stationary.hpp"

namespace qwalk {

// Assignment file: one line "i j c" per unordered internal edge followed by a
// trailing line "a <value>". Values use the snapshot amplitude formatting, so
// building a state from a parsed file reproduces the snapshot of the state
// the file was written from.

struct AssignmentFile {
    std::vector<EdgeCoefficient> coefficients;
    std::optional<double> scale_a;
};

/// Writes all coefficients, then the shared scale of the combined state.
void write_assignment(std::ostream& out, const Graph& g, std::span<const StationaryAssignment> assignments);

AssignmentFile read_assignment(std::istream& in);
AssignmentFile read_assignment(const std::filesystem::path& path);

/**
 * Distributes file coefficients over the given components and injects them.
 * Rejects edges that belong to no component and, when the file carries a
 * scale, a value that differs from the recomputed one by more than 1e-12
 * relative.
 */
std::vector<StationaryAssignment> assignments_from_file(const Graph& g, std::span<const MarkedComponent> components,
                                                        const AssignmentFile& file);

} // namespace qwalk
