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

#include "qwalk/graph.hpp"

namespace qwalk {

// Edge-list text format: a header line "n m" followed by m lines "u v",
// 0-indexed and whitespace separated.

Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);

/// Writes the header and the edges in sorted order.
void write_edge_list(std::ostream& out, const Graph& g);

} // namespace qwalk
