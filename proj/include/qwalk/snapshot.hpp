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
#include <string>

#include "qwalk/graph.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// State snapshot: one line per arc "v c amplitude" in arc order, amplitude in
// scientific notation with 17 significant digits so that reading a snapshot
// back reproduces every amplitude bit for bit.

std::string format_amplitude(double x);

void write_snapshot(std::ostream& out, const Graph& g, const WalkState& s);
WalkState read_snapshot(std::istream& in, const Graph& g);
WalkState read_snapshot(const std::filesystem::path& path, const Graph& g);

} // namespace qwalk
