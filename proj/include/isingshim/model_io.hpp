// Copyright 2026 The isingshim Authors.
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

#include <iosfwd>
#include <string>

#include "isingshim/ising_model.hpp"

namespace isingshim {

// Plain-text model format, one assignment per line:
//
//   # comment
//   i h      field on spin i
//   i j J    coupling between spins i and j
//
// The spin count is one more than the largest index mentioned. Assigning the
// same field or coupling twice, a zero coupling, or a self coupling is a
// ParseError carrying the offending line number.
IsingModel read_model(std::istream& in);
IsingModel read_model_file(const std::string& path);

// Writes nonzero fields and all couplings in the same format, using
// shortest round-trip decimal representations.
void write_model(std::ostream& out, const IsingModel& model);

}  // namespace isingshim
