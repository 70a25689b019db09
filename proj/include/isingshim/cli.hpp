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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "isingshim/sampler.hpp"

namespace isingshim::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kEmptyResult = 3, kBudgetExceeded = 4 };

struct OrbitsArgs {
  std::string model;
  std::optional<std::string> out;  // JSON goes to the stream when empty
};

struct EmbedArgs {
  std::string pattern;
  std::string hardware = "pegasus:16";
  std::uint64_t seed = 0;
  std::string out = "embeddings.json";
  std::size_t max_embeddings = 0;  // 0 means as many as fit
  int block = 2;
  std::uint64_t node_budget = 200'000;
  int restarts = 1;
};

struct RunArgs {
  std::string experiment;  // preset name or config JSON path
  std::optional<std::uint64_t> seed;
  std::string out_dir = "run_output";
  bool full_scale = false;
  int threads = 1;
  std::optional<int> iterations;
  std::optional<int> adapt_every;  // enables step-size adaptation every k iterations
};

struct NoiseArgs {
  std::string hardware;  // hardware spec, or empty to use `model`
  std::string model;
  NoiseSpec spec;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
};

// Each command writes its report to `out` and returns an exit code. Input
// errors surface as exceptions; run_cli maps them to exit codes.
int cmd_orbits(const OrbitsArgs& args, std::ostream& out);
int cmd_embed(const EmbedArgs& args, std::ostream& out);
int cmd_run(const RunArgs& args, std::ostream& out);
int cmd_noise_gen(const NoiseArgs& args, std::ostream& out);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isingshim::cli
