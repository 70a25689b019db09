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

#include "isingshim/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "isingshim/errors.hpp"
#include "isingshim/format.hpp"

namespace isingshim {

namespace {

int parse_index(const std::string& token, std::size_t line) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value < 0) {
    throw ParseError(line, "expected a nonnegative integer index, got '" + token + "'");
  }
  return value;
}

double parse_value(const std::string& token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "expected a number, got '" + token + "'");
  }
  return value;
}

}  // namespace

IsingModel read_model(std::istream& in) {
  std::map<int, double> fields;
  std::map<std::pair<int, int>, double> couplings;
  int max_index = -1;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty()) continue;

    if (parts.size() == 2) {
      const int i = parse_index(parts[0], line_no);
      const double h = parse_value(parts[1], line_no);
      if (!fields.emplace(i, h).second) {
        throw ParseError(line_no, "field on spin " + parts[0] + " assigned twice");
      }
      max_index = std::max(max_index, i);
    } else if (parts.size() == 3) {
      int i = parse_index(parts[0], line_no);
      int j = parse_index(parts[1], line_no);
      const double value = parse_value(parts[2], line_no);
      if (i == j) throw ParseError(line_no, "self coupling on spin " + parts[0]);
      if (value == 0.0) throw ParseError(line_no, "zero coupling is not allowed");
      if (i > j) std::swap(i, j);
      if (!couplings.emplace(std::make_pair(i, j), value).second) {
        throw ParseError(line_no, "coupling (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ") assigned twice");
      }
      max_index = std::max({max_index, i, j});
    } else {
      throw ParseError(line_no, "expected 2 or 3 tokens, got " + std::to_string(parts.size()));
    }
  }

  const int n = max_index + 1;
  std::vector<double> h(static_cast<std::size_t>(n), 0.0);
  for (auto [i, value] : fields) h[i] = value;
  std::vector<Coupling> list;
  for (const auto& [key, value] : couplings) list.push_back({key.first, key.second, value});
  return IsingModel(n, std::move(h), std::move(list));
}

IsingModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open model file '" + path + "'");
  return read_model(in);
}

void write_model(std::ostream& out, const IsingModel& model) {
  for (int i = 0; i < model.num_spins(); ++i) {
    if (model.field(i) != 0.0) out << i << ' ' << format_double(model.field(i)) << '\n';
  }
  // Pins the spin count when the highest spin is otherwise unmentioned.
  if (model.num_spins() > 0 && model.field(model.num_spins() - 1) == 0.0) {
    bool mentioned = false;
    for (const auto& c : model.couplings()) mentioned |= c.j == model.num_spins() - 1;
    if (!mentioned) out << model.num_spins() - 1 << " 0\n";
  }
  for (const auto& c : model.couplings()) {
    out << c.i << ' ' << c.j << ' ' << format_double(c.value) << '\n';
  }
}

}  // namespace isingshim
