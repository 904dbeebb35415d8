// Copyright 2026 The splitmerge Authors
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

#include "splitmerge/game_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "splitmerge/errors.hpp"

namespace splitmerge {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double as_real(const json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw FormatError(where + ": non-finite value");
  return x;
}

}  // namespace

Coalition parse_coalition(std::string_view text, int n) {
  Mask mask = 0;
  int last = 0;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '[' || text[pos] == ']' || text[pos] == '{' ||
            text[pos] == '}')) {
      ++pos;
    }
  };
  skip();
  while (pos < text.size()) {
    int id = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), id);
    if (ec != std::errc{}) {
      throw FormatError("malformed coalition key '" + std::string(text) + "'");
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    if (id < 1 || id > n) {
      throw DomainError("player " + std::to_string(id) + " outside 1.." +
                        std::to_string(n));
    }
    if (id <= last) {
      throw FormatError("coalition key '" + std::string(text) +
                        "' must list ids in strictly ascending order");
    }
    last = id;
    mask |= Mask{1} << (id - 1);
    skip();
    if (pos < text.size()) {
      if (text[pos] != ',') {
        throw FormatError("malformed coalition key '" + std::string(text) + "'");
      }
      ++pos;
      skip();
    }
  }
  return Coalition(mask);
}

Game load_game(std::string_view text, int max_players) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("game file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("game file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw FormatError("game file needs integer field 'n'");
  }
  const int n = doc["n"].get<int>();
  if (n < 1 || n > std::min(max_players, kMaxMaskPlayers)) {
    throw ValidationError("player count " + std::to_string(n) +
                          " outside [1, " + std::to_string(max_players) + "]");
  }
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw FormatError("'name' must be a string");
    name = doc["name"].get<std::string>();
  }
  const std::size_t size = std::size_t{1} << n;
  const bool dense = doc.contains("values");
  const bool sparse = doc.contains("sparse");
  if (dense == sparse) {
    throw FormatError("game file needs exactly one of 'values' or 'sparse'");
  }

  std::vector<double> v(size, 0.0);
  if (dense) {
    const json& arr = doc["values"];
    if (!arr.is_array()) throw FormatError("'values' must be an array");
    if (arr.size() != size) {
      throw FormatError("'values' has " + std::to_string(arr.size()) +
                        " entries, expected 2^" + std::to_string(n) + " = " +
                        std::to_string(size));
    }
    for (std::size_t m = 0; m < size; ++m) {
      v[m] = as_real(arr[m], "values[" + std::to_string(m) + "]");
    }
    if (v[0] != 0.0) throw FormatError("v(empty set) must be 0");
  } else {
    const json& map = doc["sparse"];
    if (!map.is_object()) throw FormatError("'sparse' must be an object");
    std::string fill = "zero";
    if (doc.contains("default")) {
      if (!doc["default"].is_string()) {
        throw FormatError("'default' must be \"zero\" or \"additive\"");
      }
      fill = doc["default"].get<std::string>();
    }
    if (fill != "zero" && fill != "additive") {
      throw FormatError("'default' must be \"zero\" or \"additive\", got '" +
                        fill + "'");
    }
    std::vector<bool> given(size, false);
    for (const auto& [key, val] : map.items()) {
      const Coalition s = parse_coalition(key, n);
      const double x = as_real(val, "sparse[\"" + key + "\"]");
      if (s.empty() && x != 0.0) throw FormatError("v(empty set) must be 0");
      v[s.mask()] = x;
      given[s.mask()] = true;
    }
    if (fill == "additive") {
      for (std::size_t m = 1; m < size; ++m) {
        if (given[m] || std::has_single_bit(m)) continue;
        double total = 0.0;
        for (PlayerId i : Coalition(static_cast<Mask>(m)).members()) {
          total += v[Coalition::singleton(i.index).mask()];
        }
        v[m] = total;
      }
    }
  }
  return Game(n, std::move(v), std::move(name), max_players);
}

Game load_game_file(const std::filesystem::path& path, int max_players) {
  return load_game(read_file(path), max_players);
}

std::string save_game(const Game& g) {
  json doc = json::object();
  if (!g.name().empty()) doc["name"] = g.name();
  doc["n"] = g.n();
  doc["values"] = std::vector<double>(g.values().begin(), g.values().end());
  return doc.dump() + "\n";
}

void save_game_file(const Game& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << save_game(g);
}

json partition_to_json(const Partition& p) {
  json out = json::array();
  for (const Coalition c : p.blocks()) {
    json block = json::array();
    for (PlayerId i : c.members()) block.push_back(i.display());
    out.push_back(std::move(block));
  }
  return out;
}

Partition partition_from_json(const json& j, int n) {
  if (!j.is_array()) throw FormatError("partition must be an array of arrays");
  std::vector<Coalition> blocks;
  for (const json& block : j) {
    if (!block.is_array()) {
      throw FormatError("partition must be an array of arrays");
    }
    Mask mask = 0;
    for (const json& id : block) {
      if (!id.is_number_integer()) {
        throw FormatError("partition entries must be integer player ids");
      }
      const int k = id.get<int>();
      if (k < 1 || k > n) {
        throw DomainError("player " + std::to_string(k) + " outside 1.." +
                          std::to_string(n));
      }
      mask |= Mask{1} << (k - 1);
    }
    blocks.emplace_back(mask);
  }
  return canonicalize(std::move(blocks), n);
}

Partition parse_partition(std::string_view text, int n) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("partition is not valid JSON: " + std::string(text));
  }
  return partition_from_json(j, n);
}

}  // namespace splitmerge
