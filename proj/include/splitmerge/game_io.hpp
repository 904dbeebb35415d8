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

#ifndef SPLITMERGE_GAME_IO_HPP
#define SPLITMERGE_GAME_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "splitmerge/coalition.hpp"
#include "splitmerge/game.hpp"

namespace splitmerge {

// Game files are JSON objects:
//
//   {"name": "G2", "n": 2, "values": [0, 1, 0, 0.5]}
//
// where values[mask] = v(S) and bit b of mask is player b+1, or
//
//   {"n": 3, "default": "additive", "sparse": {"1": 1, "2": 2, "1,3": 0.5}}
//
// where keys are ascending 1-based ids. Unlisted coalitions are 0 under
// "zero" and the sum of their singletons under "additive"; the empty
// coalition may be listed only as key "" with value 0.

/// Throws FormatError on malformed text and ValidationError on a table that
/// violates the Game invariants.
Game load_game(std::string_view text, int max_players = kDefaultMaxPlayers);
Game load_game_file(const std::filesystem::path& path,
                    int max_players = kDefaultMaxPlayers);

/// Dense form; load_game(save_game(g)) == g bit-exactly.
std::string save_game(const Game& g);
void save_game_file(const Game& g, const std::filesystem::path& path);

/// "1,2,5" -> coalition {1,2,5}. Accepts surrounding brackets and spaces.
Coalition parse_coalition(std::string_view text, int n);

/// Partition as nested arrays of 1-based ids, e.g. [[1,2],[3]].
nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j, int n);
Partition parse_partition(std::string_view text, int n);

}  // namespace splitmerge

#endif  // SPLITMERGE_GAME_IO_HPP
