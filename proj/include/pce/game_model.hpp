// Copyright 2026 The pce Authors. All rights reserved.
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

#ifndef PCE_GAME_MODEL_HPP_
#define PCE_GAME_MODEL_HPP_

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pce {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document. `path` is a JSON pointer to the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Parameters outside the documented domain of an example or option.
class InvalidParameters : public Error {
 public:
  using Error::Error;
};

enum class NodeKind { kDecision, kTerminal };

// Editable description of a game, as read from or written to a game file.
// Nothing here is checked; GameTree::build turns it into a validated tree.
struct NodeSpec {
  std::string id;
  NodeKind kind = NodeKind::kTerminal;
  int owner = 0;                                // decision only
  std::string info_set;                         // decision only
  std::map<std::string, std::string> children;  // action -> node id
  std::vector<std::vector<double>> payoffs;     // [state][player], terminal only

  bool operator==(const NodeSpec&) const = default;
};

struct InfoSetSpec {
  std::string id;
  int owner = 0;
  std::vector<std::string> actions;
  std::vector<std::string> nodes;

  bool operator==(const InfoSetSpec&) const = default;
};

struct GameSpec {
  std::vector<std::string> states;
  int n_players = 1;
  std::vector<NodeSpec> nodes;
  std::vector<InfoSetSpec> info_sets;
  // info set id -> (action -> probability), for player 0 below the root.
  std::map<std::string, std::map<std::string, double>> chance_strategy;

  bool operator==(const GameSpec&) const = default;
};

struct Violation {
  std::string subject;  // node or information set id ("" for game-level)
  std::string rule;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationResult validate(const GameSpec& spec);

class InvalidGame : public Error {
 public:
  explicit InvalidGame(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Validated, index-based view of a finite extensive-form game whose root is
// a single nature move choosing the state. Immutable once built.
//
// Several states may lead to the same root child; terminal payoffs are
// stored per state, so a subtree that does not depend on the state in shape
// is stored once.
class GameTree {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Node {
    std::string id;
    NodeKind kind;
    int owner;
    std::size_t info_set;               // kNone for terminals
    std::vector<std::size_t> children;  // aligned with the info set's actions
    std::size_t parent;                 // kNone for the root
    std::size_t parent_action;          // index into the parent's actions
    std::vector<std::vector<double>> payoffs;
  };

  struct InfoSet {
    std::string id;
    int owner;
    std::vector<std::string> actions;
    std::vector<std::size_t> nodes;
  };

  // Throws InvalidGame when validate(spec) reports violations.
  static GameTree build(const GameSpec& spec);

  const GameSpec& spec() const { return spec_; }

  std::size_t num_states() const { return spec_.states.size(); }
  const std::string& state_id(std::size_t s) const { return spec_.states[s]; }
  std::size_t state_index(const std::string& id) const;
  int num_players() const { return spec_.n_players; }

  std::size_t num_nodes() const { return nodes_.size(); }
  const Node& node(std::size_t n) const { return nodes_[n]; }
  std::size_t node_index(const std::string& id) const;
  std::size_t root() const { return root_; }
  // Child of the root chosen by nature in state s.
  std::size_t root_child(std::size_t s) const { return nodes_[root_].children[s]; }

  std::size_t num_info_sets() const { return info_sets_.size(); }
  const InfoSet& info_set(std::size_t i) const { return info_sets_[i]; }
  std::size_t info_set_index(const std::string& id) const;
  std::size_t root_info_set() const { return nodes_[root_].info_set; }
  // Position of node n within its information set's node list.
  std::size_t position_in_info_set(std::size_t n) const { return position_[n]; }

  // Information sets below the root in document order.
  const std::vector<std::size_t>& non_root_info_sets() const { return non_root_; }
  // Information sets of strategic players (owner >= 1) in document order.
  const std::vector<std::size_t>& strategic_info_sets() const { return strategic_; }
  // Non-root information sets ordered so that every set comes after the sets
  // containing the parents of its nodes (document order breaks ties).
  const std::vector<std::size_t>& info_sets_forward() const { return forward_; }

  // s0 at a player-0 information set; empty for strategic sets and the root.
  const std::vector<double>& chance(std::size_t info_set) const { return chance_[info_set]; }
  bool chance_fully_mixed() const;

  // True iff some path from the root through nature's move s reaches n.
  bool node_feasible(std::size_t n, std::size_t s) const { return node_states_[n][s]; }
  // Feasible set of an information set: states with a path reaching it.
  const std::vector<bool>& feasible_mask(std::size_t info_set) const { return info_set_states_[info_set]; }

  // Largest absolute terminal payoff.
  double payoff_scale() const { return payoff_scale_; }

 private:
  GameSpec spec_;
  std::vector<Node> nodes_;
  std::vector<InfoSet> info_sets_;
  std::vector<std::vector<double>> chance_;
  std::vector<std::vector<bool>> node_states_;
  std::vector<std::vector<bool>> info_set_states_;
  std::vector<std::size_t> position_;
  std::vector<std::size_t> non_root_, strategic_, forward_;
  std::unordered_map<std::string, std::size_t> node_lookup_, info_set_lookup_, state_lookup_;
  std::size_t root_ = 0;
  double payoff_scale_ = 0.0;
};

// Feasible states of the named information set, as state ids in state order.
// Throws Error for an unknown id or for the root information set.
std::vector<std::string> feasible_states(const GameTree& tree, const std::string& info_set);

// Canonical JSON text (sorted keys, two-space indent).
std::string serialize(const GameSpec& spec);
std::string serialize(const GameTree& tree);
// Parses and checks a game document. Throws SchemaError on schema problems
// and InvalidGame when the document is well-formed but violates an invariant.
GameSpec parse_game_spec(const std::string& document);
GameTree deserialize(const std::string& document);

}  // namespace pce

#endif  // PCE_GAME_MODEL_HPP_
