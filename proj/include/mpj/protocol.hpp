#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpj/core.hpp"
#include "mpj/errors.hpp"

namespace mpj {

/// How much of the input a player gets to see besides the blackboard.
enum class ViewModel { GeneralNOF, Collapsing, Conservative, Myopic };

std::string_view to_string(ViewModel m);
ViewModel view_model_from_string(std::string_view name);  // case-sensitive

/// Everything a speaker's oracle is allowed to read. Fields are populated
/// per the view model; a view never contains the piece written on the
/// owning player's forehead (start for player 1, f_i for players 2..k-1,
/// x for player k).
struct PlayerView {
  int player = 0;  // owner, in [1, k]
  int n = 0;
  int k = 0;
  ViewModel model = ViewModel::GeneralNOF;
  std::vector<BitString> messages;  // blackboard: messages of earlier speakers

  std::optional<int> start;                    // f_1, when visible
  std::map<int, PointerFn> middles;            // layer -> f_layer, visible middles
  std::optional<BitString> x;                  // final layer, when visible
  std::optional<BitString> suffix_composition; // collapsing: x o f_{k-1} o ... o f_{player+1}
  std::optional<int> behind_vertex;            // conservative: f_{player-1}(...f_2(start)...)

  bool operator==(const PlayerView&) const = default;
};

using MessageFn = std::function<BitString(const PlayerView&)>;
using OutputFn = std::function<int(const PlayerView&)>;

/// A one-round fixed-order deterministic protocol. Speakers 1..k-1 (positions
/// in speaking_order) each write one message of exactly their declared budget
/// on the blackboard; the player at position k announces the output bit and
/// sends nothing.
struct ProtocolDef {
  std::string name;                 // built-in identifier, for reports
  std::vector<std::string> params;  // factory parameters, as given
  int n = 0;
  int k = 0;
  ViewModel view_model = ViewModel::GeneralNOF;
  std::vector<int> speaking_order;  // permutation of [1, k]; speaking_order[s-1] speaks s-th
  std::vector<int> budgets;         // k-1 entries, bits emitted by speakers 1..k-1
  std::vector<MessageFn> message_fns;
  OutputFn output_fn;

  bool identity_order() const;
};

/// One run's record.
struct Transcript {
  std::vector<BitString> messages;
  int output = 0;
  int total_cost = 0;
  int max_cost = 0;

  bool operator==(const Transcript&) const = default;
};

/// Assemble the view of the speaker at position `speaker_pos`, given the
/// messages already on the blackboard.
PlayerView build_view(const Instance& inst, const ProtocolDef& protocol, int speaker_pos,
                      const std::vector<BitString>& prior_messages);

/// Execute the protocol on one instance. Budgets are enforced: an oracle
/// emitting the wrong number of bits raises BudgetViolation naming the
/// speaker.
Transcript run(const ProtocolDef& protocol, const Instance& inst);

int total_cost(const ProtocolDef& protocol);
int max_cost(const ProtocolDef& protocol);

}  // namespace mpj
