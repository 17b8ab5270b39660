#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mpj/protocol.hpp"

namespace mpj {

/// Tree-structured pointer jumping: layer l holds b^l live vertices in slots
/// [1, b^l], and the children of layer-l vertex v occupy the contiguous slot
/// block [(v-1)b + 1, vb] of the next layer.
struct TpjShape {
  int branching = 2;  // b >= 2
  int depth = 2;      // k

  TpjShape(int b, int k);
  int n() const { return n_; }

 private:
  int n_ = 0;  // b^(k-1)
};

/// Speaker k-1 writes its whole suffix composition (that composition is x);
/// the output player follows the pointers and reads the answer off the
/// blackboard. Collapsing view, total cost exactly n.
ProtocolDef trivial_protocol(int n, int k);

/// Out-of-order protocol: player j speaks first and announces the vertex
/// reached at layer j-1 (ceil(log2 n) bits); player i < j speaks last among
/// the message senders and announces the answer bit it reaches from there.
/// General NOF view, total cost ceil(log2 n) + 1. Requires k >= 3.
ProtocolDef reordered_protocol(int n, int k, int j, int i);

/// Player 1 tabulates, for each of the b live layer-1 vertices, the bit
/// reached by following the pointers to the end; the output player indexes
/// that table with the start pointer. Total cost b = n^(1/(k-1)).
ProtocolDef tpj_protocol(const TpjShape& shape);

/// Collapsing protocol in which speaker s writes the first budgets[s-1] bits
/// of its suffix composition. The output player follows the pointer chain and
/// answers from the latest message that covers the vertex it reached,
/// assuming 0 for bits that were cut off. Building block for every cheating
/// protocol below; with all budgets zero the output is constantly 0.
ProtocolDef truncating_protocol(int n, int k, std::vector<int> budgets, std::string name,
                                std::vector<std::string> params);

/// Under-budgeted adversary targets. base is one of:
///   "truncated-trivial": speaker k-1 emits the first budget_total bits of x
///   "silent":            nobody speaks, output constantly 0 (budget_total = 0)
///   "first-player":      speaker 1 emits the first budget_total bits of its
///                        composition, everyone else is silent
/// budget_total above n-3 is rejected: such protocols are outside the regime
/// the total-cost attack covers.
ProtocolDef cheating_protocol(std::string_view base, int n, int k, int budget_total);

/// Every speaker truncates its composition to the same per-speaker budget,
/// which must stay below the max-cost threshold n - ceil(0.5 log2 n) - 3.
/// Adversary target for the uniform attack.
ProtocolDef uniform_cheating_protocol(int n, int k, int per_speaker_budget);

/// All instances respecting the tree shape: start in [1, b], every live
/// vertex pointing inside its child block (dead slots pinned to 1), x free.
/// Lexicographic order over (start, middles, x).
std::vector<Instance> tree_instances(const TpjShape& shape);

bool is_tree_instance(const TpjShape& shape, const Instance& inst);

/// Resolve a CLI-style protocol spec "name[:param[:param]]", e.g. "trivial",
/// "reordered:3:2" (j=3, i=2), "tpj:2", "truncated-trivial:7".
ProtocolDef protocol_by_name(std::string_view spec, int n, int k);

}  // namespace mpj
