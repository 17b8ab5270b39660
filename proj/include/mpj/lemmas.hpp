#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mpj/core.hpp"
#include "mpj/errors.hpp"
#include "mpj/intlog.hpp"

namespace mpj {

/// One player's message function with everything except the suffix
/// composition frozen: a deterministic map {0,1}^n -> {0,1}^budget.
struct MessageOracle {
  int n = 0;
  int budget = 0;
  std::function<BitString(const BitString&)> fn;

  BitString operator()(const BitString& input) const;
};

/// The adversary's rolling j-fooling pair together with the prefix it is
/// consistent with. x and y are the suffix compositions at layer `stage`;
/// `vertex` is the vertex reached by following start, f_2, ..., f_stage, and
/// the fooling condition x^(vertex) != y^(vertex) holds throughout.
struct FoolingState {
  int n = 0;
  int k = 0;
  int stage = 0;                    // j
  int start = 0;                    // f_1
  std::vector<PointerFn> middles;   // f_2 .. f_stage
  std::vector<BitString> messages;  // alpha_1 .. alpha_stage
  BitString x, y;
  int vertex = 0;  // v_stage
  bool has_dominance = false;
  bool has_crossing = false;
};

/// Validate the locally checkable FoolingState invariants (sizes, fooling
/// condition, flag accuracy). Throws std::logic_error with a diagnostic.
void check_fooling_state(const FoolingState& state);

/// Budget bound for chain collisions: need 2^t < n - 1 distinct values over
/// the n-1 interior chain strings.
bool chain_collision_budget_ok(int budget, int n);

/// Scan the interior chain strings chain_string(n, 1..n-1) in increasing i
/// and return the first equal-message pair, ordered so the more-zeroed
/// string comes first (hence dominance_less(first, second)). The interior
/// restriction guarantees classes i00, i01 and i11 of the pair are nonempty.
std::pair<BitString, BitString> find_chain_collision(const MessageOracle& oracle, int n);

/// Scan strings with position 1 = 0 and position 2 = 1 in lexicographic
/// order; return the first equal-message pair plus the smallest index d > 2
/// with first^(d) = 0 and second^(d) = 1 (the pair is swapped if needed to
/// make such a d exist). Requires budget <= n - 3.
struct PinnedCollision {
  BitString x1, y1;
  int d = 0;
};
PinnedCollision find_pinned_collision(const MessageOracle& oracle, int n);

/// Exhaustive scan over ordered string pairs in lexicographic order; return
/// the first crossing pair with equal messages. Requires
/// budget <= n - ceil(0.5 log2 n) - 2.
std::pair<BitString, BitString> find_crossing_collision(const MessageOracle& oracle, int n);

/// Advance a dominance-ordered fooling state past the next speaker using a
/// pinned collision. Requires next budget <= n - 3.
FoolingState push(const FoolingState& state, const MessageOracle& next_oracle);

/// Advance any fooling state past the next speaker using a crossing
/// collision; the output pair is crossing. Requires next budget
/// <= n - ceil(0.5 log2 n) - 2.
FoolingState crosspush(const FoolingState& state, const MessageOracle& next_oracle);

/// Advance a dominance-ordered fooling state past the next speaker using a
/// chain collision; dominance is preserved. Requires next budget
/// < ceil(log2(n+1)) - 2.
FoolingState chainpush(const FoolingState& state, const MessageOracle& next_oracle);

}  // namespace mpj
