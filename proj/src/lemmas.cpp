#include "mpj/lemmas.hpp"

#include <map>
#include <optional>
#include <unordered_map>

namespace mpj {

BitString MessageOracle::operator()(const BitString& input) const {
  if (input.size() != n)
    throw std::invalid_argument("MessageOracle: input length " + std::to_string(input.size()) +
                                ", expected " + std::to_string(n));
  BitString out = fn(input);
  if (out.size() != budget)
    throw BudgetViolation("MessageOracle emitted " + std::to_string(out.size()) +
                          " bits, declared budget is " + std::to_string(budget));
  return out;
}

void check_fooling_state(const FoolingState& state) {
  auto fail = [](const std::string& what) {
    throw std::logic_error("FoolingState invariant violated: " + what);
  };
  if (state.n < 1) fail("n < 1");
  if (state.stage < 1) fail("stage < 1");
  if (state.x.size() != state.n || state.y.size() != state.n) fail("pair length != n");
  if (state.start < 1 || state.start > state.n) fail("start out of [1, n]");
  if (static_cast<int>(state.middles.size()) != state.stage - 1)
    fail("expected stage-1 middle functions");
  if (static_cast<int>(state.messages.size()) != state.stage)
    fail("expected stage messages");
  if (state.vertex < 1 || state.vertex > state.n) fail("vertex out of [1, n]");
  if (state.x.bit(state.vertex) == state.y.bit(state.vertex))
    fail("pair agrees at the fooling vertex " + std::to_string(state.vertex));
  int v = state.start;
  for (const PointerFn& f : state.middles) v = f(v);
  if (v != state.vertex) fail("vertex does not match the followed prefix");
  if (state.has_dominance != dominance_less(state.x, state.y)) fail("dominance flag inaccurate");
  if (state.has_crossing != is_crossing(state.x, state.y)) fail("crossing flag inaccurate");
}

bool chain_collision_budget_ok(int budget, int n) {
  if (budget < 0 || n < 2) return false;
  return budget < 63 && (std::uint64_t{1} << budget) < static_cast<std::uint64_t>(n - 1);
}

std::pair<BitString, BitString> find_chain_collision(const MessageOracle& oracle, int n) {
  if (oracle.n != n) throw std::invalid_argument("find_chain_collision: oracle arity mismatch");
  if (!chain_collision_budget_ok(oracle.budget, n))
    throw PreconditionViolated("find_chain_collision: 2^t < n-1 violated: 2^" +
                               std::to_string(oracle.budget) +
                               " >= " + std::to_string(n - 1));
  std::map<std::string, int> first_index;
  for (int i = 1; i <= n - 1; ++i) {
    const std::string key = oracle(chain_string(n, i)).str();
    auto [it, inserted] = first_index.emplace(key, i);
    if (!inserted)
      return {chain_string(n, i), chain_string(n, it->second)};  // more zeros first
  }
  throw NoCollision("no chain collision among interior chain strings; pigeonhole premise broken");
}

PinnedCollision find_pinned_collision(const MessageOracle& oracle, int n) {
  if (oracle.n != n) throw std::invalid_argument("find_pinned_collision: oracle arity mismatch");
  if (n < 3 || n > 62)
    throw std::invalid_argument("find_pinned_collision: n out of supported range [3, 62]");
  if (oracle.budget > n - 3)
    throw PreconditionViolated("find_pinned_collision: t <= n-3 violated: " +
                               std::to_string(oracle.budget) + " > " + std::to_string(n - 3));

  const std::uint64_t span = std::uint64_t{1} << (n - 2);
  std::unordered_map<std::string, std::uint64_t> first_rank;
  for (std::uint64_t q = 0; q < span; ++q) {
    const std::uint64_t rank = span + q;  // position 1 = 0, position 2 = 1
    const BitString candidate = BitString::from_rank(rank, n);
    const std::string key = oracle(candidate).str();
    auto [it, inserted] = first_rank.emplace(key, rank);
    if (inserted) continue;

    BitString a = BitString::from_rank(it->second, n);
    BitString b = candidate;
    std::optional<int> forward, backward;
    for (int d = 3; d <= n; ++d) {
      if (!forward && a.bit(d) == 0 && b.bit(d) == 1) forward = d;
      if (!backward && a.bit(d) == 1 && b.bit(d) == 0) backward = d;
    }
    if (forward) return {std::move(a), std::move(b), *forward};
    return {std::move(b), std::move(a), *backward};
  }
  throw NoCollision("no pinned collision; pigeonhole premise broken");
}

std::pair<BitString, BitString> find_crossing_collision(const MessageOracle& oracle, int n) {
  if (oracle.n != n) throw std::invalid_argument("find_crossing_collision: oracle arity mismatch");
  if (n < 1 || n > 24)
    throw std::invalid_argument("find_crossing_collision: n out of supported range [1, 24]");
  const int bound = n - ceil_half_log2(static_cast<std::uint64_t>(n)) - 2;
  if (oracle.budget > bound)
    throw PreconditionViolated("find_crossing_collision: t <= n - ceil(0.5*log2 n) - 2 violated: " +
                               std::to_string(oracle.budget) + " > " + std::to_string(bound));

  const std::uint64_t span = std::uint64_t{1} << n;
  const std::uint64_t mask = span - 1;
  std::vector<std::uint64_t> message(span);
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> bucket;
  for (std::uint64_t r = 0; r < span; ++r) {
    message[r] = oracle(BitString::from_rank(r, n)).rank();
    bucket[message[r]].push_back(r);
  }
  for (std::uint64_t x = 0; x < span; ++x) {
    const int ones = std::popcount(x);
    if (ones < 2 || n - ones < 2) continue;  // crossing needs two of each bit in x
    for (std::uint64_t y : bucket[message[x]]) {
      if (y == x) continue;
      const bool crossing = (x & y) && (~x & ~y & mask) && (x & ~y) && (~x & y);
      if (crossing) return {BitString::from_rank(x, n), BitString::from_rank(y, n)};
    }
  }
  throw NoCollision(
      "no crossing collision found by exhaustive scan; this empirically falsifies the "
      "crossing lemma at n = " + std::to_string(n) + ", t = " + std::to_string(oracle.budget));
}

namespace {

/// Build f_{stage+1} by sending every index to the representative of its
/// class, then advance the state past the next speaker. Representatives are
/// given per class label; labels absent from the state's pair need none.
FoolingState advance_state(const FoolingState& state, const MessageOracle& next_oracle,
                           const std::optional<int> (&rep)[2][2], const BitString& x1,
                           const BitString& y1) {
  const int n = state.n;
  std::vector<int> table(static_cast<std::size_t>(n));
  for (int s = 1; s <= n; ++s) {
    const int a = state.x.bit(s);
    const int b = state.y.bit(s);
    if (!rep[a][b])
      throw std::logic_error("push: class I" + std::to_string(a) + std::to_string(b) +
                             " of the current pair has no representative in the new pair");
    table[static_cast<std::size_t>(s - 1)] = *rep[a][b];
  }
  PointerFn f(std::move(table));

  for (int s = 1; s <= n; ++s) {
    if (state.x.bit(s) != x1.bit(f(s)) || state.y.bit(s) != y1.bit(f(s)))
      throw std::logic_error("push: reconstruction identity fails at index " + std::to_string(s));
  }

  const BitString alpha = next_oracle(x1);
  if (next_oracle(y1) != alpha)
    throw std::logic_error("push: collision pair is distinguished by the oracle");

  FoolingState next;
  next.n = n;
  next.k = state.k;
  next.stage = state.stage + 1;
  next.start = state.start;
  next.middles = state.middles;
  next.middles.push_back(f);
  next.messages = state.messages;
  next.messages.push_back(alpha);
  next.x = x1;
  next.y = y1;
  next.vertex = f(state.vertex);
  next.has_dominance = dominance_less(x1, y1);
  next.has_crossing = is_crossing(x1, y1);
  check_fooling_state(next);
  return next;
}

}  // namespace

FoolingState push(const FoolingState& state, const MessageOracle& next_oracle) {
  check_fooling_state(state);
  if (!state.has_dominance)
    throw PreconditionViolated("push: state must carry a dominance-ordered pair");
  if (next_oracle.budget > state.n - 3)
    throw PreconditionViolated("push: t <= n-3 violated: " + std::to_string(next_oracle.budget) +
                               " > " + std::to_string(state.n - 3));

  PinnedCollision c = find_pinned_collision(next_oracle, state.n);
  // x1 pins I00 -> 1, I11 -> 2 and the differing index d hosts I01;
  // I10 is empty by dominance
  std::optional<int> rep[2][2];
  rep[0][0] = 1;
  rep[1][1] = 2;
  rep[0][1] = c.d;
  return advance_state(state, next_oracle, rep, c.x1, c.y1);
}

FoolingState crosspush(const FoolingState& state, const MessageOracle& next_oracle) {
  check_fooling_state(state);
  const int bound = state.n - ceil_half_log2(static_cast<std::uint64_t>(state.n)) - 2;
  if (next_oracle.budget > bound)
    throw PreconditionViolated("crosspush: t <= n - ceil(0.5*log2 n) - 2 violated: " +
                               std::to_string(next_oracle.budget) + " > " +
                               std::to_string(bound));

  auto [x1, y1] = find_crossing_collision(next_oracle, state.n);
  const IndexPartition parts = index_partition(x1, y1);
  std::optional<int> rep[2][2];
  rep[0][0] = parts.i00.front();
  rep[0][1] = parts.i01.front();
  rep[1][0] = parts.i10.front();
  rep[1][1] = parts.i11.front();
  return advance_state(state, next_oracle, rep, x1, y1);
}

FoolingState chainpush(const FoolingState& state, const MessageOracle& next_oracle) {
  check_fooling_state(state);
  if (!state.has_dominance)
    throw PreconditionViolated("chainpush: state must carry a dominance-ordered pair");
  const int bound = ceil_log2(static_cast<std::uint64_t>(state.n) + 1) - 2;
  if (next_oracle.budget >= bound)
    throw PreconditionViolated("chainpush: t < ceil(log2(n+1)) - 2 violated: " +
                               std::to_string(next_oracle.budget) + " >= " +
                               std::to_string(bound));

  auto [x1, y1] = find_chain_collision(next_oracle, state.n);
  const IndexPartition parts = index_partition(x1, y1);
  // interior chain strings make I00, I01 and I11 all nonempty; I10 is empty
  std::optional<int> rep[2][2];
  rep[0][0] = parts.i00.front();
  rep[0][1] = parts.i01.front();
  rep[1][1] = parts.i11.front();
  return advance_state(state, next_oracle, rep, x1, y1);
}

}  // namespace mpj
