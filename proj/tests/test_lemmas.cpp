#include <nlohmann/json.hpp>

#include "doctest.h"
#include "mpj/json_io.hpp"
#include "mpj/lemmas.hpp"
#include "test_helpers.hpp"

using namespace mpj;
using namespace mpjtest;

namespace {

// reference implementations straight from the definitions, used to pin the
// frozen expected values below before asserting them

std::pair<BitString, BitString> reference_chain_collision(const MessageOracle& oracle, int n) {
  for (int i2 = 1; i2 <= n - 1; ++i2)
    for (int i1 = 1; i1 < i2; ++i1)
      if (oracle(chain_string(n, i1)) == oracle(chain_string(n, i2)))
        return {chain_string(n, i2), chain_string(n, i1)};
  throw NoCollision("reference: none");
}

std::pair<BitString, BitString> reference_crossing_collision(const MessageOracle& oracle, int n) {
  const std::uint64_t span = std::uint64_t{1} << n;
  for (std::uint64_t xr = 0; xr < span; ++xr)
    for (std::uint64_t yr = 0; yr < span; ++yr) {
      BitString x = BitString::from_rank(xr, n), y = BitString::from_rank(yr, n);
      if (is_crossing(x, y) && oracle(x) == oracle(y)) return {x, y};
    }
  throw NoCollision("reference: none");
}

FoolingState stage1_state(const std::string& xs, const std::string& ys, int vertex) {
  FoolingState st;
  st.x = BitString(xs);
  st.y = BitString(ys);
  st.n = st.x.size();
  st.k = 5;
  st.stage = 1;
  st.start = vertex;
  st.vertex = vertex;
  st.messages = {BitString(0)};
  st.has_dominance = dominance_less(st.x, st.y);
  st.has_crossing = is_crossing(st.x, st.y);
  return st;
}

}  // namespace

TEST_SUITE_BEGIN("lemmas");

TEST_CASE("message oracles enforce their declared budget") {
  MessageOracle bad{4, 2, [](const BitString&) { return BitString(3); }};
  CHECK_THROWS_AS(bad(BitString("0101")), BudgetViolation);
  CHECK_THROWS_AS(constant_oracle(4)(BitString("01")), std::invalid_argument);
}

TEST_CASE("fooling state invariants are checked") {
  FoolingState st = stage1_state("0011", "0111", 2);
  CHECK_NOTHROW(check_fooling_state(st));

  FoolingState lying = st;
  lying.has_dominance = false;
  CHECK_THROWS_AS(check_fooling_state(lying), std::logic_error);

  FoolingState agreeing = st;
  agreeing.vertex = agreeing.start = 1;  // pair agrees at index 1
  CHECK_THROWS_AS(check_fooling_state(agreeing), std::logic_error);
}

TEST_CASE("chain collision on the constant oracle") {
  auto [rx, ry] = reference_chain_collision(constant_oracle(4), 4);
  REQUIRE(rx.str() == "0011");
  REQUIRE(ry.str() == "0111");

  auto [x, y] = find_chain_collision(constant_oracle(4), 4);
  CHECK(x.str() == "0011");
  CHECK(y.str() == "0111");
  CHECK(dominance_less(x, y));
}

TEST_CASE("chain collision on the first-bit oracle") {
  auto [x, y] = find_chain_collision(first_bit_oracle(4), 4);
  CHECK(x.str() == "0011");  // all interior chains share first bit 0
  CHECK(y.str() == "0111");
}

TEST_CASE("popcount saturates the chain budget") {
  // popcount emits ceil(log2(n+1)) bits and separates every chain pair, so
  // the precondition 2^t < n-1 must reject it
  const int n = 8;
  MessageOracle pc = popcount_oracle(n, ceil_log2(std::uint64_t{n} + 1));
  CHECK_THROWS_AS(find_chain_collision(pc, n), PreconditionViolated);

  // and indeed no two chain strings collide under popcount
  std::vector<std::string> seen;
  for (int i = 1; i <= n - 1; ++i) {
    const std::string msg = pc(chain_string(n, i)).str();
    for (const std::string& old : seen) CHECK(old != msg);
    seen.push_back(msg);
  }
}

TEST_CASE("chain collision budget boundary") {
  CHECK(chain_collision_budget_ok(2, 8));        // 4 < 7
  CHECK_FALSE(chain_collision_budget_ok(3, 8));  // 8 >= 7
  CHECK_FALSE(chain_collision_budget_ok(0, 2));  // only one interior chain string
  CHECK_NOTHROW(find_chain_collision(constant_oracle(3), 3));
}

TEST_CASE("chain collisions on random oracles are dominance-ordered") {
  Mixer rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.in(4, 16);
    int t = 0;
    while (chain_collision_budget_ok(t + 1, n)) ++t;
    t = rng.in(0, t);
    MessageOracle oracle = random_oracle(n, t, rng.next());
    auto [x, y] = find_chain_collision(oracle, n);
    CHECK(dominance_less(x, y));
    CHECK(oracle(x) == oracle(y));
    IndexPartition parts = index_partition(x, y);
    CHECK_FALSE(parts.i00.empty());
    CHECK_FALSE(parts.i01.empty());
    CHECK_FALSE(parts.i11.empty());
  }
}

TEST_CASE("pinned collision on the constant oracle") {
  PinnedCollision c = find_pinned_collision(constant_oracle(4), 4);
  CHECK(c.x1.str() == "0100");
  CHECK(c.y1.str() == "0101");
  CHECK(c.d == 4);
}

TEST_CASE("pinned collision on the parity oracle") {
  PinnedCollision c = find_pinned_collision(parity_oracle(4), 4);
  CHECK(c.x1.str() == "0101");
  CHECK(c.y1.str() == "0110");
  CHECK(c.d == 3);
}

TEST_CASE("pinned collision rejects injective budgets") {
  CHECK_THROWS_AS(find_pinned_collision(identity_oracle(6), 6), PreconditionViolated);
}

TEST_CASE("pinned collisions satisfy their contract on random oracles") {
  Mixer rng(55);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.in(4, 14);
    MessageOracle oracle = random_oracle(n, rng.in(0, n - 3), rng.next());
    PinnedCollision c = find_pinned_collision(oracle, n);
    CHECK(c.x1.bit(1) == 0);
    CHECK(c.y1.bit(1) == 0);
    CHECK(c.x1.bit(2) == 1);
    CHECK(c.y1.bit(2) == 1);
    CHECK(c.x1 != c.y1);
    CHECK(oracle(c.x1) == oracle(c.y1));
    REQUIRE(c.d > 2);
    CHECK(c.x1.bit(c.d) == 0);
    CHECK(c.y1.bit(c.d) == 1);
    for (int d = 3; d < c.d; ++d) CHECK_FALSE((c.x1.bit(d) == 0 && c.y1.bit(d) == 1));
  }
}

TEST_CASE("crossing collision on the constant oracle") {
  auto [rx, ry] = reference_crossing_collision(constant_oracle(4), 4);
  REQUIRE(rx.str() == "0011");
  REQUIRE(ry.str() == "0101");

  auto [x, y] = find_crossing_collision(constant_oracle(4), 4);
  CHECK(x.str() == "0011");
  CHECK(y.str() == "0101");
  CHECK(is_crossing(x, y));
}

TEST_CASE("crossing collision on the first-bit oracle") {
  auto [x, y] = find_crossing_collision(first_bit_oracle(4), 4);
  CHECK(x.str() == "0011");
  CHECK(y.str() == "0101");
}

TEST_CASE("crossing collision rejects injective budgets") {
  CHECK_THROWS_AS(find_crossing_collision(identity_oracle(8), 8), PreconditionViolated);
}

TEST_CASE("no crossing pair exists below four positions") {
  CHECK_THROWS_AS(find_crossing_collision(constant_oracle(3), 3), NoCollision);
}

TEST_CASE("crossing collisions match the reference scan on random oracles") {
  Mixer rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.in(4, 7);
    const int t = rng.in(0, n - ceil_half_log2(n) - 2);
    MessageOracle oracle = random_oracle(n, t, rng.next());
    auto got = find_crossing_collision(oracle, n);
    auto want = reference_crossing_collision(oracle, n);
    CHECK(got == want);
  }
}

TEST_CASE("push on the worked dominance pair") {
  FoolingState st = stage1_state("0011", "0111", 2);
  FoolingState out = push(st, constant_oracle(4));
  CHECK(out.middles.back().table() == std::vector<int>{1, 4, 2, 2});
  CHECK(out.x.str() == "0100");
  CHECK(out.y.str() == "0101");
  CHECK(out.vertex == 4);
  check_push_properties(PushKind::Push, st, out, constant_oracle(4));
}

TEST_CASE("push with the parity oracle") {
  FoolingState st = stage1_state("0011", "0111", 2);
  FoolingState out = push(st, parity_oracle(4));
  CHECK(out.middles.back().table() == std::vector<int>{1, 3, 2, 2});
  CHECK(out.x.str() == "0101");
  CHECK(out.y.str() == "0110");
  CHECK(out.vertex == 3);
}

TEST_CASE("a dominance-flagged fooling state always has its vertex in I01") {
  Mixer rng(91);
  for (int trial = 0; trial < 200; ++trial) {
    PushCase pc = make_push_case(PushKind::Push, rng.next());
    const IndexPartition parts = index_partition(pc.state.x, pc.state.y);
    bool found = false;
    for (int j : parts.i01) found |= (j == pc.state.vertex);
    CHECK(found);
    CHECK(parts.i10.empty());
  }
}

TEST_CASE("push preconditions") {
  FoolingState st = stage1_state("0011", "0111", 2);
  CHECK_THROWS_AS(push(st, constant_oracle(4, 2)), PreconditionViolated);  // t > n-3

  FoolingState crossing_only = stage1_state("0110", "1001", 1);
  CHECK_THROWS_AS(push(crossing_only, constant_oracle(4)), PreconditionViolated);
}

TEST_CASE("crosspush on the worked crossing pair") {
  FoolingState st = stage1_state("0110", "1001", 1);
  FoolingState out = crosspush(st, constant_oracle(4));
  CHECK(out.x.str() == "0011");
  CHECK(out.y.str() == "0101");
  CHECK(out.middles.back().table() == std::vector<int>{2, 3, 3, 2});
  CHECK(out.has_crossing);
  check_push_properties(PushKind::CrossPush, st, out, constant_oracle(4));
}

TEST_CASE("crosspush on a dominated pair leaves the empty class unmapped") {
  FoolingState st = stage1_state("0011", "0111", 2);
  FoolingState out = crosspush(st, constant_oracle(4));
  // authoritative mapping computed by the reconstruction identity:
  // I00 -> 1, I01 -> 2, I11 -> 4 against the pair ("0011", "0101")
  CHECK(out.x.str() == "0011");
  CHECK(out.y.str() == "0101");
  CHECK(out.middles.back().table() == std::vector<int>{1, 2, 4, 4});
  check_push_properties(PushKind::CrossPush, st, out, constant_oracle(4));
}

TEST_CASE("crosspush precondition") {
  FoolingState st = stage1_state("0110", "1001", 1);
  CHECK_THROWS_AS(crosspush(st, constant_oracle(4, 4)), PreconditionViolated);  // t = n
}

TEST_CASE("chainpush on the worked pair") {
  FoolingState st = stage1_state("0011", "0111", 2);
  FoolingState out = chainpush(st, constant_oracle(4));
  CHECK(out.x.str() == "0011");
  CHECK(out.y.str() == "0111");
  CHECK(out.middles.back().table() == std::vector<int>{1, 2, 3, 3});
  CHECK(out.has_dominance);
  check_push_properties(PushKind::ChainPush, st, out, constant_oracle(4));
}

TEST_CASE("chainpush preconditions") {
  FoolingState st = stage1_state("0011", "0111", 2);
  const int bound = ceil_log2(std::uint64_t{5}) - 2;  // 1 for n = 4
  CHECK_THROWS_AS(chainpush(st, constant_oracle(4, bound)), PreconditionViolated);

  FoolingState crossing_only = stage1_state("0110", "1001", 1);
  CHECK_THROWS_AS(chainpush(crossing_only, constant_oracle(4)), PreconditionViolated);
}

TEST_CASE("push family properties hold on random cases") {
  for (PushKind kind : {PushKind::Push, PushKind::CrossPush, PushKind::ChainPush}) {
    Mixer rng(static_cast<std::uint64_t>(kind) * 7919 + 13);
    for (int trial = 0; trial < 500; ++trial) {
      PushCase pc = make_push_case(kind, rng.next());
      FoolingState out = apply_push(kind, pc.state, pc.oracle);
      CHECK_NOTHROW(check_push_properties(kind, pc.state, out, pc.oracle));
    }
  }
}

TEST_CASE("fooling states serialize with the documented keys") {
  FoolingState st = stage1_state("0011", "0111", 2);
  st = chainpush(st, constant_oracle(4));
  const nlohmann::json j = st;
  CHECK(j.at("j") == 2);
  CHECK(j.at("x") == "0011");
  CHECK(j.at("y") == "0111");
  CHECK(j.at("v") == 2);
  CHECK(j.at("f_prefix").size() == 2);  // start plus one table
  CHECK(j.at("f_prefix")[0] == 2);
  CHECK(j.at("alphas").size() == 2);
  CHECK(j.at("flags").at("dominance") == true);
  CHECK(j.at("flags").at("crossing") == false);
}

TEST_CASE("searches are deterministic") {
  MessageOracle oracle = random_oracle(10, 3, 424242);
  CHECK(find_chain_collision(oracle, 10) == find_chain_collision(oracle, 10));
  auto p1 = find_pinned_collision(oracle, 10);
  auto p2 = find_pinned_collision(oracle, 10);
  CHECK(p1.x1 == p2.x1);
  CHECK(p1.y1 == p2.y1);
  CHECK(p1.d == p2.d);
  MessageOracle wide = random_oracle(10, 5, 99);
  CHECK(find_crossing_collision(wide, 10) == find_crossing_collision(wide, 10));
}

TEST_SUITE_END();
