#include "doctest.h"
#include "mpj/adversary.hpp"
#include "mpj/oracle.hpp"
#include "mpj/protocols.hpp"
#include "test_helpers.hpp"

using namespace mpj;

TEST_SUITE_BEGIN("protocols");

TEST_CASE("trivial protocol costs n and is exhaustively correct at (3,3)") {
  ProtocolDef p = trivial_protocol(3, 3);
  CHECK(total_cost(p) == 3);
  ExhaustiveReport report = exhaustive_report(p);
  CHECK(report.total == 648);
  CHECK(report.correct == 648);
  CHECK(total_cost(trivial_protocol(5, 3)) == 5);
}

TEST_CASE("trivial protocol on the all-identity instance") {
  Instance inst(2, 3, 1, {PointerFn::identity(2)}, BitString("10"));
  CHECK(run(trivial_protocol(2, 3), inst).output == 1);
}

TEST_CASE("trivial protocol survives random large instances") {
  ProtocolDef p = trivial_protocol(10, 5);
  mpjtest::Mixer rng(3);
  for (int trial = 0; trial < 100'000; ++trial) {
    std::vector<PointerFn> middles;
    for (int layer = 2; layer <= 4; ++layer) {
      std::vector<int> table(10);
      for (int& v : table) v = rng.in(1, 10);
      middles.emplace_back(std::move(table));
    }
    BitString x(10);
    for (int pos = 1; pos <= 10; ++pos) x.set_bit(pos, static_cast<int>(rng.below(2)));
    Instance inst(10, 5, rng.in(1, 10), std::move(middles), std::move(x));
    CHECK(run(p, inst).output == evaluate(inst));
  }
}

TEST_CASE("reordered protocol cost is ceil(log2 n) + 1") {
  CHECK(total_cost(reordered_protocol(8, 4, 3, 2)) == 4);
  CHECK(total_cost(reordered_protocol(1, 3, 2, 1)) == 1);  // log term vanishes
  CHECK(total_cost(reordered_protocol(5, 3, 3, 1)) == 4);
}

TEST_CASE("reordered protocol is exhaustively correct for every admissible pair") {
  for (auto [j, i] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
    ProtocolDef p = reordered_protocol(4, 3, j, i);
    CAPTURE(i);
    CAPTURE(j);
    CHECK(exhaustive_correctness(p));
  }
  for (auto [j, i] : {std::pair{2, 1}, {4, 2}, {4, 3}, {3, 2}})
    CHECK(exhaustive_correctness(reordered_protocol(2, 4, j, i)));
}

TEST_CASE("reordered protocol rejects bad player pairs") {
  CHECK_THROWS_AS(reordered_protocol(4, 3, 2, 2), PreconditionViolated);
  CHECK_THROWS_AS(reordered_protocol(4, 3, 1, 2), PreconditionViolated);
  CHECK_THROWS_AS(reordered_protocol(4, 3, 4, 1), PreconditionViolated);
  CHECK_THROWS_AS(reordered_protocol(4, 2, 2, 1), PreconditionViolated);
}

TEST_CASE("reordered speaking order puts j first and i last among senders") {
  ProtocolDef p = reordered_protocol(8, 4, 3, 2);
  CHECK(p.speaking_order == std::vector<int>{3, 1, 2, 4});
  CHECK(p.budgets == std::vector<int>{3, 0, 1});
}

TEST_CASE("tpj shapes") {
  CHECK(TpjShape(2, 3).n() == 4);
  CHECK(TpjShape(3, 3).n() == 9);
  CHECK(TpjShape(2, 4).n() == 8);
  CHECK_THROWS_AS(TpjShape(1, 3), std::invalid_argument);
}

TEST_CASE("tpj protocol costs b and is correct on every tree instance") {
  TpjShape shape(2, 3);
  ProtocolDef p = tpj_protocol(shape);
  CHECK(total_cost(p) == 2);

  std::vector<Instance> family = tree_instances(shape);
  CHECK(family.size() == 128);  // 2 starts, 4 middle choices, 16 strings
  for (const Instance& inst : family) REQUIRE(is_tree_instance(shape, inst));
  ExhaustiveReport report = exhaustive_report_over(p, family);
  CHECK(report.all_correct());
}

TEST_CASE("tpj protocol with branching 3") {
  TpjShape shape(3, 3);
  ProtocolDef p = tpj_protocol(shape);
  CHECK(total_cost(p) == 3);
  CHECK(exhaustive_report_over(p, tree_instances(shape)).all_correct());
}

TEST_CASE("tpj on the first-child tree with all-ones x") {
  TpjShape shape(2, 3);
  std::vector<int> table(4, 1);
  table[0] = 1;
  table[1] = 3;  // vertex v points to its first child (v-1)*b + 1
  Instance inst(4, 3, 1, {PointerFn(table)}, BitString("1111"));
  REQUIRE(is_tree_instance(shape, inst));
  CHECK(run(tpj_protocol(shape), inst).output == 1);
}

TEST_CASE("tpj rejects instances whose start leaves the tree") {
  TpjShape shape(2, 3);
  Instance bad(4, 3, 3, {PointerFn({1, 3, 1, 1})}, BitString("1111"));
  CHECK_THROWS_AS(run(tpj_protocol(shape), bad), std::invalid_argument);
}

TEST_CASE("cheating protocol budgets and shapes") {
  ProtocolDef silent = cheating_protocol("silent", 4, 3, 0);
  CHECK(total_cost(silent) == 0);
  CHECK(max_cost(silent) == 0);
  CHECK(silent.view_model == ViewModel::Collapsing);

  ProtocolDef tt = cheating_protocol("truncated-trivial", 8, 3, 5);
  CHECK(total_cost(tt) == 5);
  CHECK(tt.budgets == std::vector<int>{0, 5});

  ProtocolDef fp = cheating_protocol("first-player", 8, 3, 5);
  CHECK(fp.budgets == std::vector<int>{5, 0});

  CHECK_THROWS_AS(cheating_protocol("truncated-trivial", 8, 3, 6), PreconditionViolated);
  CHECK_THROWS_AS(cheating_protocol("truncated-trivial", 2, 3, 1), PreconditionViolated);
  CHECK_NOTHROW(cheating_protocol("silent", 2, 3, 0));  // zero budget is always in range
  CHECK_THROWS_AS(cheating_protocol("nonsense", 8, 3, 1), std::invalid_argument);
}

TEST_CASE("every under-budgeted protocol errs somewhere small") {
  // n = 4, k = 3 keeps the whole instance space enumerable
  CHECK_FALSE(exhaustive_correctness(cheating_protocol("silent", 4, 3, 0)));
  CHECK_FALSE(exhaustive_correctness(cheating_protocol("truncated-trivial", 4, 3, 1)));
  CHECK_FALSE(exhaustive_correctness(cheating_protocol("first-player", 4, 3, 1)));
  CHECK_FALSE(exhaustive_correctness(uniform_cheating_protocol(4, 3, 0)));
}

TEST_CASE("truncated trivial at k=2 errs and the oracle can exhibit it") {
  ProtocolDef p = cheating_protocol("truncated-trivial", 8, 2, 5);
  CHECK(total_cost(p) == 5);
  auto cert = brute_force_fooling_search(p);
  REQUIRE(cert.has_value());
  CHECK(verify_certificate(p, *cert).valid);
}

TEST_CASE("uniform cheating protocol stays below the per-speaker threshold") {
  ProtocolDef p = uniform_cheating_protocol(12, 3, 7);
  CHECK(p.budgets == std::vector<int>{7, 7});
  CHECK_THROWS_AS(uniform_cheating_protocol(12, 3, 8), PreconditionViolated);
}

TEST_CASE("protocols resolve by name") {
  CHECK(protocol_by_name("trivial", 3, 3).name == "trivial");
  CHECK(protocol_by_name("reordered:3:2", 4, 3).params == std::vector<std::string>{"3", "2"});
  CHECK(protocol_by_name("tpj:2", 4, 3).name == "tpj");
  CHECK(protocol_by_name("truncated-trivial:7", 10, 3).budgets == std::vector<int>{0, 7});
  CHECK(protocol_by_name("uniform-truncated:3", 8, 4).budgets == std::vector<int>(3, 3));
  CHECK_THROWS_AS(protocol_by_name("tpj:2", 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(protocol_by_name("nope", 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(protocol_by_name("tpj", 4, 3), std::invalid_argument);
}

TEST_SUITE_END();
