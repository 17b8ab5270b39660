#pragma once

// Deterministic randomness and oracle builders shared by the unit suites and
// the acceptance binary. Everything is seeded; no test depends on platform
// RNG behavior.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mpj/core.hpp"
#include "mpj/lemmas.hpp"

namespace mpjtest {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Small deterministic PRNG built on splitmix64.
struct Mixer {
  std::uint64_t state;
  explicit Mixer(std::uint64_t seed) : state(splitmix64(seed)) {}
  std::uint64_t next() { return state = splitmix64(state); }
  /// uniform-ish in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  int in(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
};

/// A fixed random function {0,1}^n -> {0,1}^t keyed by `seed`.
inline mpj::MessageOracle random_oracle(int n, int t, std::uint64_t seed) {
  return {n, t, [t, seed](const mpj::BitString& s) {
            const std::uint64_t h = splitmix64(seed ^ (s.rank() * 0x9e3779b97f4a7c15ull));
            const std::uint64_t mask = t >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t) - 1;
            return mpj::BitString::from_rank(h & mask, t);
          }};
}

inline mpj::MessageOracle constant_oracle(int n, int t = 0) {
  return {n, t, [t](const mpj::BitString&) { return mpj::BitString(t); }};
}

inline mpj::MessageOracle first_bit_oracle(int n) {
  return {n, 1, [](const mpj::BitString& s) {
            mpj::BitString out(1);
            out.set_bit(1, s.bit(1));
            return out;
          }};
}

inline mpj::MessageOracle parity_oracle(int n) {
  return {n, 1, [](const mpj::BitString& s) {
            mpj::BitString out(1);
            out.set_bit(1, s.popcount() % 2);
            return out;
          }};
}

inline mpj::MessageOracle popcount_oracle(int n, int t) {
  return {n, t, [t](const mpj::BitString& s) {
            return mpj::BitString::from_rank(static_cast<std::uint64_t>(s.popcount()), t);
          }};
}

inline mpj::MessageOracle identity_oracle(int n) {
  return {n, n, [](const mpj::BitString& s) { return s; }};
}

/// Truncation to the first t positions.
inline mpj::MessageOracle truncation_oracle(int n, int t) {
  return {n, t, [t](const mpj::BitString& s) {
            mpj::BitString out(t);
            for (int pos = 1; pos <= t; ++pos) out.set_bit(pos, s.bit(pos));
            return out;
          }};
}

enum class PushKind { Push, CrossPush, ChainPush };

/// A random stage-1 fooling state plus a next-speaker oracle satisfying the
/// variant's precondition. Dominance-ordered pairs for push/chainpush,
/// arbitrary distinct pairs for crosspush.
struct PushCase {
  mpj::FoolingState state;
  mpj::MessageOracle oracle;
};

inline PushCase make_push_case(PushKind kind, std::uint64_t seed) {
  Mixer rng(seed);
  const int n = rng.in(6, 12);
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;

  std::uint64_t xr = 0, yr = 0;
  if (kind == PushKind::CrossPush && rng.below(2) == 0) {
    do {
      xr = rng.next() & mask;
      yr = rng.next() & mask;
    } while (xr == yr);
  } else {
    // y strictly dominates x
    do {
      xr = rng.next() & mask;
    } while (xr == mask);
    std::uint64_t extra = 0;
    while (extra == 0) extra = rng.next() & ~xr & mask;
    yr = xr | extra;
  }

  mpj::FoolingState st;
  st.n = n;
  st.k = 8;  // irrelevant to the push mechanics
  st.stage = 1;
  st.x = mpj::BitString::from_rank(xr, n);
  st.y = mpj::BitString::from_rank(yr, n);
  std::vector<int> differing;
  for (int pos = 1; pos <= n; ++pos)
    if (st.x.bit(pos) != st.y.bit(pos)) differing.push_back(pos);
  st.vertex = differing[rng.below(differing.size())];
  st.start = st.vertex;
  st.messages = {mpj::BitString(0)};
  st.has_dominance = mpj::dominance_less(st.x, st.y);
  st.has_crossing = mpj::is_crossing(st.x, st.y);

  int budget_hi = 0;
  switch (kind) {
    case PushKind::Push: budget_hi = n - 3; break;
    case PushKind::CrossPush: budget_hi = n - mpj::ceil_half_log2(n) - 2; break;
    case PushKind::ChainPush: budget_hi = mpj::ceil_log2(std::uint64_t(n) + 1) - 3; break;
  }
  const int budget = rng.in(0, budget_hi);
  return {std::move(st), random_oracle(n, budget, rng.next())};
}

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

/// The push-family contract: reconstruction identity, message consistency,
/// fooling preservation and flag accuracy. Throws std::runtime_error naming
/// the first violated property.
inline void check_push_properties(PushKind kind, const mpj::FoolingState& before,
                                  const mpj::FoolingState& after,
                                  const mpj::MessageOracle& oracle) {
  expect(after.stage == before.stage + 1, "stage did not advance");
  expect(after.middles.size() == before.middles.size() + 1, "no new middle function");
  expect(after.messages.size() == before.messages.size() + 1, "no new message");

  const mpj::PointerFn& f = after.middles.back();
  for (int s = 1; s <= before.n; ++s) {
    expect(before.x.bit(s) == after.x.bit(f(s)),
           "reconstruction identity fails on x at index " + std::to_string(s));
    expect(before.y.bit(s) == after.y.bit(f(s)),
           "reconstruction identity fails on y at index " + std::to_string(s));
  }

  expect(oracle(after.x) == after.messages.back(), "alpha != oracle(x1)");
  expect(oracle(after.y) == after.messages.back(), "alpha != oracle(y1)");
  expect(after.x.bit(after.vertex) != after.y.bit(after.vertex), "fooling condition lost");
  expect(after.vertex == f(before.vertex), "vertex is not f(previous vertex)");

  expect(after.has_dominance == mpj::dominance_less(after.x, after.y), "dominance flag wrong");
  expect(after.has_crossing == mpj::is_crossing(after.x, after.y), "crossing flag wrong");
  if (kind == PushKind::ChainPush) expect(after.has_dominance, "chainpush lost dominance");
  if (kind == PushKind::CrossPush) expect(after.has_crossing, "crosspush is not crossing");
}

inline mpj::FoolingState apply_push(PushKind kind, const mpj::FoolingState& st,
                                    const mpj::MessageOracle& oracle) {
  switch (kind) {
    case PushKind::Push: return mpj::push(st, oracle);
    case PushKind::CrossPush: return mpj::crosspush(st, oracle);
    case PushKind::ChainPush: return mpj::chainpush(st, oracle);
  }
  throw std::logic_error("unreachable");
}

}  // namespace mpjtest
