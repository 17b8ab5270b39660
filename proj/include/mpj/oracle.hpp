#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mpj/adversary.hpp"
#include "mpj/protocol.hpp"

namespace mpj {

inline constexpr std::uint64_t kDefaultInstanceCap = 10'000'000;

/// n^(n(k-2)) * n * 2^n, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> instance_count(int n, int k);

namespace detail {

/// Odometer over the k-2 middle tables in lexicographic order: f_2's entry 1
/// is the most significant digit, f_{k-1}'s entry n the least.
struct MiddlesOdometer {
  MiddlesOdometer(int n, int k);
  void reset();
  bool advance();  // false once all tables have wrapped back to all-ones
  std::vector<PointerFn> middles;

 private:
  int n_;
};

}  // namespace detail

/// Visit every instance of MPJ(n, k) in lexicographic order over
/// (start, middles, x). The visitor returns false to stop early.
template <typename Visit>
void for_each_instance(int n, int k, Visit&& visit) {
  detail::MiddlesOdometer odo(n, k);
  const std::uint64_t xspan = std::uint64_t{1} << n;
  Instance inst(n, k, 1, odo.middles, BitString(n));
  for (int start = 1; start <= n; ++start) {
    inst.start = start;
    odo.reset();
    bool more = true;
    while (more) {
      inst.middles = odo.middles;
      for (std::uint64_t r = 0; r < xspan; ++r) {
        inst.x = BitString::from_rank(r, n);
        if (!visit(static_cast<const Instance&>(inst))) return;
      }
      more = odo.advance();
    }
  }
}

struct ExhaustiveReport {
  std::uint64_t total = 0;
  std::uint64_t correct = 0;
  std::optional<Instance> first_error;

  bool all_correct() const { return total == correct; }
};

/// Run the protocol on every instance and compare with evaluate.
/// Throws CapExceeded when the instance space is larger than `cap`.
ExhaustiveReport exhaustive_report(const ProtocolDef& protocol,
                                   std::uint64_t cap = kDefaultInstanceCap);
bool exhaustive_correctness(const ProtocolDef& protocol, std::uint64_t cap = kDefaultInstanceCap);

/// Same check over a caller-supplied instance family (e.g. tree instances).
ExhaustiveReport exhaustive_report_over(const ProtocolDef& protocol,
                                        const std::vector<Instance>& instances);

/// Group instances by (start, middles) and transcript; return a certificate
/// for the first pair in enumeration order whose evaluations differ, or
/// nullopt if the protocol never lands two differing inputs on one
/// transcript.
std::optional<FoolingCertificate> brute_force_fooling_search(
    const ProtocolDef& protocol, std::uint64_t cap = kDefaultInstanceCap);

/// Check that popcount is strictly monotone on every dominance-comparable
/// pair: exhaustive over all pairs for small n, seeded sampling above.
bool popcount_monotone_check(int n, std::uint64_t samples = 1'000'000,
                             std::uint64_t seed = 0x6d706a);

}  // namespace mpj
