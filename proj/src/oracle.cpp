#include "mpj/oracle.hpp"

#include <bit>
#include <random>
#include <string>
#include <unordered_map>

namespace mpj {

std::optional<std::uint64_t> instance_count(int n, int k) {
  if (n < 1 || k < 2 || n > 62) return std::nullopt;
  auto mul = [](std::uint64_t a, std::uint64_t b) -> std::optional<std::uint64_t> {
    if (a != 0 && b > UINT64_MAX / a) return std::nullopt;
    return a * b;
  };
  std::optional<std::uint64_t> count = std::uint64_t{1} << n;  // choices of x
  count = mul(*count, static_cast<std::uint64_t>(n));          // choices of start
  const std::uint64_t entries = static_cast<std::uint64_t>(n) * (k - 2);
  for (std::uint64_t e = 0; e < entries && count; ++e)
    count = mul(*count, static_cast<std::uint64_t>(n));
  return count;
}

namespace detail {

MiddlesOdometer::MiddlesOdometer(int n, int k) : n_(n) {
  if (n < 1 || k < 2) throw std::invalid_argument("MiddlesOdometer: need n >= 1, k >= 2");
  middles.assign(static_cast<std::size_t>(k - 2),
                 PointerFn(std::vector<int>(static_cast<std::size_t>(n), 1)));
}

void MiddlesOdometer::reset() {
  for (PointerFn& f : middles)
    for (int v = 1; v <= n_; ++v) f.set(v, 1);
}

bool MiddlesOdometer::advance() {
  for (auto m = middles.rbegin(); m != middles.rend(); ++m) {
    for (int v = n_; v >= 1; --v) {
      const int next = (*m)(v) + 1;
      if (next <= n_) {
        m->set(v, next);
        return true;
      }
      m->set(v, 1);
    }
  }
  return false;
}

}  // namespace detail

namespace {

void check_cap(const ProtocolDef& protocol, std::uint64_t cap) {
  const std::optional<std::uint64_t> count = instance_count(protocol.n, protocol.k);
  if (!count || *count > cap)
    throw CapExceeded("instance space of (n = " + std::to_string(protocol.n) +
                      ", k = " + std::to_string(protocol.k) + ") exceeds the cap of " +
                      std::to_string(cap) + " instances");
}

std::string transcript_key(const Transcript& t) {
  std::string key;
  for (const BitString& m : t.messages) {
    key += m.str();
    key += '|';
  }
  key += static_cast<char>('0' + t.output);
  return key;
}

}  // namespace

ExhaustiveReport exhaustive_report(const ProtocolDef& protocol, std::uint64_t cap) {
  check_cap(protocol, cap);
  ExhaustiveReport report;
  for_each_instance(protocol.n, protocol.k, [&](const Instance& inst) {
    ++report.total;
    if (run(protocol, inst).output == evaluate(inst))
      ++report.correct;
    else if (!report.first_error)
      report.first_error = inst;
    return true;
  });
  return report;
}

bool exhaustive_correctness(const ProtocolDef& protocol, std::uint64_t cap) {
  return exhaustive_report(protocol, cap).all_correct();
}

ExhaustiveReport exhaustive_report_over(const ProtocolDef& protocol,
                                        const std::vector<Instance>& instances) {
  ExhaustiveReport report;
  for (const Instance& inst : instances) {
    ++report.total;
    if (run(protocol, inst).output == evaluate(inst))
      ++report.correct;
    else if (!report.first_error)
      report.first_error = inst;
  }
  return report;
}

std::optional<FoolingCertificate> brute_force_fooling_search(const ProtocolDef& protocol,
                                                             std::uint64_t cap) {
  check_cap(protocol, cap);
  const int n = protocol.n;
  const std::uint64_t xspan = std::uint64_t{1} << n;

  detail::MiddlesOdometer odo(n, protocol.k);
  Instance inst(n, protocol.k, 1, odo.middles, BitString(n));
  // per transcript: the first x-rank that evaluated to 0 / to 1
  std::unordered_map<std::string, std::array<std::optional<std::uint64_t>, 2>> seen;

  for (int start = 1; start <= n; ++start) {
    inst.start = start;
    odo.reset();
    bool more = true;
    while (more) {
      inst.middles = odo.middles;
      seen.clear();
      for (std::uint64_t r = 0; r < xspan; ++r) {
        inst.x = BitString::from_rank(r, n);
        const Transcript t = run(protocol, inst);
        const int eval = evaluate(inst);
        auto& slots = seen[transcript_key(t)];
        if (slots[static_cast<std::size_t>(1 - eval)]) {
          FoolingCertificate cert;
          cert.n = n;
          cert.k = protocol.k;
          cert.protocol_name = protocol.name;
          cert.protocol_params = protocol.params;
          cert.budgets = protocol.budgets;
          cert.start = start;
          cert.middles = odo.middles;
          cert.x = BitString::from_rank(*slots[static_cast<std::size_t>(1 - eval)], n);
          cert.x_prime = inst.x;
          cert.transcript = t.messages;
          cert.output_a = 1 - eval;
          cert.output_b = eval;
          return cert;
        }
        if (!slots[static_cast<std::size_t>(eval)]) slots[static_cast<std::size_t>(eval)] = r;
      }
      more = odo.advance();
    }
  }
  return std::nullopt;
}

bool popcount_monotone_check(int n, std::uint64_t samples, std::uint64_t seed) {
  if (n < 1 || n > 62) throw std::invalid_argument("popcount_monotone_check: n out of [1, 62]");
  const std::uint64_t mask = (n == 62) ? ~std::uint64_t{0} >> 2 : (std::uint64_t{1} << n) - 1;

  auto monotone_above = [&](std::uint64_t x, std::uint64_t extra) {
    // extra is a nonempty subset of x's zero positions, so x | extra
    // dominates x strictly
    return std::popcount(x) < std::popcount(x | extra);
  };

  // 3^n pairs (x, superset) fit comfortably up to n = 15
  std::uint64_t pairs = 1;
  for (int i = 0; i < n; ++i) pairs *= 3;
  if (pairs <= 15'000'000) {
    for (std::uint64_t x = 0; x <= mask; ++x) {
      const std::uint64_t zeros = ~x & mask;
      for (std::uint64_t s = zeros; s != 0; s = (s - 1) & zeros)
        if (!monotone_above(x, s)) return false;
    }
    return true;
  }

  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t x = rng() & mask;
    const std::uint64_t s = rng() & ~x & mask;
    if (s == 0) continue;
    if (!monotone_above(x, s)) return false;
  }
  return true;
}

}  // namespace mpj
