#include "mpj/adversary.hpp"

#include <numeric>
#include <unordered_map>

#include "mpj/intlog.hpp"

namespace mpj {

Instance FoolingCertificate::instance_a() const { return Instance(n, k, start, middles, x); }
Instance FoolingCertificate::instance_b() const { return Instance(n, k, start, middles, x_prime); }

MessageOracle collapsing_speaker_oracle(const ProtocolDef& protocol, int speaker,
                                        std::vector<BitString> prior_messages,
                                        std::optional<int> start,
                                        std::vector<PointerFn> middles_prefix) {
  if (speaker < 1 || speaker > protocol.k - 1)
    throw std::invalid_argument("collapsing_speaker_oracle: speaker out of [1, k-1]");
  if (speaker >= 2 && !start)
    throw std::invalid_argument("collapsing_speaker_oracle: speakers >= 2 see the start");
  if (static_cast<int>(middles_prefix.size()) != std::max(speaker - 2, 0))
    throw std::invalid_argument("collapsing_speaker_oracle: expected f_2..f_{speaker-1}");

  MessageOracle oracle;
  oracle.n = protocol.n;
  oracle.budget = protocol.budgets[static_cast<std::size_t>(speaker - 1)];
  oracle.fn = [fn = protocol.message_fns[static_cast<std::size_t>(speaker - 1)], speaker,
               n = protocol.n, k = protocol.k, messages = std::move(prior_messages), start,
               middles = std::move(middles_prefix)](const BitString& composition) {
    PlayerView view;
    view.player = speaker;
    view.n = n;
    view.k = k;
    view.model = ViewModel::Collapsing;
    view.messages = messages;
    if (speaker >= 2) view.start = *start;
    for (int layer = 2; layer <= speaker - 1; ++layer)
      view.middles.emplace(layer, middles[static_cast<std::size_t>(layer - 2)]);
    view.suffix_composition = composition;
    return fn(view);
  };
  return oracle;
}

namespace {

void require(bool ok, const std::string& inequality) {
  if (!ok) throw PreconditionViolated(inequality);
}

/// First pair of distinct n-bit strings with equal messages, scanning ranks
/// in lexicographic order. Needs budget <= n-1 for the pigeonhole.
std::pair<BitString, BitString> first_message_collision(const MessageOracle& oracle, int n) {
  if (n < 1 || n > 24)
    throw std::invalid_argument("first_message_collision: n out of supported range [1, 24]");
  std::unordered_map<std::string, std::uint64_t> first_rank;
  const std::uint64_t span = std::uint64_t{1} << n;
  for (std::uint64_t r = 0; r < span; ++r) {
    const BitString candidate = BitString::from_rank(r, n);
    const std::string key = oracle(candidate).str();
    auto [it, inserted] = first_rank.emplace(key, r);
    if (!inserted) return {BitString::from_rank(it->second, n), candidate};
  }
  throw NoCollision("speaker 1 message function is injective on {0,1}^n");
}

int smallest_differing_index(const BitString& x, const BitString& y) {
  for (int j = 1; j <= x.size(); ++j)
    if (x.bit(j) != y.bit(j)) return j;
  throw std::logic_error("smallest_differing_index: strings are equal");
}

FoolingState initial_state(const ProtocolDef& protocol, const MessageOracle& speaker1,
                           const BitString& x, const BitString& y, int f1) {
  const BitString alpha = speaker1(x);
  if (speaker1(y) != alpha)
    throw std::logic_error("attack: speaker 1 distinguishes the chosen pair");
  FoolingState st;
  st.n = protocol.n;
  st.k = protocol.k;
  st.stage = 1;
  st.start = f1;
  st.messages = {alpha};
  st.x = x;
  st.y = y;
  st.vertex = f1;
  st.has_dominance = dominance_less(x, y);
  st.has_crossing = is_crossing(x, y);
  check_fooling_state(st);
  return st;
}

void check_attack_preconditions(const ProtocolDef& p) {
  require(p.view_model == ViewModel::Collapsing, "view_model = Collapsing violated");
  require(p.identity_order(), "identity speaking order violated");
  require(p.k >= 3, "k >= 3 violated: k = " + std::to_string(p.k));
}

MessageOracle oracle_for(const ProtocolDef& p, int speaker, const FoolingState& st) {
  return collapsing_speaker_oracle(p, speaker, st.messages, st.start, st.middles);
}

FoolingCertificate certificate_from(const ProtocolDef& p, const FoolingState& st) {
  if (st.stage != p.k - 1)
    throw std::logic_error("attack pipeline stopped at stage " + std::to_string(st.stage));
  FoolingCertificate cert;
  cert.n = p.n;
  cert.k = p.k;
  cert.protocol_name = p.name;
  cert.protocol_params = p.params;
  cert.budgets = p.budgets;
  cert.start = st.start;
  cert.middles = st.middles;
  cert.x = st.x;
  cert.x_prime = st.y;
  cert.transcript = st.messages;
  cert.output_a = evaluate(cert.instance_a());
  cert.output_b = evaluate(cert.instance_b());
  if (cert.output_a == cert.output_b)
    throw std::logic_error("attack produced inputs with equal evaluations");
  return cert;
}

void record(AttackTrace* trace, const FoolingState& st) {
  if (trace) trace->stages.push_back(st);
}

}  // namespace

FoolingCertificate attack(const ProtocolDef& protocol, AttackTrace* trace) {
  check_attack_preconditions(protocol);
  const int n = protocol.n;
  require(n >= 8, "n >= 8 violated: n = " + std::to_string(n));
  const int total = std::accumulate(protocol.budgets.begin(), protocol.budgets.end(), 0);
  require(total <= n - 3, "sum(t_i) <= n-3 violated: " + std::to_string(total) + " > " +
                              std::to_string(n - 3));

  const int chain_bound = ceil_log2(static_cast<std::uint64_t>(n) + 1) - 2;
  const int crossing_bound = n - ceil_half_log2(static_cast<std::uint64_t>(n)) - 2;
  const int t1 = protocol.budgets.front();

  try {
    MessageOracle speaker1 =
        collapsing_speaker_oracle(protocol, 1, {}, std::nullopt, {});

    FoolingState state;
    bool chain_alive;
    if (t1 >= chain_bound) {
      // Case 1: speaker 1 is large, any collision seeds the pair and every
      // later speaker is necessarily below the crossing threshold
      auto [x, y] = first_message_collision(speaker1, n);
      state = initial_state(protocol, speaker1, x, y, smallest_differing_index(x, y));
      chain_alive = false;
    } else {
      // Case 2: speaker 1 is small, start from a chain collision and keep
      // dominance alive while the budgets stay small
      auto [x, y] = find_chain_collision(speaker1, n);
      state = initial_state(protocol, speaker1, x, y, index_partition(x, y).i01.front());
      chain_alive = true;
    }
    record(trace, state);

    for (int s = 2; s <= protocol.k - 1; ++s) {
      const int ts = protocol.budgets[static_cast<std::size_t>(s - 1)];
      MessageOracle next = oracle_for(protocol, s, state);
      if (!chain_alive) {
        if (ts > crossing_bound)
          throw std::logic_error("attack: crossing bound violated for speaker " +
                                 std::to_string(s) + " despite the total budget cap");
        state = crosspush(state, next);
      } else if (s == protocol.k - 1 || ts >= chain_bound) {
        state = push(state, next);
        chain_alive = false;
      } else {
        state = chainpush(state, next);
      }
      record(trace, state);
    }
    return certificate_from(protocol, state);
  } catch (const NoCollision& e) {
    throw ConstructionFailed(std::string("attack failed: ") + e.what());
  }
}

FoolingCertificate attack_uniform(const ProtocolDef& protocol, AttackTrace* trace) {
  check_attack_preconditions(protocol);
  const int n = protocol.n;
  const int uniform_bound = n - ceil_half_log2(static_cast<std::uint64_t>(n)) - 3;
  for (int s = 1; s <= protocol.k - 1; ++s) {
    const int ts = protocol.budgets[static_cast<std::size_t>(s - 1)];
    require(ts <= uniform_bound, "t_" + std::to_string(s) +
                                     " <= n - ceil(0.5*log2 n) - 3 violated: " +
                                     std::to_string(ts) + " > " + std::to_string(uniform_bound));
  }
  require(protocol.budgets.front() <= n - 1,
          "t_1 <= n-1 violated: " + std::to_string(protocol.budgets.front()));

  try {
    MessageOracle speaker1 =
        collapsing_speaker_oracle(protocol, 1, {}, std::nullopt, {});
    auto [x, y] = first_message_collision(speaker1, n);
    FoolingState state =
        initial_state(protocol, speaker1, x, y, smallest_differing_index(x, y));
    record(trace, state);
    for (int s = 2; s <= protocol.k - 1; ++s) {
      state = crosspush(state, oracle_for(protocol, s, state));
      record(trace, state);
    }
    return certificate_from(protocol, state);
  } catch (const NoCollision& e) {
    throw ConstructionFailed(std::string("attack_uniform failed: ") + e.what());
  }
}

VerifyReport verify_certificate(const ProtocolDef& protocol, const FoolingCertificate& cert) {
  if (protocol.n != cert.n || protocol.k != cert.k)
    throw std::invalid_argument("verify_certificate: certificate is for (n = " +
                                std::to_string(cert.n) + ", k = " + std::to_string(cert.k) +
                                "), protocol has (n = " + std::to_string(protocol.n) +
                                ", k = " + std::to_string(protocol.k) + ")");

  Instance a = cert.instance_a();
  Instance b = cert.instance_b();

  const int eval_a = evaluate(a);
  const int eval_b = evaluate(b);
  if (eval_a == eval_b) return {false, "the two inputs evaluate identically"};
  if (eval_a != cert.output_a || eval_b != cert.output_b)
    return {false, "claimed outputs do not match the evaluations"};

  Transcript ta, tb;
  try {
    ta = run(protocol, a);
    tb = run(protocol, b);
  } catch (const std::exception& e) {
    return {false, std::string("protocol run failed: ") + e.what()};
  }

  if (ta.messages != tb.messages) return {false, "the two inputs produce different transcripts"};
  if (ta.messages != cert.transcript) return {false, "recorded transcript does not match the runs"};
  if (ta.output != tb.output) return {false, "protocol outputs differ between the inputs"};
  if (ta.output == eval_a && tb.output == eval_b)
    return {false, "protocol is correct on both inputs"};  // unreachable when evals differ
  return {true, ""};
}

bool state_consistent_with(const ProtocolDef& protocol, const FoolingState& state,
                           std::string* why) {
  auto explain = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (protocol.n != state.n || protocol.k != state.k)
    return explain("state/protocol dimension mismatch");

  for (int h = 1; h <= state.stage; ++h) {
    auto compose_down = [&](const BitString& top) {
      // the state's pair lives at layer `stage`; walk it down to layer h
      BitString comp(state.n);
      for (int s = 1; s <= state.n; ++s) {
        int v = s;
        for (int layer = h + 1; layer <= state.stage; ++layer)
          v = state.middles[static_cast<std::size_t>(layer - 2)](v);
        comp.set_bit(s, top.bit(v));
      }
      return comp;
    };
    std::vector<BitString> prior(state.messages.begin(), state.messages.begin() + (h - 1));
    std::vector<PointerFn> prefix(state.middles.begin(),
                                  state.middles.begin() + std::max(h - 2, 0));
    MessageOracle oracle = collapsing_speaker_oracle(
        protocol, h, std::move(prior),
        h >= 2 ? std::optional<int>(state.start) : std::nullopt, std::move(prefix));
    const BitString& expected = state.messages[static_cast<std::size_t>(h - 1)];
    if (oracle(compose_down(state.x)) != expected)
      return explain("speaker " + std::to_string(h) + " deviates on the x side");
    if (oracle(compose_down(state.y)) != expected)
      return explain("speaker " + std::to_string(h) + " deviates on the y side");
  }
  return true;
}

}  // namespace mpj
