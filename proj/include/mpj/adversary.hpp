#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpj/lemmas.hpp"
#include "mpj/protocol.hpp"

namespace mpj {

/// Two complete inputs sharing (start, f_2..f_{k-1}) and differing only in
/// the final string, with identical protocol transcripts and different true
/// answers. Independently checkable via verify_certificate.
struct FoolingCertificate {
  int n = 0;
  int k = 0;
  std::string protocol_name;
  std::vector<std::string> protocol_params;
  std::vector<int> budgets;

  int start = 0;
  std::vector<PointerFn> middles;     // f_2 .. f_{k-1}, shared by both inputs
  BitString x, x_prime;               // the differing final strings
  std::vector<BitString> transcript;  // alpha_1 .. alpha_{k-1}
  int output_a = 0;                   // evaluate of (start, middles, x)
  int output_b = 0;                   // evaluate of (start, middles, x_prime)

  Instance instance_a() const;
  Instance instance_b() const;

  bool operator==(const FoolingCertificate&) const = default;
};

/// Per-stage states of an attack, for replay checks.
struct AttackTrace {
  std::vector<FoolingState> stages;  // stages 1 .. k-1
};

/// Freeze speaker `speaker`'s collapsing message function against the given
/// prefix, leaving only the suffix composition free.
MessageOracle collapsing_speaker_oracle(const ProtocolDef& protocol, int speaker,
                                        std::vector<BitString> prior_messages,
                                        std::optional<int> start,
                                        std::vector<PointerFn> middles_prefix);

/// Break a collapsing identity-order protocol whose total budget is at most
/// n-3: construct a fooling certificate by chaining the push lemmas, with the
/// case split driven by speaker 1's budget. Requires k >= 3 and n >= 8.
/// Throws PreconditionViolated when the protocol is outside the covered
/// regime, ConstructionFailed if a collision engine comes up empty.
FoolingCertificate attack(const ProtocolDef& protocol, AttackTrace* trace = nullptr);

/// Break a collapsing identity-order protocol in which every speaker stays
/// below the max-cost threshold: t_i <= n - ceil(0.5 log2 n) - 3 for all i
/// (and t_1 <= n - 1). Plain collision for speaker 1, crossing pushes for
/// the rest.
FoolingCertificate attack_uniform(const ProtocolDef& protocol, AttackTrace* trace = nullptr);

struct VerifyReport {
  bool valid = false;
  std::string reason;  // empty when valid

  explicit operator bool() const { return valid; }
};

/// Recheck a certificate from scratch against the protocol: the two
/// evaluations must differ and match the claimed outputs, both runs must
/// reproduce the recorded transcript, and the protocol's (single) output is
/// then necessarily wrong on one input. Invalid certificates yield
/// {false, reason}; only dimension mismatches throw.
VerifyReport verify_certificate(const ProtocolDef& protocol, const FoolingCertificate& cert);

/// Replay check for the consistency half of the FoolingState invariant:
/// every speaker h <= stage, shown the state's prefix and the state's pair
/// composed down to layer h, answers with the recorded message.
bool state_consistent_with(const ProtocolDef& protocol, const FoolingState& state,
                           std::string* why = nullptr);

}  // namespace mpj
