#pragma once

#include <nlohmann/json_fwd.hpp>

#include "mpj/adversary.hpp"
#include "mpj/core.hpp"
#include "mpj/lemmas.hpp"
#include "mpj/protocol.hpp"

// JSON wire formats. Bit strings travel as ASCII 0/1 with position 1
// leftmost; pointer tables as 1-indexed integer arrays.
//
//   Instance:           {n, k, start, middles, x}
//   Transcript:         {messages, output, total_cost, max_cost}
//   FoolingCertificate: {n, k, protocol: {name, params, budgets}, start,
//                        middles, x, x_prime, transcript, outputs}
//   FoolingState:       {j, f_prefix, alphas, x, y, v, flags}

namespace mpj {

void to_json(nlohmann::json& j, const BitString& s);
void from_json(const nlohmann::json& j, BitString& s);

void to_json(nlohmann::json& j, const PointerFn& f);
void from_json(const nlohmann::json& j, PointerFn& f);

void to_json(nlohmann::json& j, const Instance& inst);
void from_json(const nlohmann::json& j, Instance& inst);

void to_json(nlohmann::json& j, const Transcript& t);

void to_json(nlohmann::json& j, const FoolingCertificate& cert);
void from_json(const nlohmann::json& j, FoolingCertificate& cert);

void to_json(nlohmann::json& j, const FoolingState& state);

/// Canonical text form used for files and stdout: sorted keys, two-space
/// indent, trailing newline. Byte-identical for equal values.
std::string canonical_json(const nlohmann::json& j);

}  // namespace mpj
