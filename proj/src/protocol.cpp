#include "mpj/protocol.hpp"

#include <algorithm>
#include <numeric>

namespace mpj {

std::string_view to_string(ViewModel m) {
  switch (m) {
    case ViewModel::GeneralNOF: return "GeneralNOF";
    case ViewModel::Collapsing: return "Collapsing";
    case ViewModel::Conservative: return "Conservative";
    case ViewModel::Myopic: return "Myopic";
  }
  throw std::logic_error("unreachable view model");
}

ViewModel view_model_from_string(std::string_view name) {
  if (name == "GeneralNOF") return ViewModel::GeneralNOF;
  if (name == "Collapsing") return ViewModel::Collapsing;
  if (name == "Conservative") return ViewModel::Conservative;
  if (name == "Myopic") return ViewModel::Myopic;
  throw std::invalid_argument("unknown view model: " + std::string(name));
}

bool ProtocolDef::identity_order() const {
  for (int s = 1; s <= k; ++s)
    if (speaking_order[static_cast<std::size_t>(s - 1)] != s) return false;
  return true;
}

namespace {

void check_protocol(const ProtocolDef& p) {
  if (p.n < 1 || p.k < 2) throw std::invalid_argument("protocol: need n >= 1, k >= 2");
  if (static_cast<int>(p.speaking_order.size()) != p.k)
    throw std::invalid_argument("protocol: speaking_order must list all k players");
  std::vector<int> sorted = p.speaking_order;
  std::sort(sorted.begin(), sorted.end());
  for (int s = 1; s <= p.k; ++s)
    if (sorted[static_cast<std::size_t>(s - 1)] != s)
      throw std::invalid_argument("protocol: speaking_order is not a permutation of [1, k]");
  if (static_cast<int>(p.budgets.size()) != p.k - 1)
    throw std::invalid_argument("protocol: expected k-1 budgets");
  for (int t : p.budgets)
    if (t < 0) throw std::invalid_argument("protocol: negative budget");
  if (static_cast<int>(p.message_fns.size()) != p.k - 1)
    throw std::invalid_argument("protocol: expected k-1 message oracles");
  if (!p.output_fn) throw std::invalid_argument("protocol: missing output oracle");
}

void check_dims(const ProtocolDef& p, const Instance& inst) {
  if (inst.n != p.n || inst.k != p.k)
    throw std::invalid_argument("protocol/instance dimension mismatch: protocol (" +
                                std::to_string(p.n) + ", " + std::to_string(p.k) +
                                "), instance (" + std::to_string(inst.n) + ", " +
                                std::to_string(inst.k) + ")");
}

int behind_vertex_of(const Instance& inst, int player) {
  int v = inst.start;
  for (int layer = 2; layer <= player - 1; ++layer) v = inst.middle(layer)(v);
  return v;
}

PlayerView build_view_unchecked(const Instance& inst, const ProtocolDef& protocol,
                                int speaker_pos, const std::vector<BitString>& prior_messages) {
  const int k = protocol.k;
  const int p = protocol.speaking_order[static_cast<std::size_t>(speaker_pos - 1)];

  PlayerView view;
  view.player = p;
  view.n = protocol.n;
  view.k = k;
  view.model = protocol.view_model;
  view.messages = prior_messages;

  switch (protocol.view_model) {
    case ViewModel::GeneralNOF:
      if (p != 1) view.start = inst.start;
      for (int layer = 2; layer <= k - 1; ++layer)
        if (layer != p) view.middles.emplace(layer, inst.middle(layer));
      if (p != k) view.x = inst.x;
      break;
    case ViewModel::Collapsing:
      if (p != 1) view.start = inst.start;
      for (int layer = 2; layer <= p - 1; ++layer)
        view.middles.emplace(layer, inst.middle(layer));
      if (p != k) view.suffix_composition = compose_suffix(inst, p);
      break;
    case ViewModel::Conservative:
      if (p != 1) view.behind_vertex = behind_vertex_of(inst, p);
      for (int layer = p + 1; layer <= k - 1; ++layer)
        view.middles.emplace(layer, inst.middle(layer));
      if (p != k) view.x = inst.x;
      break;
    case ViewModel::Myopic:
      if (p != 1) view.start = inst.start;
      for (int layer = 2; layer <= p - 1; ++layer)
        view.middles.emplace(layer, inst.middle(layer));
      if (p + 1 <= k - 1)
        view.middles.emplace(p + 1, inst.middle(p + 1));
      else if (p == k - 1)
        view.x = inst.x;
      break;
  }
  return view;
}

}  // namespace

PlayerView build_view(const Instance& inst, const ProtocolDef& protocol, int speaker_pos,
                      const std::vector<BitString>& prior_messages) {
  check_protocol(protocol);
  check_dims(protocol, inst);
  if (speaker_pos < 1 || speaker_pos > protocol.k)
    throw std::invalid_argument("build_view: speaker position out of [1, k]");
  if (static_cast<int>(prior_messages.size()) != speaker_pos - 1)
    throw std::invalid_argument("build_view: expected one message per earlier speaker");
  return build_view_unchecked(inst, protocol, speaker_pos, prior_messages);
}

Transcript run(const ProtocolDef& protocol, const Instance& inst) {
  check_protocol(protocol);
  check_dims(protocol, inst);

  Transcript t;
  t.messages.reserve(static_cast<std::size_t>(protocol.k - 1));
  for (int s = 1; s <= protocol.k - 1; ++s) {
    PlayerView view = build_view_unchecked(inst, protocol, s, t.messages);
    BitString msg = protocol.message_fns[static_cast<std::size_t>(s - 1)](view);
    const int budget = protocol.budgets[static_cast<std::size_t>(s - 1)];
    if (msg.size() != budget)
      throw BudgetViolation("speaker " + std::to_string(s) + " (player " +
                            std::to_string(view.player) + ") emitted " +
                            std::to_string(msg.size()) + " bits, budget is " +
                            std::to_string(budget));
    t.messages.push_back(std::move(msg));
  }

  PlayerView final_view = build_view_unchecked(inst, protocol, protocol.k, t.messages);
  t.output = protocol.output_fn(final_view);
  if (t.output != 0 && t.output != 1)
    throw std::invalid_argument("output oracle produced a non-bit value");
  t.total_cost = total_cost(protocol);
  t.max_cost = max_cost(protocol);
  return t;
}

int total_cost(const ProtocolDef& protocol) {
  return std::accumulate(protocol.budgets.begin(), protocol.budgets.end(), 0);
}

int max_cost(const ProtocolDef& protocol) {
  return *std::max_element(protocol.budgets.begin(), protocol.budgets.end());
}

}  // namespace mpj
