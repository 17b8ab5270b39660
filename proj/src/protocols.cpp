#include "mpj/protocols.hpp"

#include <algorithm>

#include "mpj/intlog.hpp"

namespace mpj {

namespace {

std::vector<int> identity_order(int k) {
  std::vector<int> order(static_cast<std::size_t>(k));
  for (int s = 1; s <= k; ++s) order[s - 1] = s;
  return order;
}

BitString encode_vertex(int v, int bits) {
  // v - 1 written MSB-first in `bits` bits
  BitString s(bits);
  int r = v - 1;
  for (int pos = bits; pos >= 1; --pos) {
    s.set_bit(pos, r & 1);
    r >>= 1;
  }
  return s;
}

int decode_vertex(const BitString& s) {
  int r = 0;
  for (int pos = 1; pos <= s.size(); ++pos) r = (r << 1) | s.bit(pos);
  return r + 1;
}

BitString take_prefix(const BitString& s, int len) {
  BitString out(len);
  for (int pos = 1; pos <= len; ++pos) out.set_bit(pos, s.bit(pos));
  return out;
}

}  // namespace

ProtocolDef trivial_protocol(int n, int k) {
  if (n < 1 || k < 2) throw std::invalid_argument("trivial_protocol: need n >= 1, k >= 2");
  ProtocolDef p;
  p.name = "trivial";
  p.n = n;
  p.k = k;
  p.view_model = ViewModel::Collapsing;
  p.speaking_order = identity_order(k);
  p.budgets.assign(static_cast<std::size_t>(k - 1), 0);
  p.budgets.back() = n;
  for (int s = 1; s <= k - 2; ++s)
    p.message_fns.emplace_back([](const PlayerView&) { return BitString(0); });
  p.message_fns.emplace_back(
      [](const PlayerView& view) { return *view.suffix_composition; });
  p.output_fn = [](const PlayerView& view) {
    int v = *view.start;
    for (int layer = 2; layer <= view.k - 1; ++layer) v = view.middles.at(layer)(v);
    return view.messages.back().bit(v);
  };
  return p;
}

ProtocolDef reordered_protocol(int n, int k, int j, int i) {
  if (k < 3)
    throw PreconditionViolated("reordered_protocol: k >= 3 violated: k = " + std::to_string(k));
  if (!(1 <= i && i < j && j <= k))
    throw PreconditionViolated("reordered_protocol: 1 <= i < j <= k violated: i = " +
                               std::to_string(i) + ", j = " + std::to_string(j));
  if (n < 1) throw std::invalid_argument("reordered_protocol: n must be >= 1");

  // player j first, player i last among message senders, the largest
  // remaining player takes the output seat
  std::vector<int> rest;
  for (int p = 1; p <= k; ++p)
    if (p != i && p != j) rest.push_back(p);
  const int output_player = rest.back();
  rest.pop_back();

  ProtocolDef p;
  p.name = "reordered";
  p.params = {std::to_string(j), std::to_string(i)};
  p.n = n;
  p.k = k;
  p.view_model = ViewModel::GeneralNOF;
  p.speaking_order.push_back(j);
  for (int f : rest) p.speaking_order.push_back(f);
  p.speaking_order.push_back(i);
  p.speaking_order.push_back(output_player);

  const int vbits = ceil_log2(static_cast<std::uint64_t>(n));
  p.budgets.assign(static_cast<std::size_t>(k - 1), 0);
  p.budgets.front() = vbits;
  p.budgets.back() = 1;

  p.message_fns.emplace_back([j, vbits](const PlayerView& view) {
    int v = *view.start;  // j >= 2, so the start is visible
    for (int layer = 2; layer <= j - 1; ++layer) v = view.middles.at(layer)(v);
    return encode_vertex(v, vbits);
  });
  for (std::size_t f = 0; f < rest.size(); ++f)
    p.message_fns.emplace_back([](const PlayerView&) { return BitString(0); });
  p.message_fns.emplace_back([j](const PlayerView& view) {
    int v = decode_vertex(view.messages.front());
    for (int layer = j; layer <= view.k - 1; ++layer) v = view.middles.at(layer)(v);
    BitString answer(1);
    answer.set_bit(1, view.x->bit(v));
    return answer;
  });
  p.output_fn = [](const PlayerView& view) { return view.messages.back().bit(1); };
  return p;
}

TpjShape::TpjShape(int b, int k) : branching(b), depth(k) {
  if (b < 2) throw std::invalid_argument("TpjShape: branching must be >= 2");
  if (k < 2) throw std::invalid_argument("TpjShape: depth must be >= 2");
  std::int64_t n = 1;
  for (int l = 1; l <= k - 1; ++l) {
    n *= b;
    if (n > 1'000'000'000) throw std::invalid_argument("TpjShape: b^(k-1) too large");
  }
  n_ = static_cast<int>(n);
}

ProtocolDef tpj_protocol(const TpjShape& shape) {
  const int n = shape.n();
  const int k = shape.depth;
  const int b = shape.branching;

  ProtocolDef p;
  p.name = "tpj";
  p.params = {std::to_string(b)};
  p.n = n;
  p.k = k;
  p.view_model = ViewModel::GeneralNOF;
  p.speaking_order = identity_order(k);
  p.budgets.assign(static_cast<std::size_t>(k - 1), 0);
  p.budgets.front() = b;

  p.message_fns.emplace_back([b](const PlayerView& view) {
    BitString table(b);
    for (int s = 1; s <= b; ++s) {
      int v = s;
      for (int layer = 2; layer <= view.k - 1; ++layer) v = view.middles.at(layer)(v);
      table.set_bit(s, view.x->bit(v));
    }
    return table;
  });
  for (int s = 2; s <= k - 1; ++s)
    p.message_fns.emplace_back([](const PlayerView&) { return BitString(0); });
  p.output_fn = [b](const PlayerView& view) {
    const int start = *view.start;
    if (start > b)
      throw std::invalid_argument("tpj: instance violates the tree shape (start = " +
                                  std::to_string(start) + " > b = " + std::to_string(b) + ")");
    return view.messages.front().bit(start);
  };
  return p;
}

ProtocolDef truncating_protocol(int n, int k, std::vector<int> budgets, std::string name,
                                std::vector<std::string> params) {
  if (n < 1 || k < 2) throw std::invalid_argument("truncating_protocol: need n >= 1, k >= 2");
  if (static_cast<int>(budgets.size()) != k - 1)
    throw std::invalid_argument("truncating_protocol: expected k-1 budgets");
  for (int t : budgets)
    if (t < 0 || t > n)
      throw std::invalid_argument("truncating_protocol: budgets must lie in [0, n]");

  ProtocolDef p;
  p.name = std::move(name);
  p.params = std::move(params);
  p.n = n;
  p.k = k;
  p.view_model = ViewModel::Collapsing;
  p.speaking_order = identity_order(k);
  p.budgets = std::move(budgets);
  for (int s = 1; s <= k - 1; ++s) {
    const int t = p.budgets[static_cast<std::size_t>(s - 1)];
    p.message_fns.emplace_back([t](const PlayerView& view) {
      return take_prefix(*view.suffix_composition, t);
    });
  }
  p.output_fn = [budgets = p.budgets](const PlayerView& view) {
    // vertices reached at layers 1..k-1; answer from the latest message
    // that covers the reached vertex, else guess 0
    std::vector<int> vertex(static_cast<std::size_t>(view.k - 1));
    vertex[0] = *view.start;
    for (int layer = 2; layer <= view.k - 1; ++layer)
      vertex[static_cast<std::size_t>(layer - 1)] =
          view.middles.at(layer)(vertex[static_cast<std::size_t>(layer - 2)]);
    for (int s = view.k - 1; s >= 1; --s) {
      const int v = vertex[static_cast<std::size_t>(s - 1)];
      if (v <= budgets[static_cast<std::size_t>(s - 1)])
        return view.messages[static_cast<std::size_t>(s - 1)].bit(v);
    }
    return 0;
  };
  return p;
}

ProtocolDef cheating_protocol(std::string_view base, int n, int k, int budget_total) {
  if (budget_total < 0) throw std::invalid_argument("cheating_protocol: negative budget");
  if (budget_total > std::max(n - 3, 0))
    throw PreconditionViolated("cheating_protocol: budget_total <= n-3 violated: " +
                               std::to_string(budget_total) + " > " + std::to_string(n - 3));
  std::vector<int> budgets(static_cast<std::size_t>(k - 1), 0);
  if (base == "silent") {
    if (budget_total != 0)
      throw std::invalid_argument("cheating_protocol: silent requires budget_total = 0");
    return truncating_protocol(n, k, std::move(budgets), "silent", {});
  }
  if (base == "truncated-trivial") {
    budgets.back() = budget_total;
    return truncating_protocol(n, k, std::move(budgets), "truncated-trivial",
                               {std::to_string(budget_total)});
  }
  if (base == "first-player") {
    budgets.front() = budget_total;
    return truncating_protocol(n, k, std::move(budgets), "first-player",
                               {std::to_string(budget_total)});
  }
  throw std::invalid_argument("cheating_protocol: unknown base '" + std::string(base) + "'");
}

ProtocolDef uniform_cheating_protocol(int n, int k, int per_speaker_budget) {
  const int bound = n - ceil_half_log2(static_cast<std::uint64_t>(n)) - 3;
  if (per_speaker_budget < 0)
    throw std::invalid_argument("uniform_cheating_protocol: negative budget");
  if (per_speaker_budget > bound)
    throw PreconditionViolated(
        "uniform_cheating_protocol: t <= n - ceil(0.5*log2 n) - 3 violated: " +
        std::to_string(per_speaker_budget) + " > " + std::to_string(bound));
  std::vector<int> budgets(static_cast<std::size_t>(k - 1), per_speaker_budget);
  return truncating_protocol(n, k, std::move(budgets), "uniform-truncated",
                             {std::to_string(per_speaker_budget)});
}

namespace {

std::int64_t ipow(int b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::vector<Instance> tree_instances(const TpjShape& shape) {
  const int n = shape.n();
  const int k = shape.depth;
  const int b = shape.branching;

  // per layer j in 2..k-1: live slots of layer j-1 are [1, b^(j-1)]
  std::vector<int> live(static_cast<std::size_t>(std::max(k - 2, 0)));
  for (int j = 2; j <= k - 1; ++j) live[static_cast<std::size_t>(j - 2)] = static_cast<int>(ipow(b, j - 1));

  std::vector<Instance> out;
  std::vector<PointerFn> middles(static_cast<std::size_t>(k - 2), PointerFn::identity(n));
  // choice[j][v]: which child (0..b-1) live vertex v of layer j-1 points to
  std::vector<std::vector<int>> choice(static_cast<std::size_t>(std::max(k - 2, 0)));
  for (int j = 2; j <= k - 1; ++j)
    choice[static_cast<std::size_t>(j - 2)].assign(static_cast<std::size_t>(live[static_cast<std::size_t>(j - 2)]), 0);

  auto apply_choices = [&] {
    for (int j = 2; j <= k - 1; ++j) {
      PointerFn& f = middles[static_cast<std::size_t>(j - 2)];
      const int m = live[static_cast<std::size_t>(j - 2)];
      for (int v = 1; v <= n; ++v) {
        if (v <= m)
          f.set(v, (v - 1) * b + 1 + choice[static_cast<std::size_t>(j - 2)][static_cast<std::size_t>(v - 1)]);
        else
          f.set(v, 1);  // dead slot, unreachable from the root
      }
    }
  };

  // odometer over all child choices, lexicographic with f_2's first entry
  // most significant, matching the (start, middles, x) instance order
  auto advance = [&]() -> bool {
    for (int j = k - 1; j >= 2; --j) {
      auto& digits = choice[static_cast<std::size_t>(j - 2)];
      for (int v = static_cast<int>(digits.size()); v >= 1; --v) {
        if (++digits[static_cast<std::size_t>(v - 1)] < b) return true;
        digits[static_cast<std::size_t>(v - 1)] = 0;
      }
    }
    return false;
  };

  for (int start = 1; start <= b; ++start) {
    for (int j = 2; j <= k - 1; ++j)
      std::fill(choice[static_cast<std::size_t>(j - 2)].begin(), choice[static_cast<std::size_t>(j - 2)].end(), 0);
    bool more = true;
    while (more) {
      apply_choices();
      const std::uint64_t xmax = std::uint64_t{1} << n;
      for (std::uint64_t r = 0; r < xmax; ++r)
        out.emplace_back(n, k, start, middles, BitString::from_rank(r, n));
      more = advance();
    }
  }
  return out;
}

bool is_tree_instance(const TpjShape& shape, const Instance& inst) {
  if (inst.n != shape.n() || inst.k != shape.depth) return false;
  const int b = shape.branching;
  if (inst.start > b) return false;
  for (int j = 2; j <= inst.k - 1; ++j) {
    const std::int64_t m = ipow(b, j - 1);
    for (int v = 1; v <= static_cast<int>(m); ++v) {
      const int target = inst.middle(j)(v);
      if (target < (v - 1) * b + 1 || target > v * b) return false;
    }
  }
  return true;
}

ProtocolDef protocol_by_name(std::string_view spec, int n, int k) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= spec.size()) {
    std::size_t colon = spec.find(':', begin);
    if (colon == std::string_view::npos) {
      parts.emplace_back(spec.substr(begin));
      break;
    }
    parts.emplace_back(spec.substr(begin, colon - begin));
    begin = colon + 1;
  }
  const std::string& name = parts.front();
  auto int_param = [&](std::size_t idx, int fallback) {
    if (idx >= parts.size()) return fallback;
    return std::stoi(parts[idx]);
  };
  auto require_param = [&](std::size_t idx) {
    if (idx >= parts.size())
      throw std::invalid_argument("protocol '" + name + "' needs a :parameter");
    return std::stoi(parts[idx]);
  };

  if (name == "trivial") return trivial_protocol(n, k);
  if (name == "reordered") return reordered_protocol(n, k, int_param(1, 2), int_param(2, 1));
  if (name == "tpj") {
    TpjShape shape(require_param(1), k);
    if (shape.n() != n)
      throw std::invalid_argument("tpj: n must equal b^(k-1) = " + std::to_string(shape.n()));
    return tpj_protocol(shape);
  }
  if (name == "silent") return cheating_protocol("silent", n, k, 0);
  if (name == "truncated-trivial" || name == "first-player")
    return cheating_protocol(name, n, k, require_param(1));
  if (name == "uniform-truncated") return uniform_cheating_protocol(n, k, require_param(1));
  throw std::invalid_argument("unknown protocol: '" + name + "'");
}

}  // namespace mpj
