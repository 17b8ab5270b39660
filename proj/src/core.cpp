#include "mpj/core.hpp"

#include <algorithm>

namespace mpj {

BitString::BitString(std::string_view ascii) {
  bits_.reserve(ascii.size());
  for (char c : ascii) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("BitString: character '" + std::string(1, c) +
                                  "' is not 0 or 1");
    bits_.push_back(c == '1' ? 1 : 0);
  }
}

BitString BitString::from_rank(std::uint64_t rank, int n) {
  if (n < 0 || n > 63) throw std::invalid_argument("BitString::from_rank: n out of range");
  if (n < 63 && rank >> n)
    throw std::invalid_argument("BitString::from_rank: rank does not fit in n bits");
  BitString s(n);
  for (int pos = 1; pos <= n; ++pos)
    s.bits_[pos - 1] = static_cast<std::uint8_t>((rank >> (n - pos)) & 1u);
  return s;
}

void BitString::set_bit(int pos, int value) {
  check_pos(pos);
  if (value != 0 && value != 1)
    throw std::invalid_argument("BitString: bit value must be 0 or 1");
  bits_[pos - 1] = static_cast<std::uint8_t>(value);
}

int BitString::popcount() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

std::uint64_t BitString::rank() const {
  if (size() > 63) throw std::invalid_argument("BitString::rank: string longer than 63 bits");
  std::uint64_t r = 0;
  for (std::uint8_t b : bits_) r = (r << 1) | b;
  return r;
}

std::string BitString::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (std::uint8_t b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

PointerFn::PointerFn(std::vector<int> table) : table_(std::move(table)) {
  const int n = size();
  if (n == 0) throw std::invalid_argument("PointerFn: empty table");
  for (int v : table_)
    if (v < 1 || v > n)
      throw std::invalid_argument("PointerFn: entry " + std::to_string(v) +
                                  " out of range [1, " + std::to_string(n) + "]");
}

PointerFn PointerFn::identity(int n) {
  std::vector<int> t(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) t[v - 1] = v;
  return PointerFn(std::move(t));
}

void PointerFn::set(int v, int target) {
  if (v < 1 || v > size()) throw std::invalid_argument("PointerFn::set: argument out of range");
  if (target < 1 || target > size())
    throw std::invalid_argument("PointerFn::set: target out of range");
  table_[v - 1] = target;
}

Instance::Instance(int n_, int k_, int start_, std::vector<PointerFn> middles_, BitString x_)
    : n(n_), k(k_), start(start_), middles(std::move(middles_)), x(std::move(x_)) {
  if (n < 1) throw std::invalid_argument("Instance: n must be >= 1");
  if (k < 2) throw std::invalid_argument("Instance: k must be >= 2");
  if (start < 1 || start > n) throw std::invalid_argument("Instance: start out of [1, n]");
  if (static_cast<int>(middles.size()) != k - 2)
    throw std::invalid_argument("Instance: expected k-2 middle functions");
  for (const PointerFn& f : middles)
    if (f.size() != n) throw std::invalid_argument("Instance: middle function arity != n");
  if (x.size() != n) throw std::invalid_argument("Instance: x length != n");
}

const PointerFn& Instance::middle(int layer) const {
  if (layer < 2 || layer > k - 1)
    throw std::invalid_argument("Instance::middle: layer out of [2, k-1]");
  return middles[static_cast<std::size_t>(layer - 2)];
}

const std::vector<int>& IndexPartition::cls(int a, int b) const {
  if (a == 0) return b == 0 ? i00 : i01;
  return b == 0 ? i10 : i11;
}

int evaluate(const Instance& inst) {
  int v = inst.start;
  for (int layer = 2; layer <= inst.k - 1; ++layer) v = inst.middle(layer)(v);
  return inst.x.bit(v);
}

BitString compose_suffix(const Instance& inst, int layer) {
  if (layer < 1 || layer > inst.k - 1)
    throw std::invalid_argument("compose_suffix: layer out of [1, k-1]");
  if (layer == inst.k - 1) return inst.x;
  BitString g(inst.n);
  for (int s = 1; s <= inst.n; ++s) {
    int v = s;
    for (int l = layer + 1; l <= inst.k - 1; ++l) v = inst.middle(l)(v);
    g.set_bit(s, inst.x.bit(v));
  }
  return g;
}

namespace {
void check_same_length(const BitString& x, const BitString& y, const char* what) {
  if (x.size() != y.size())
    throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
}
}  // namespace

bool dominance_less(const BitString& x, const BitString& y) {
  check_same_length(x, y, "dominance_less");
  bool strict = false;
  for (int j = 1; j <= x.size(); ++j) {
    if (x.bit(j) > y.bit(j)) return false;
    if (x.bit(j) < y.bit(j)) strict = true;
  }
  return strict;
}

IndexPartition index_partition(const BitString& x, const BitString& y) {
  check_same_length(x, y, "index_partition");
  IndexPartition p;
  for (int j = 1; j <= x.size(); ++j) {
    if (x.bit(j) == 0)
      (y.bit(j) == 0 ? p.i00 : p.i01).push_back(j);
    else
      (y.bit(j) == 0 ? p.i10 : p.i11).push_back(j);
  }
  return p;
}

bool is_crossing(const BitString& x, const BitString& y) {
  check_same_length(x, y, "is_crossing");
  bool seen[2][2] = {{false, false}, {false, false}};
  for (int j = 1; j <= x.size(); ++j) seen[x.bit(j)][y.bit(j)] = true;
  return seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1];
}

BitString chain_string(int n, int i) {
  if (n < 1) throw std::invalid_argument("chain_string: n must be >= 1");
  if (i < 0 || i > n) throw std::invalid_argument("chain_string: i out of [0, n]");
  BitString s(n);
  for (int pos = i + 1; pos <= n; ++pos) s.set_bit(pos, 1);
  return s;
}

}  // namespace mpj
