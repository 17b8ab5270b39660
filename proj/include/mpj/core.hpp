#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mpj {

/// A string over {0,1}. Positions are 1-indexed, position 1 is the leftmost
/// character of the ASCII form. Zero length is allowed (empty protocol
/// messages); problem inputs additionally require length >= 1, which the
/// Instance constructor enforces.
class BitString {
 public:
  BitString() = default;
  explicit BitString(int n) : bits_(check_size(n), 0) {}
  explicit BitString(std::string_view ascii);

  /// Bits of `rank` as an n-bit string, position 1 = most significant bit.
  /// Ranks enumerate {0,1}^n in lexicographic order.
  static BitString from_rank(std::uint64_t rank, int n);

  int size() const { return static_cast<int>(bits_.size()); }
  bool empty() const { return bits_.empty(); }

  int bit(int pos) const {
    check_pos(pos);
    return bits_[pos - 1];
  }
  void set_bit(int pos, int value);

  int popcount() const;
  std::uint64_t rank() const;  // inverse of from_rank, size() <= 63
  std::string str() const;

  bool operator==(const BitString&) const = default;
  std::strong_ordering operator<=>(const BitString& other) const {
    return bits_ <=> other.bits_;
  }

 private:
  static int check_size(int n) {
    if (n < 0) throw std::invalid_argument("BitString: negative length");
    return n;
  }
  void check_pos(int pos) const {
    if (pos < 1 || pos > size())
      throw std::invalid_argument("BitString: position " + std::to_string(pos) +
                                  " out of range [1, " + std::to_string(size()) + "]");
  }
  std::vector<std::uint8_t> bits_;
};

/// A total function [n] -> [n], stored as a 1-indexed table.
class PointerFn {
 public:
  PointerFn() = default;
  explicit PointerFn(std::vector<int> table);

  static PointerFn identity(int n);

  int size() const { return static_cast<int>(table_.size()); }
  int operator()(int v) const {
    if (v < 1 || v > size())
      throw std::invalid_argument("PointerFn: argument " + std::to_string(v) +
                                  " out of range [1, " + std::to_string(size()) + "]");
    return table_[v - 1];
  }
  const std::vector<int>& table() const { return table_; }
  void set(int v, int target);

  bool operator==(const PointerFn&) const = default;

 private:
  std::vector<int> table_;
};

/// One full pointer-jumping input (i, f_2, ..., f_{k-1}, x). The start index
/// plays the role of f_1, a pointer of arity zero.
struct Instance {
  int n = 0;
  int k = 0;
  int start = 0;
  std::vector<PointerFn> middles;  // f_2 .. f_{k-1}
  BitString x;

  Instance() = default;
  Instance(int n, int k, int start, std::vector<PointerFn> middles, BitString x);

  /// f_j for j in [2, k-1].
  const PointerFn& middle(int layer) const;

  bool operator==(const Instance&) const = default;
};

/// The four index classes of a pair of equal-length strings:
/// j is in cls(a,b) iff (x^(j), y^(j)) = (a, b).
struct IndexPartition {
  std::vector<int> i00, i01, i10, i11;

  const std::vector<int>& cls(int a, int b) const;
  bool operator==(const IndexPartition&) const = default;
};

/// Follow the pointer chain: v <- start, v <- f_j(v) for j = 2..k-1,
/// answer x^(v).
int evaluate(const Instance& inst);

/// The composition of everything strictly after layer j, as an n-bit string:
/// result^(s) = x^( f_{k-1}( ... f_{j+1}(s) ... ) ). For j = k-1 this is x.
BitString compose_suffix(const Instance& inst, int layer);

/// Coordinatewise x <= y with x != y.
bool dominance_less(const BitString& x, const BitString& y);

IndexPartition index_partition(const BitString& x, const BitString& y);

/// All four classes of index_partition(x, y) nonempty.
bool is_crossing(const BitString& x, const BitString& y);

/// i zeros followed by n-i ones.
BitString chain_string(int n, int i);

}  // namespace mpj
