#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace dssp {

/// Ground set N = {x_1, ..., x_n} with optional element labels.
class GroundSet {
 public:
  explicit GroundSet(std::size_t n);
  explicit GroundSet(std::vector<std::string> labels);

  std::size_t size() const noexcept { return n_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Label of element index i (0-based); "x<i+1>" when unlabeled.
  std::string label(std::size_t i) const;

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
};

/// A subset of the ground set as a fixed-length bit vector.
///
/// Element x_i (1-based, as written in the math) lives at bit position i-1;
/// every member function that takes an element index uses that 0-based
/// position. Bits at positions >= n are always clear.
///
/// The lexicographic rank orders subsets by their indicator vectors with x_1
/// as the most significant position, which is the row/column order of the
/// Kronecker-product transform matrices. rank() is only defined for n <= 63;
/// lex_less() works for any n.
class SubsetMask {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  SubsetMask() = default;
  explicit SubsetMask(std::size_t n);

  static SubsetMask empty_set(std::size_t n) { return SubsetMask(n); }
  static SubsetMask full(std::size_t n);
  static SubsetMask singleton(std::size_t n, std::size_t i);
  /// Elements given as 0-based indices.
  static SubsetMask from_indices(std::size_t n, std::span<const std::size_t> indices);
  /// Inverse of rank(); requires n <= 63 and rank < 2^n.
  static SubsetMask from_rank(std::size_t n, std::uint64_t rank);

  std::size_t n() const noexcept { return n_; }

  bool contains(std::size_t i) const;
  void insert(std::size_t i);
  void erase(std::size_t i);
  void toggle(std::size_t i);

  std::size_t cardinality() const noexcept;
  bool is_empty() const noexcept;
  bool is_subset_of(const SubsetMask& other) const noexcept;
  bool intersects(const SubsetMask& other) const noexcept;
  /// |this ∩ other| mod 2.
  bool intersection_parity(const SubsetMask& other) const noexcept;

  SubsetMask with(std::size_t i) const;
  SubsetMask without(std::size_t i) const;
  SubsetMask complement() const;

  SubsetMask& operator|=(const SubsetMask& other);
  SubsetMask& operator&=(const SubsetMask& other);
  SubsetMask& operator^=(const SubsetMask& other);
  /// Set difference.
  SubsetMask& operator-=(const SubsetMask& other);

  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
  friend SubsetMask operator^(SubsetMask a, const SubsetMask& b) { return a ^= b; }
  friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { return a -= b; }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) noexcept {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  std::uint64_t rank() const;
  /// 0-based element indices in increasing order.
  std::vector<std::size_t> elements() const;
  std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }
  std::size_t hash() const noexcept;
  /// "{1,3}" using 1-based element numbers.
  std::string to_string() const;

 private:
  void check_index(std::size_t i) const;
  void check_same_n(const SubsetMask& other) const;
  void clear_tail() noexcept;

  std::size_t n_ = 0;
  boost::container::small_vector<Word, 1> words_;
};

/// Lexicographic order on indicator vectors, x_1 most significant.
bool lex_less(const SubsetMask& a, const SubsetMask& b) noexcept;

/// (cardinality, lexicographic rank): a linear extension of subset inclusion.
struct CardinalityLexLess {
  bool operator()(const SubsetMask& a, const SubsetMask& b) const noexcept {
    const auto ca = a.cardinality();
    const auto cb = b.cardinality();
    if (ca != cb) return ca < cb;
    return lex_less(a, b);
  }
};

struct LexLess {
  bool operator()(const SubsetMask& a, const SubsetMask& b) const noexcept { return lex_less(a, b); }
};

struct SubsetMaskHash {
  std::size_t operator()(const SubsetMask& m) const noexcept { return m.hash(); }
};

}  // namespace dssp
