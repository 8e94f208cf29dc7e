#include "dssp/subset_mask.hpp"

#include <stdexcept>
#include <unordered_set>

#include "dssp/errors.hpp"

namespace dssp {

GroundSet::GroundSet(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidInput("ground set must have at least one element");
}

GroundSet::GroundSet(std::vector<std::string> labels) : n_(labels.size()), labels_(std::move(labels)) {
  if (n_ == 0) throw InvalidInput("ground set must have at least one element");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw InvalidInput("duplicate element label: " + l);
  }
}

std::string GroundSet::label(std::size_t i) const {
  if (i >= n_) throw InvalidInput("element index out of range");
  return labels_.empty() ? "x" + std::to_string(i + 1) : labels_[i];
}

namespace {

std::size_t word_count(std::size_t n) { return (n + SubsetMask::kWordBits - 1) / SubsetMask::kWordBits; }

}  // namespace

SubsetMask::SubsetMask(std::size_t n) : n_(n), words_(word_count(n), Word{0}) {}

SubsetMask SubsetMask::full(std::size_t n) {
  SubsetMask m(n);
  for (auto& w : m.words_) w = ~Word{0};
  m.clear_tail();
  return m;
}

SubsetMask SubsetMask::singleton(std::size_t n, std::size_t i) {
  SubsetMask m(n);
  m.insert(i);
  return m;
}

SubsetMask SubsetMask::from_indices(std::size_t n, std::span<const std::size_t> indices) {
  SubsetMask m(n);
  for (auto i : indices) m.insert(i);
  return m;
}

SubsetMask SubsetMask::from_rank(std::size_t n, std::uint64_t rank) {
  if (n > 63) throw CapacityError("lexicographic rank needs n <= 63");
  if (rank >> n) throw InvalidInput("rank out of range for n");
  SubsetMask m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((rank >> (n - 1 - i)) & 1U) m.insert(i);
  }
  return m;
}

void SubsetMask::check_index(std::size_t i) const {
  if (i >= n_) throw InvalidInput("element index " + std::to_string(i) + " out of range for n=" + std::to_string(n_));
}

void SubsetMask::check_same_n(const SubsetMask& other) const {
  if (n_ != other.n_) throw InvalidInput("subset masks over different ground sets");
}

void SubsetMask::clear_tail() noexcept {
  const auto rem = n_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

bool SubsetMask::contains(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void SubsetMask::insert(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] |= Word{1} << (i % kWordBits);
}

void SubsetMask::erase(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

void SubsetMask::toggle(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
}

std::size_t SubsetMask::cardinality() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool SubsetMask::is_empty() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

bool SubsetMask::intersects(const SubsetMask& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

bool SubsetMask::intersection_parity(const SubsetMask& other) const noexcept {
  Word acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

SubsetMask SubsetMask::with(std::size_t i) const {
  SubsetMask m = *this;
  m.insert(i);
  return m;
}

SubsetMask SubsetMask::without(std::size_t i) const {
  SubsetMask m = *this;
  m.erase(i);
  return m;
}

SubsetMask SubsetMask::complement() const {
  SubsetMask m = *this;
  for (auto& w : m.words_) w = ~w;
  m.clear_tail();
  return m;
}

SubsetMask& SubsetMask::operator|=(const SubsetMask& other) {
  check_same_n(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

SubsetMask& SubsetMask::operator&=(const SubsetMask& other) {
  check_same_n(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

SubsetMask& SubsetMask::operator^=(const SubsetMask& other) {
  check_same_n(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

SubsetMask& SubsetMask::operator-=(const SubsetMask& other) {
  check_same_n(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

std::uint64_t SubsetMask::rank() const {
  if (n_ > 63) throw CapacityError("lexicographic rank needs n <= 63");
  // Bit i holds x_{i+1}; the rank puts x_1 in the most significant position.
  const Word bits = words_.empty() ? 0 : words_[0];
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if ((bits >> i) & 1U) r |= std::uint64_t{1} << (n_ - 1 - i);
  }
  return r;
}

std::vector<std::size_t> SubsetMask::elements() const {
  std::vector<std::size_t> out;
  out.reserve(cardinality());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = words_[w];
    while (bits != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t SubsetMask::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string SubsetMask::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto i : elements()) {
    if (!first) s += ',';
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

bool lex_less(const SubsetMask& a, const SubsetMask& b) noexcept {
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t w = 0; w < wa.size() && w < wb.size(); ++w) {
    const auto diff = wa[w] ^ wb[w];
    if (diff != 0) {
      // The lowest differing position is the most significant one.
      const auto j = std::countr_zero(diff);
      return (wb[w] >> j) & 1U;
    }
  }
  return wa.size() < wb.size();
}

}  // namespace dssp
