#include "dssp/sparse_ft.hpp"

#include <algorithm>

#include "dssp/errors.hpp"

namespace dssp {

SparseFT::SparseFT(std::size_t n, Model model) : n_(n), model_(model), domain_(SubsetMask::full(n)) {
  if (n == 0) throw InvalidInput("spectrum ground set must be nonempty");
}

SparseFT::SparseFT(std::size_t n, Model model, std::vector<FourierEntry> entries, std::optional<SubsetMask> domain)
    : SparseFT(n, model) {
  if (domain) {
    if (domain->n() != n) throw InvalidInput("spectrum domain mask has wrong size");
    domain_ = std::move(*domain);
  }
  for (const auto& e : entries) {
    if (e.set.n() != n) throw InvalidInput("frequency mask " + e.set.to_string() + " has wrong size");
    if (!e.set.is_subset_of(domain_)) throw InvalidInput("frequency " + e.set.to_string() + " outside the domain");
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const FourierEntry& a, const FourierEntry& b) { return lex_less(a.set, b.set); });
  entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().set == e.set) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const FourierEntry& e) { return e.value == 0.0; });
}

namespace {

std::vector<FourierEntry>::const_iterator find_entry(const std::vector<FourierEntry>& entries, const SubsetMask& b) {
  return std::lower_bound(entries.begin(), entries.end(), b,
                          [](const FourierEntry& e, const SubsetMask& key) { return lex_less(e.set, key); });
}

}  // namespace

double SparseFT::coefficient(const SubsetMask& b) const {
  auto it = find_entry(entries_, b);
  return (it != entries_.end() && it->set == b) ? it->value : 0.0;
}

bool SparseFT::contains(const SubsetMask& b) const {
  auto it = find_entry(entries_, b);
  return it != entries_.end() && it->set == b;
}

std::vector<SubsetMask> SparseFT::support() const {
  std::vector<SubsetMask> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.set);
  return out;
}

}  // namespace dssp
