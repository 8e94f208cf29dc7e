#include "dssp/filtering.hpp"

#include <cmath>

#include "dssp/errors.hpp"
#include "dssp/rng.hpp"

namespace dssp {

OneHopFilter::OneHopFilter(std::vector<double> singleton_coeffs) : coeffs_(std::move(singleton_coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("one-hop filter needs n >= 1");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidInput("filter coefficients must be finite");
  }
}

OneHopFilter sample_one_hop(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("one-hop filter needs n >= 1");
  Rng rng(seed);
  std::vector<double> coeffs(n);
  for (auto& c : coeffs) c = rng.normal();
  return OneHopFilter(std::move(coeffs));
}

FilteredOracle::FilteredOracle(OneHopFilter h, SetFunctionOracle& inner, Model model)
    : SetFunctionOracle(inner.n()), h_(std::move(h)), model_(model), inner_(&inner) {
  if (h_.n() != inner.n()) throw InvalidInput("filter and oracle ground sets differ");
}

FilteredOracle::FilteredOracle(OneHopFilter h, std::unique_ptr<SetFunctionOracle> inner, Model model)
    : FilteredOracle(std::move(h), *inner, model) {
  owned_ = std::move(inner);
}

double FilteredOracle::evaluate(const SubsetMask& a) {
  const auto n = this->n();
  // Shifts that coincide with A fold into the weight of the single s(A) query.
  double self_weight = h_.base();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_a = a.contains(i);
    const double c = h_.singleton(i);
    switch (model_) {
      case Model::Union:
        if (in_a) {
          self_weight += c;
        } else {
          sum += c * inner_->eval(a.with(i));
        }
        break;
      case Model::Difference:
        if (!in_a) {
          self_weight += c;
        } else {
          sum += c * inner_->eval(a.without(i));
        }
        break;
      case Model::SymmetricDifference: {
        SubsetMask shifted = a;
        shifted.toggle(i);
        sum += c * inner_->eval(shifted);
        break;
      }
    }
  }
  return self_weight * inner_->eval(a) + sum;
}

std::unique_ptr<SetFunctionOracle> FilteredOracle::do_clone() const {
  return std::make_unique<FilteredOracle>(h_, inner_->clone(), model_);
}

std::unique_ptr<FilteredOracle> filtered_oracle(const OneHopFilter& h, SetFunctionOracle& s, Model model) {
  return std::make_unique<FilteredOracle>(h, s, model);
}

double frequency_response(const OneHopFilter& h, const SubsetMask& b, Model model) {
  if (b.n() != h.n()) throw InvalidInput("frequency mask does not match filter size");
  double r = h.base();
  for (std::size_t i = 0; i < h.n(); ++i) {
    if (!b.contains(i)) {
      r += h.singleton(i);
    } else if (model == Model::SymmetricDifference) {
      r -= h.singleton(i);
    }
  }
  return r;
}

DenseSetFunction dense_convolve(const DenseSetFunction& h, const DenseSetFunction& s, Model model) {
  if (h.n() != s.n()) throw InvalidInput("filter and signal sizes differ");
  const auto n = s.n();
  const auto size = s.size();
  std::vector<double> out(size, 0.0);
  for (std::uint64_t a = 0; a < size; ++a) {
    const auto set_a = SubsetMask::from_rank(n, a);
    double acc = 0.0;
    for (std::uint64_t q = 0; q < size; ++q) {
      if (h[q] == 0.0) continue;
      const auto set_q = SubsetMask::from_rank(n, q);
      SubsetMask shifted = set_a;
      switch (model) {
        case Model::Difference: shifted -= set_q; break;
        case Model::Union: shifted |= set_q; break;
        case Model::SymmetricDifference: shifted ^= set_q; break;
      }
      acc += h[q] * s.at(shifted);
    }
    out[a] = acc;
  }
  return {n, std::move(out)};
}

DenseSetFunction to_dense(const OneHopFilter& h) {
  const auto n = h.n();
  auto values = std::move(DenseSetFunction::zeros(n)).into_values();
  values[0] = h.base();
  for (std::size_t i = 0; i < n; ++i) values[SubsetMask::singleton(n, i).rank()] = h.singleton(i);
  return {n, std::move(values)};
}

}  // namespace dssp
