#include "dssp/transforms.hpp"

#include <cmath>
#include <span>
#include <unordered_map>

#include "dssp/errors.hpp"

namespace dssp {

namespace {

// Stage i works on element x_{i+1}, which sits at stride 2^(n-1-i) in rank order.
template <typename Butterfly>
void kronecker_apply(std::span<double> v, std::size_t n, Butterfly&& butterfly, TransformStats* stats) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t stride = std::size_t{1} << (n - 1 - i);
    for (std::size_t block = 0; block < v.size(); block += 2 * stride) {
      for (std::size_t j = block; j < block + stride; ++j) {
        butterfly(v[j], v[j + stride]);
        ++count;
      }
    }
  }
  if (stats != nullptr) stats->butterflies += count;
}

}  // namespace

DenseSetFunction dense_ft(DenseSetFunction f, Model model, TransformStats* stats) {
  const auto n = f.n();
  auto v = std::move(f).into_values();
  switch (model) {
    case Model::Difference:
      kronecker_apply(v, n, [](double& a, double& b) { b = a - b; }, stats);
      break;
    case Model::Union:
      kronecker_apply(v, n, [](double& a, double& b) {
        const double lo = a;
        a = b;
        b = lo - b;
      }, stats);
      break;
    case Model::SymmetricDifference:
      kronecker_apply(v, n, [](double& a, double& b) {
        const double lo = a;
        a = lo + b;
        b = lo - b;
      }, stats);
      break;
  }
  return {n, std::move(v)};
}

DenseSetFunction dense_ift(DenseSetFunction coeffs, Model model, TransformStats* stats) {
  const auto n = coeffs.n();
  auto v = std::move(coeffs).into_values();
  switch (model) {
    case Model::Difference:
      kronecker_apply(v, n, [](double& a, double& b) { b = a - b; }, stats);
      break;
    case Model::Union:
      kronecker_apply(v, n, [](double& a, double& b) {
        const double lo = a;
        a = lo + b;
        b = lo;
      }, stats);
      break;
    case Model::SymmetricDifference: {
      kronecker_apply(v, n, [](double& a, double& b) {
        const double lo = a;
        a = lo + b;
        b = lo - b;
      }, stats);
      const double scale = std::ldexp(1.0, -static_cast<int>(n));
      for (auto& x : v) x *= scale;
      break;
    }
  }
  return {n, std::move(v)};
}

double eval_sparse(const SparseFT& ft, const SubsetMask& a) {
  if (a.n() != ft.n()) throw InvalidInput("query mask does not match spectrum size");
  double sum = 0.0;
  switch (ft.model()) {
    case Model::Difference:
      for (const auto& e : ft.entries()) {
        if (e.set.is_subset_of(a)) sum += (e.set.cardinality() % 2 == 0) ? e.value : -e.value;
      }
      return sum;
    case Model::Union:
      for (const auto& e : ft.entries()) {
        if (!e.set.intersects(a)) sum += e.value;
      }
      return sum;
    case Model::SymmetricDifference:
      for (const auto& e : ft.entries()) sum += a.intersection_parity(e.set) ? -e.value : e.value;
      return std::ldexp(sum, -static_cast<int>(ft.domain().cardinality()));
  }
  return sum;
}

SparseFT restrict_ft(const SparseFT& ft, const SubsetMask& m, Model model) {
  if (model != ft.model()) throw InvalidInput("restriction model does not match the spectrum's model");
  if (m.n() != ft.n()) throw InvalidInput("restriction mask has wrong size");
  if (!m.is_subset_of(ft.domain())) throw InvalidInput("restriction mask leaves the spectrum's domain");

  std::vector<FourierEntry> grouped;
  grouped.reserve(ft.size());
  for (const auto& e : ft.entries()) {
    double value = e.value;
    if (model == Model::Difference && ((e.set - m).cardinality() % 2 == 1)) value = -value;
    grouped.push_back({e.set & m, value});
  }
  // The SparseFT constructor sums equal keys and drops exact zeros.
  SparseFT summed(ft.n(), model, std::move(grouped), m);
  if (model != Model::SymmetricDifference) return summed;

  const int dropped = static_cast<int>(ft.domain().cardinality() - m.cardinality());
  std::vector<FourierEntry> scaled(summed.entries().begin(), summed.entries().end());
  for (auto& e : scaled) e.value = std::ldexp(e.value, -dropped);
  return {ft.n(), model, std::move(scaled), m};
}

DenseSetFunction to_dense_coefficients(const SparseFT& ft) {
  auto out = DenseSetFunction::zeros(ft.n());
  auto v = std::move(out).into_values();
  for (const auto& e : ft.entries()) v[e.set.rank()] = e.value;
  return {ft.n(), std::move(v)};
}

SparseFT to_sparse(const DenseSetFunction& coeffs, Model model, double threshold) {
  std::vector<FourierEntry> entries;
  const auto values = coeffs.values();
  for (std::uint64_t r = 0; r < values.size(); ++r) {
    if (std::abs(values[r]) > threshold) entries.push_back({SubsetMask::from_rank(coeffs.n(), r), values[r]});
  }
  return {coeffs.n(), model, std::move(entries)};
}

}  // namespace dssp
