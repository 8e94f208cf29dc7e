#include "dssp/dense.hpp"

#include <limits>
#include <string>

#include "dssp/errors.hpp"
#include "dssp/oracle.hpp"

namespace dssp {

std::size_t dense_size(std::size_t n) {
  if (n >= std::numeric_limits<std::size_t>::digits - 3 ||
      (std::size_t{1} << n) > std::vector<double>().max_size()) {
    throw CapacityError("2^" + std::to_string(n) + " values exceed addressable memory");
  }
  return std::size_t{1} << n;
}

DenseSetFunction::DenseSetFunction(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != dense_size(n)) {
    throw InvalidInput("dense set function over n=" + std::to_string(n) + " needs 2^n values, got " +
                       std::to_string(values_.size()));
  }
}

DenseSetFunction DenseSetFunction::zeros(std::size_t n) { return {n, std::vector<double>(dense_size(n), 0.0)}; }

double DenseSetFunction::at(const SubsetMask& a) const {
  if (a.n() != n_) throw InvalidInput("subset mask does not match dense function size");
  return values_[a.rank()];
}

SetFunctionOracle::SetFunctionOracle(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidInput("oracle ground set must be nonempty");
}

double SetFunctionOracle::eval(const SubsetMask& a) {
  if (a.n() != n_) {
    throw InvalidInput("query mask over n=" + std::to_string(a.n()) + " sent to oracle over n=" + std::to_string(n_));
  }
  ++queries_;
  return evaluate(a);
}

std::unique_ptr<SetFunctionOracle> SetFunctionOracle::clone() const {
  auto copy = do_clone();
  copy->queries_ = 0;
  return copy;
}

std::unique_ptr<SetFunctionOracle> oracle_from_dense(DenseSetFunction f) {
  const auto n = f.n();
  auto values = std::make_shared<const DenseSetFunction>(std::move(f));
  return std::make_unique<FunctionOracle>(n, [values](const SubsetMask& a) { return values->at(a); });
}

DenseSetFunction densify(SetFunctionOracle& s) {
  const auto n = s.n();
  const auto size = dense_size(n);
  std::vector<double> values(size);
  for (std::uint64_t r = 0; r < size; ++r) values[r] = s(SubsetMask::from_rank(n, r));
  return {n, std::move(values)};
}

}  // namespace dssp
