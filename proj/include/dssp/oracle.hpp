#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>

#include "dssp/dense.hpp"
#include "dssp/subset_mask.hpp"

namespace dssp {

/// Query access A -> s(A) with a per-instance query counter.
///
/// Each call to eval() increments query_count() by exactly one. Oracles are
/// single-owner and not thread-safe; run parallel experiments on independent
/// instances. clone() returns an equivalent oracle whose counter is zero.
class SetFunctionOracle {
 public:
  explicit SetFunctionOracle(std::size_t n);
  virtual ~SetFunctionOracle() = default;

  SetFunctionOracle(const SetFunctionOracle&) = default;
  SetFunctionOracle& operator=(const SetFunctionOracle&) = delete;

  double eval(const SubsetMask& a);
  double operator()(const SubsetMask& a) { return eval(a); }

  std::size_t n() const noexcept { return n_; }
  std::uint64_t query_count() const noexcept { return queries_; }

  std::unique_ptr<SetFunctionOracle> clone() const;

 protected:
  virtual double evaluate(const SubsetMask& a) = 0;
  virtual std::unique_ptr<SetFunctionOracle> do_clone() const = 0;

 private:
  std::size_t n_;
  std::uint64_t queries_ = 0;
};

/// Oracle backed by an arbitrary copyable callable.
class FunctionOracle final : public SetFunctionOracle {
 public:
  using Fn = std::function<double(const SubsetMask&)>;

  FunctionOracle(std::size_t n, Fn fn) : SetFunctionOracle(n), fn_(std::move(fn)) {}

 protected:
  double evaluate(const SubsetMask& a) override { return fn_(a); }
  std::unique_ptr<SetFunctionOracle> do_clone() const override {
    return std::make_unique<FunctionOracle>(*this);
  }

 private:
  Fn fn_;
};

/// eval(A) = f.values()[rank(A)].
std::unique_ptr<SetFunctionOracle> oracle_from_dense(DenseSetFunction f);

/// Queries every subset in rank order (2^n queries).
DenseSetFunction densify(SetFunctionOracle& s);

}  // namespace dssp
