#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "dssp/model.hpp"
#include "dssp/oracle.hpp"
#include "dssp/sparse_ft.hpp"
#include "dssp/subset_mask.hpp"

namespace dssp {

using Matrix = std::vector<std::vector<double>>;

/// s(A) = w(∪_{i ∈ A} S_i) for sets S_1..S_n over the universe {0, ..., |U|-1}.
struct CoverageSpec {
  std::size_t universe_size = 0;
  /// membership[i] is S_{i+1}, a mask over the universe.
  std::vector<SubsetMask> membership;
  /// Signed weight per universe element.
  std::vector<double> weights;

  std::size_t n() const noexcept { return membership.size(); }
};

/// p(A) = Σ_{i∈A} u_i + Σ_ℓ (max_{i∈A} r_ℓi - Σ_{i∈A} r_ℓi)
///        - Σ_k (max_{i∈A} a_ki - Σ_{i∈A} a_ki), with max over ∅ = 0.
struct PreferenceSpec {
  std::vector<double> u;
  Matrix r;  // L x n, entries >= 0
  Matrix a;  // K x n, entries >= 0

  std::size_t n() const noexcept { return u.size(); }
};

struct Edge {
  std::size_t i = 0;  // 0-based
  std::size_t j = 0;
  double w = 1.0;
};

struct GraphSpec {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

void validate(const CoverageSpec& spec);
void validate(const PreferenceSpec& spec);
void validate(const GraphSpec& spec);

std::unique_ptr<SetFunctionOracle> coverage_oracle(CoverageSpec spec);
/// Model-4 spectrum: ŝ(∅) is the weight of the covered universe, and each
/// covered element u subtracts w(u) at its signature {i : u ∈ S_i}.
/// O(|U| n); never enumerates the 2^n Venn fragments.
SparseFT coverage_exact_ft(const CoverageSpec& spec);

/// s(A) = 1 for every nonempty A: all n sets contain one unit-weight item.
CoverageSpec all_cover_one(std::size_t n);

std::unique_ptr<SetFunctionOracle> preference_oracle(PreferenceSpec spec);

/// eval(A) = Σ_ℓ max_{i ∈ A} r_ℓi (0 on ∅). Rows have length n.
std::unique_ptr<SetFunctionOracle> facility_location_oracle(Matrix r);

/// eval(A) = total weight of edges with exactly one endpoint in A.
std::unique_ptr<SetFunctionOracle> graph_cut_oracle(GraphSpec g);
/// Unit-weight path x_1 - x_2 - ... - x_n.
GraphSpec path_graph(std::size_t n);
/// Unit-weight star with center x_1.
GraphSpec star_graph(std::size_t n);

enum class CoeffDistribution { Normal, Uniform };

CoeffDistribution coeff_distribution_from_string(const std::string& name);
std::string to_string(CoeffDistribution d);

struct SparseInstance {
  std::unique_ptr<SetFunctionOracle> oracle;
  SparseFT truth;
};

/// k distinct frequencies drawn uniformly; coefficients i.i.d. standard normal
/// or uniform on [-1, 1], redrawn when exactly zero. The oracle evaluates the
/// spectrum directly in O(k) per query.
SparseInstance random_sparse_oracle(std::size_t n, std::size_t k, Model model,
                                    CoeffDistribution dist, std::uint64_t seed);

/// Oracle over an explicit spectrum.
std::unique_ptr<SetFunctionOracle> sparse_ft_oracle(SparseFT ft);

/// eval(A) = ½ log det(I + σ^-2 K_AA). Throws InvalidInput unless K is square,
/// symmetric and positive semidefinite and sigma > 0.
std::unique_ptr<SetFunctionOracle> information_gain_oracle(const Eigen::MatrixXd& k, double sigma);

/// Membership bits drawn with probability `density`; weights uniform on
/// (0, 1]. Duplicate sets are redrawn.
CoverageSpec random_coverage(std::size_t n, std::size_t universe_size, double density, std::uint64_t seed);
/// Entries uniform on [0, 1); rows of r and a have pairwise distinct entries.
PreferenceSpec random_preference(std::size_t n, std::size_t l, std::size_t k, std::uint64_t seed);
/// L x n matrix with entries uniform on [0, 1); each entry is zeroed with
/// probability 1 - density.
Matrix random_facility(std::size_t l, std::size_t n, double density, std::uint64_t seed);
/// G Gᵀ + 1e-6 I with G standard normal n x n.
Eigen::MatrixXd random_covariance(std::size_t n, std::uint64_t seed);

/// Facility location written as a preference function (a = 0, u_i = Σ_ℓ r_ℓi).
PreferenceSpec facility_as_preference(const Matrix& r);

/// Spec documents: {"family": name, "seed": int, ...parameters}.
/// Families: coverage, preference, facility, cut, random-sparse, infogain.
nlohmann::json to_json(const CoverageSpec& spec);
nlohmann::json to_json(const PreferenceSpec& spec);
nlohmann::json to_json(const GraphSpec& spec);
CoverageSpec coverage_from_json(const nlohmann::json& j);
PreferenceSpec preference_from_json(const nlohmann::json& j);
GraphSpec graph_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);

struct FamilyInstance {
  std::unique_ptr<SetFunctionOracle> oracle;
  /// Known spectrum, when the family has one in closed form.
  std::optional<SparseFT> truth;
};

/// Builds the oracle described by a spec document.
FamilyInstance instance_from_json(const nlohmann::json& j);

}  // namespace dssp
