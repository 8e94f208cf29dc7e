#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "dssp/dense.hpp"
#include "dssp/sparse_ft.hpp"
#include "dssp/subset_mask.hpp"

namespace dssp {

/// Version stamped into every JSON document this library writes.
inline constexpr const char* kSchemaVersion = "1.0.0";

/// Sorted 1-based element numbers; [] is the empty set.
nlohmann::json mask_to_json(const SubsetMask& m);
SubsetMask mask_from_json(std::size_t n, const nlohmann::json& j);

/// {"n":int,"model":int,"coefficients":[{"set":[...],"value":float}, ...]}
/// plus "domain" when the spectrum belongs to a restriction.
nlohmann::json to_json(const SparseFT& ft);
SparseFT sparse_ft_from_json(const nlohmann::json& j);

/// CSV with header "rank,value", one row per subset.
void write_dense_csv(std::ostream& out, const DenseSetFunction& f);
DenseSetFunction read_dense_csv(std::istream& in);

/// 8-byte little-endian count followed by that many little-endian doubles.
void write_dense_binary(std::ostream& out, const DenseSetFunction& f);
DenseSetFunction read_dense_binary(std::istream& in);

/// Picks the binary format for ".bin" files and CSV otherwise.
DenseSetFunction read_dense_file(const std::filesystem::path& path);
void write_dense_file(const std::filesystem::path& path, const DenseSetFunction& f);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// Shortest decimal text that round-trips the double.
std::string format_double(double v);

}  // namespace dssp
