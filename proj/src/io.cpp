#include "dssp/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "dssp/errors.hpp"

namespace dssp {

using nlohmann::json;

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), ptr};
}

json mask_to_json(const SubsetMask& m) {
  json arr = json::array();
  for (auto i : m.elements()) arr.push_back(i + 1);
  return arr;
}

SubsetMask mask_from_json(std::size_t n, const json& j) {
  if (!j.is_array()) throw InvalidInput("set must be a JSON array of 1-based indices");
  SubsetMask m(n);
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidInput("set elements must be integers");
    const auto idx = v.get<long long>();
    if (idx < 1 || static_cast<std::size_t>(idx) > n) {
      throw InvalidInput("set element " + std::to_string(idx) + " outside 1.." + std::to_string(n));
    }
    const auto i = static_cast<std::size_t>(idx - 1);
    if (m.contains(i)) throw InvalidInput("duplicate set element " + std::to_string(idx));
    m.insert(i);
  }
  return m;
}

json to_json(const SparseFT& ft) {
  json coeffs = json::array();
  for (const auto& e : ft.entries()) coeffs.push_back({{"set", mask_to_json(e.set)}, {"value", e.value}});
  json j = {{"n", ft.n()}, {"model", model_number(ft.model())}, {"coefficients", std::move(coeffs)}};
  if (ft.domain() != SubsetMask::full(ft.n())) j["domain"] = mask_to_json(ft.domain());
  return j;
}

SparseFT sparse_ft_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    if (n == 0) throw InvalidInput("n must be positive");
    const auto model = model_from_int(j.at("model").get<int>());
    std::optional<SubsetMask> domain;
    if (j.contains("domain")) domain = mask_from_json(n, j.at("domain"));
    std::vector<FourierEntry> entries;
    std::unordered_set<SubsetMask, SubsetMaskHash> seen;
    for (const auto& c : j.at("coefficients")) {
      const double value = c.at("value").get<double>();
      if (!std::isfinite(value)) throw InvalidInput("coefficient values must be finite");
      auto set = mask_from_json(n, c.at("set"));
      if (!seen.insert(set).second) throw InvalidInput("duplicate frequency " + set.to_string());
      entries.push_back({std::move(set), value});
    }
    return {n, model, std::move(entries), std::move(domain)};
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed spectrum JSON: ") + e.what());
  }
}

void write_dense_csv(std::ostream& out, const DenseSetFunction& f) {
  out << "rank,value\n";
  const auto values = f.values();
  for (std::size_t r = 0; r < values.size(); ++r) out << r << ',' << format_double(values[r]) << '\n';
}

DenseSetFunction read_dense_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "rank,value") throw InvalidInput("CSV header must be 'rank,value'");
  std::vector<std::pair<std::uint64_t, double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidInput("CSV row without comma: " + line);
    std::uint64_t rank = 0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + comma, rank);
    if (ec != std::errc() || p != line.data() + comma) throw InvalidInput("bad rank in CSV row: " + line);
    const std::string value_text = line.substr(comma + 1);
    char* end = nullptr;
    const double value = std::strtod(value_text.c_str(), &end);
    if (end == value_text.c_str() || *end != '\0') throw InvalidInput("bad value in CSV row: " + line);
    rows.emplace_back(rank, value);
  }
  const auto count = rows.size();
  if (count < 2 || !std::has_single_bit(count)) {
    throw InvalidInput("CSV must hold 2^n rows with n >= 1, got " + std::to_string(count));
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(count));
  std::vector<double> values(count, 0.0);
  std::vector<bool> filled(count, false);
  for (const auto& [rank, value] : rows) {
    if (rank >= count || filled[rank]) throw InvalidInput("rank " + std::to_string(rank) + " missing or repeated");
    filled[rank] = true;
    values[rank] = value;
  }
  return {n, std::move(values)};
}

namespace {

template <typename T>
void write_le(std::ostream& out, T v) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <typename T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw InvalidInput("truncated binary input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T v;
  std::memcpy(&v, bytes.data(), sizeof(T));
  return v;
}

}  // namespace

void write_dense_binary(std::ostream& out, const DenseSetFunction& f) {
  write_le<std::uint64_t>(out, f.size());
  for (double v : f.values()) write_le<double>(out, v);
}

DenseSetFunction read_dense_binary(std::istream& in) {
  const auto count = read_le<std::uint64_t>(in);
  if (count < 2 || !std::has_single_bit(count)) {
    throw InvalidInput("binary length must be 2^n with n >= 1, got " + std::to_string(count));
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(count));
  std::vector<double> values(dense_size(n));
  for (auto& v : values) v = read_le<double>(in);
  return {n, std::move(values)};
}

DenseSetFunction read_dense_file(const std::filesystem::path& path) {
  const bool binary = path.extension() == ".bin";
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return binary ? read_dense_binary(in) : read_dense_csv(in);
}

void write_dense_file(const std::filesystem::path& path, const DenseSetFunction& f) {
  const bool binary = path.extension() == ".bin";
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw InvalidInput("cannot write " + path.string());
  if (binary) {
    write_dense_binary(out, f);
  } else {
    write_dense_csv(out, f);
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace dssp
