#include "dssp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dssp/errors.hpp"
#include "dssp/evaluation.hpp"
#include "dssp/io.hpp"
#include "dssp/rng.hpp"
#include "dssp/transforms.hpp"

namespace dssp::cli {

namespace {

using Params = std::map<std::string, std::string>;

Params parse_params(const std::string& text) {
  Params out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidInput("expected key=value in oracle spec, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw InvalidInput("bad value '" + text + "' for " + key);
  return value;
}

template <typename T>
T take(const Params& p, const std::string& key, std::optional<T> fallback = std::nullopt) {
  const auto it = p.find(key);
  if (it == p.end()) {
    if (fallback) return *fallback;
    throw InvalidInput("oracle spec is missing " + key + "=");
  }
  return parse_number<T>(it->second, key);
}

void check_keys(const Params& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      throw InvalidInput("unknown oracle parameter '" + k + "'");
    }
  }
}

Model model_option(int m) { return model_from_int(m); }

void emit_json(const nlohmann::json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
    rows.push_back(row);
  }
  return rows;
}

struct GenerateArgs {
  std::string family;
  std::size_t n = 8;
  std::size_t k = 8;
  std::size_t l = 3;
  std::size_t kk = 0;
  std::size_t universe = 16;
  double density = 0.5;
  double sigma = 1.0;
  std::string dist = "normal";
  std::string graph = "path";
  int model = 4;
  std::uint64_t seed = 0;
  std::string out;
};

nlohmann::json generate(const GenerateArgs& a) {
  nlohmann::json j;
  if (a.family == "coverage") {
    j = to_json(random_coverage(a.n, a.universe, a.density, a.seed));
  } else if (a.family == "preference") {
    j = to_json(random_preference(a.n, a.l, a.kk, a.seed));
  } else if (a.family == "facility") {
    j = {{"family", "facility"}, {"n", a.n}, {"r", random_facility(a.l, a.n, a.density, a.seed)}};
  } else if (a.family == "cut") {
    GraphSpec g;
    if (a.graph == "path") {
      g = path_graph(a.n);
    } else if (a.graph == "star") {
      g = star_graph(a.n);
    } else if (a.graph == "random") {
      Rng rng(a.seed);
      g.n = a.n;
      for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t t = i + 1; t < a.n; ++t) {
          if (rng.uniform01() < a.density) g.edges.push_back({i, t, 1.0 - rng.uniform01()});
        }
      }
    } else {
      throw InvalidInput("unknown graph kind '" + a.graph + "'");
    }
    j = to_json(g);
  } else if (a.family == "random-sparse") {
    const auto model = model_option(a.model);
    auto inst = random_sparse_oracle(a.n, a.k, model, coeff_distribution_from_string(a.dist), a.seed);
    j = {{"family", "random-sparse"},
         {"n", a.n},
         {"k", a.k},
         {"model", model_number(model)},
         {"distribution", a.dist},
         {"spectrum", to_json(inst.truth)}};
  } else if (a.family == "infogain") {
    if (!(a.sigma > 0.0)) throw InvalidInput("sigma must be positive");
    j = {{"family", "infogain"}, {"n", a.n}, {"sigma", a.sigma}, {"covariance", matrix_json(random_covariance(a.n, a.seed))}};
  } else {
    throw InvalidInput("unknown family '" + a.family + "'");
  }
  j["seed"] = a.seed;
  j["schema_version"] = kSchemaVersion;
  return j;
}

}  // namespace

FamilyInstance parse_oracle_spec(const std::string& spec, Model default_model, std::uint64_t default_seed) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InvalidInput("oracle spec must look like family:params, got '" + spec + "'");
  const std::string family = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);

  if (family == "file") return instance_from_json(read_json_file(rest));
  if (family == "dense") return {oracle_from_dense(read_dense_file(rest)), std::nullopt};
  if (family == "cut") {
    for (const char* kind : {"path", "star"}) {
      const std::string prefix = kind;
      if (rest.rfind(prefix, 0) == 0) {
        const auto n = parse_number<std::size_t>(rest.substr(prefix.size()), "cut size");
        return {graph_cut_oracle(prefix == "path" ? path_graph(n) : star_graph(n)), std::nullopt};
      }
    }
    throw InvalidInput("cut oracle must be cut:path<n> or cut:star<n>");
  }

  const Params p = parse_params(rest);
  const auto seed = take<std::uint64_t>(p, "seed", default_seed);
  if (family == "allcover") {
    check_keys(p, {"n"});
    auto cover = all_cover_one(take<std::size_t>(p, "n"));
    auto truth = coverage_exact_ft(cover);
    return {coverage_oracle(std::move(cover)), std::move(truth)};
  }
  if (family == "random-sparse") {
    check_keys(p, {"n", "k", "model", "dist", "seed"});
    const auto model = p.contains("model") ? model_from_int(take<int>(p, "model")) : default_model;
    const auto dist = p.contains("dist") ? coeff_distribution_from_string(p.at("dist")) : CoeffDistribution::Normal;
    auto inst = random_sparse_oracle(take<std::size_t>(p, "n"), take<std::size_t>(p, "k"), model, dist, seed);
    return {std::move(inst.oracle), std::move(inst.truth)};
  }
  if (family == "facility") {
    check_keys(p, {"n", "L", "density", "seed"});
    const auto r = random_facility(take<std::size_t>(p, "L", 5), take<std::size_t>(p, "n"),
                                   take<double>(p, "density", 1.0), seed);
    return {facility_location_oracle(r), std::nullopt};
  }
  if (family == "coverage") {
    check_keys(p, {"n", "u", "density", "seed"});
    auto cover = random_coverage(take<std::size_t>(p, "n"), take<std::size_t>(p, "u", 16),
                                 take<double>(p, "density", 0.5), seed);
    auto truth = coverage_exact_ft(cover);
    return {coverage_oracle(std::move(cover)), std::move(truth)};
  }
  if (family == "preference") {
    check_keys(p, {"n", "L", "K", "seed"});
    return {preference_oracle(random_preference(take<std::size_t>(p, "n"), take<std::size_t>(p, "L", 1),
                                                take<std::size_t>(p, "K", 0), seed)),
            std::nullopt};
  }
  if (family == "infogain") {
    check_keys(p, {"n", "sigma", "seed"});
    return {information_gain_oracle(random_covariance(take<std::size_t>(p, "n"), seed), take<double>(p, "sigma", 1.0)),
            std::nullopt};
  }
  throw InvalidInput("unknown oracle family '" + family + "'");
}

nlohmann::json report_to_json(const SsftReport& report, Model model) {
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"model", model_number(model)},
                      {"result", to_json(report.result)},
                      {"queries_used", report.queries_used},
                      {"support_sizes_per_step", report.support_sizes_per_step},
                      {"truncated", report.truncated},
                      {"solver_work", report.solver_work}};
  j["seed_used"] = report.seed_used ? nlohmann::json(*report.seed_used) : nlohmann::json(nullptr);
  return j;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-set signal processing: set-function Fourier transforms and sparse recovery", "dssp"};
  app.set_version_flag("--version", std::string(kSchemaVersion));
  app.require_subcommand(1);

  // generate
  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a random function spec as JSON");
  generate_cmd->add_option("family", gen.family, "coverage|preference|facility|cut|random-sparse|infogain")->required();
  generate_cmd->add_option("--n", gen.n, "Ground set size");
  generate_cmd->add_option("--k", gen.k, "Sparsity (random-sparse)");
  generate_cmd->add_option("--L", gen.l, "Repulsive rows (preference, facility)");
  generate_cmd->add_option("--K", gen.kk, "Attractive rows (preference)");
  generate_cmd->add_option("--universe", gen.universe, "Universe size (coverage)");
  generate_cmd->add_option("--density", gen.density, "Membership / nonzero / edge probability");
  generate_cmd->add_option("--sigma", gen.sigma, "Noise level (infogain)");
  generate_cmd->add_option("--dist", gen.dist, "normal|uniform (random-sparse)");
  generate_cmd->add_option("--graph", gen.graph, "path|star|random (cut)");
  generate_cmd->add_option("--model", gen.model, "3, 4 or 5 (random-sparse)");
  generate_cmd->add_option("--seed", gen.seed);
  generate_cmd->add_option("--out", gen.out, "Output JSON path");

  // transform
  int tr_model = 4;
  std::string tr_direction = "fwd";
  std::string tr_in;
  std::string tr_oracle;
  std::string tr_out;
  std::uint64_t tr_seed = 0;
  auto* transform_cmd = app.add_subcommand("transform", "Dense forward or inverse transform");
  transform_cmd->add_option("--model", tr_model)->required();
  transform_cmd->add_option("--direction", tr_direction, "fwd|inv")->check(CLI::IsMember({"fwd", "inv"}));
  auto* tr_in_opt = transform_cmd->add_option("--in", tr_in, "Dense CSV or .bin input");
  transform_cmd->add_option("--oracle", tr_oracle, "Densify an oracle spec instead of reading --in")
      ->excludes(tr_in_opt);
  transform_cmd->add_option("--seed", tr_seed);
  transform_cmd->add_option("--out", tr_out, "Dense CSV or .bin output");

  // ssft
  int ss_model = 4;
  bool ss_plus = false;
  SsftConfig ss_cfg;
  std::string ss_oracle;
  std::string ss_out;
  std::string ss_report;
  auto* ssft_cmd = app.add_subcommand("ssft", "Learn a sparse spectrum from queries");
  ssft_cmd->add_option("--model", ss_model);
  ssft_cmd->add_flag("--plus", ss_plus, "Filter with a random one-hop filter first");
  ssft_cmd->add_option("--eps", ss_cfg.epsilon);
  ssft_cmd->add_option("--kmax", ss_cfg.k_max);
  ssft_cmd->add_option("--seed", ss_cfg.seed);
  ssft_cmd->add_option("--ls-oversampling", ss_cfg.ls_oversampling);
  ssft_cmd->add_flag("--keep-root", ss_cfg.keep_root, "Keep the empty set in the initial support");
  ssft_cmd->add_option("--oracle", ss_oracle)->required();
  ssft_cmd->add_option("--out", ss_out, "Spectrum JSON");
  ssft_cmd->add_option("--report", ss_report, "Report JSON");

  // eval
  std::string ev_oracle;
  std::string ev_ft;
  std::size_t ev_samples = kDefaultErrorSamples;
  std::uint64_t ev_seed = 0;
  int ev_model = 4;
  std::string ev_out;
  auto* eval_cmd = app.add_subcommand("eval", "Sampled relative error of a spectrum against an oracle");
  eval_cmd->add_option("--oracle", ev_oracle)->required();
  eval_cmd->add_option("--ft", ev_ft, "Spectrum JSON")->required();
  eval_cmd->add_option("--samples", ev_samples);
  eval_cmd->add_option("--seed", ev_seed);
  eval_cmd->add_option("--model", ev_model, "Default model for oracle specs");
  eval_cmd->add_option("--out", ev_out);

  // maximize
  std::string mx_oracle;
  std::string mx_ft;
  std::size_t mx_d = 1;
  std::uint64_t mx_seed = 0;
  int mx_model = 4;
  std::string mx_out;
  auto* maximize_cmd = app.add_subcommand("maximize", "Greedy maximization under |A| <= d");
  auto* mx_oracle_opt = maximize_cmd->add_option("--oracle", mx_oracle);
  maximize_cmd->add_option("--ft", mx_ft, "Maximize a spectrum instead of an oracle")->excludes(mx_oracle_opt);
  maximize_cmd->add_option("--d", mx_d)->required();
  maximize_cmd->add_option("--seed", mx_seed);
  maximize_cmd->add_option("--model", mx_model);
  maximize_cmd->add_option("--out", mx_out);

  // bench
  TaskSpec task;
  int bn_model = 4;
  std::string bn_learner = "ssft";
  std::optional<bool> bn_keep_root;
  bool bn_parallel = false;
  std::string bn_out;
  std::string bn_json;
  auto* bench_cmd = app.add_subcommand("bench", "Repeated learn / evaluate / maximize runs");
  bench_cmd->add_option("--family", task.family,
                        "random-sparse|facility|coverage|preference|infogain|cut-path|cut-star");
  bench_cmd->add_option("--n", task.n);
  bench_cmd->add_option("--k", task.k);
  bench_cmd->add_option("--rows", task.rows, "L for facility/preference, universe size for coverage");
  bench_cmd->add_option("--density", task.density);
  bench_cmd->add_option("--learner", bn_learner, "ssft|ssft+");
  bench_cmd->add_option("--model", bn_model);
  bench_cmd->add_option("--eps", task.config.epsilon);
  bench_cmd->add_option("--kmax", task.config.k_max);
  bench_cmd->add_option("--ls-oversampling", task.config.ls_oversampling);
  bench_cmd->add_option("--keep-root", bn_keep_root, "true|false; default depends on the family");
  bench_cmd->add_option("--reps", task.repetitions);
  bench_cmd->add_option("--seed", task.seed);
  bench_cmd->add_option("--samples", task.error_samples);
  bench_cmd->add_option("--greedy-d", task.greedy_d);
  bench_cmd->add_flag("--parallel", bn_parallel, "Run repetitions concurrently");
  bench_cmd->add_option("--out", bn_out, "CSV rows");
  bench_cmd->add_option("--json", bn_json, "JSON rows");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    if (generate_cmd->parsed()) {
      emit_json(generate(gen), gen.out, out);
    } else if (transform_cmd->parsed()) {
      const auto model = model_option(tr_model);
      if (tr_in.empty() && tr_oracle.empty()) throw InvalidInput("transform needs --in or --oracle");
      DenseSetFunction input =
          tr_in.empty() ? densify(*parse_oracle_spec(tr_oracle, model, tr_seed).oracle) : read_dense_file(tr_in);
      DenseSetFunction result = tr_direction == "fwd" ? dense_ft(std::move(input), model) : dense_ift(std::move(input), model);
      if (tr_out.empty()) {
        write_dense_csv(out, result);
      } else {
        write_dense_file(tr_out, result);
      }
    } else if (ssft_cmd->parsed()) {
      ss_cfg.model = model_option(ss_model);
      auto inst = parse_oracle_spec(ss_oracle, ss_cfg.model, ss_cfg.seed);
      auto& s = *inst.oracle;
      const SsftReport report = ss_plus ? ssft_plus(s, s.n(), ss_cfg) : ssft(s, s.n(), ss_cfg);
      emit_json(to_json(report.result), ss_out, out);
      if (!ss_report.empty()) write_json_file(ss_report, report_to_json(report, ss_cfg.model));
    } else if (eval_cmd->parsed()) {
      auto inst = parse_oracle_spec(ev_oracle, model_option(ev_model), ev_seed);
      const SparseFT estimate = sparse_ft_from_json(read_json_file(ev_ft));
      emit_json(to_json(relative_error(*inst.oracle, estimate, ev_samples, ev_seed)), ev_out, out);
    } else if (maximize_cmd->parsed()) {
      GreedyResult best{SubsetMask(1), 0.0};
      if (!mx_ft.empty()) {
        best = greedy_maximize(sparse_ft_from_json(read_json_file(mx_ft)), mx_d);
      } else if (!mx_oracle.empty()) {
        auto inst = parse_oracle_spec(mx_oracle, model_option(mx_model), mx_seed);
        best = greedy_maximize(*inst.oracle, mx_d);
      } else {
        throw InvalidInput("maximize needs --oracle or --ft");
      }
      emit_json({{"schema_version", kSchemaVersion}, {"d", mx_d}, {"set", mask_to_json(best.set)}, {"value", best.value}},
                mx_out, out);
    } else if (bench_cmd->parsed()) {
      task.config.model = model_option(bn_model);
      task.learner = learner_from_string(bn_learner);
      task.keep_root = bn_keep_root;
      task.parallel = bn_parallel;
      const auto rows = run_experiment(task);
      if (bn_out.empty() && bn_json.empty()) {
        write_rows_csv(out, rows);
      } else {
        if (!bn_out.empty()) {
          std::ofstream f(bn_out);
          if (!f) throw InvalidInput("cannot write " + bn_out);
          write_rows_csv(f, rows);
        }
        if (!bn_json.empty()) write_json_file(bn_json, rows_to_json(task, rows));
      }
    }
  } catch (const RecoveryFailure& e) {
    err << "recovery failed: " << e.what() << '\n';
    return kRecoveryFailure;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const UndefinedResult& e) {
    err << "undefined result: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kSuccess;
}

}  // namespace dssp::cli
