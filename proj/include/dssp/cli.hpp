#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dssp/generators.hpp"
#include "dssp/model.hpp"
#include "dssp/ssft.hpp"

namespace dssp::cli {

enum ExitCode : int { kSuccess = 0, kRecoveryFailure = 1, kInvalidInput = 2 };

/// Builds an oracle from a compact spec string:
///   cut:path<n>, cut:star<n>, allcover:n=<n>,
///   random-sparse:n=..,k=..[,model=..][,dist=normal|uniform][,seed=..],
///   facility:n=..,L=..[,density=..][,seed=..], coverage:n=..,u=..[,density=..][,seed=..],
///   preference:n=..,L=..,K=..[,seed=..], infogain:n=..[,sigma=..][,seed=..],
///   dense:<file.csv|file.bin>, file:<spec.json>.
/// Omitted model and seed fall back to the given defaults.
FamilyInstance parse_oracle_spec(const std::string& spec, Model default_model, std::uint64_t default_seed);

nlohmann::json report_to_json(const SsftReport& report, Model model);

/// Runs one command line (args exclude the program name). Machine-readable
/// results go to --out files, or to `out` when no file is given; diagnostics
/// go to `err`. Returns an ExitCode.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dssp::cli
