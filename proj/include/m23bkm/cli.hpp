#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "m23bkm/class_data.hpp"

namespace m23bkm::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kInternal = 3 };

struct RunConfig {
  std::int64_t class_order = 0;  // 0 selects all ten classes
  std::int64_t trunc_B = 5;
  std::int64_t height_cap = 4;
  std::int64_t norm_cap = -1;  // real-root norm cap for emission, default m
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
  std::string format = "json";
  std::vector<std::string> suites{"all"};
  std::filesystem::path data_dir;  // shipped data files; empty disables them
};

// key=value lines; '#' starts a comment. Unknown keys are usage errors.
std::map<std::string, std::string> parse_config_text(const std::string& text);
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
void validate(const RunConfig& cfg);

std::vector<std::int64_t> selected_classes(const RunConfig& cfg);
std::vector<std::string> expand_suites(const std::vector<std::string>& suites);

/// Golay code, Leech lattice and per-class data, with an on-disk cache that is
/// re-validated on every load.
class Pipeline {
 public:
  explicit Pipeline(const RunConfig& cfg);

  const GolayCode& code() const { return code_; }
  const Lattice& leech() const { return leech_; }
  ClassData class_data(std::int64_t m);

 private:
  PermutationIsometry element(std::int64_t m);

  RunConfig cfg_;
  GolayCode code_;
  Lattice leech_;
};

int cmd_classes(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_emit(const RunConfig& cfg, const std::string& what, std::ostream& out, std::ostream& err);
// Regenerates the shipped data files under dir.
int cmd_make_data(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& out);

// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace m23bkm::cli
