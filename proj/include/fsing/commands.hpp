#ifndef FSING_COMMANDS_HPP
#define FSING_COMMANDS_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fsing/session.hpp"

namespace fsing::cli {

enum Exit : int { kOk = 0, kViolation = 1, kInvalid = 2, kResource = 3, kInconclusive = 4 };

inline constexpr std::uint64_t kDefaultSeed = 20240229;

/// Command options; empty strings mean "use the default".
struct Args {
  std::string ideal, f, wrt, in;
  std::string e, e_max, lambda, range;
  std::string b, key, catalog, nu;
  std::string kind, w, box;
  bool refine = false, jump = false, divisibility = false, r_presentation = false;
};

struct Options {
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  bool timings = false;
};

struct Report {
  nlohmann::ordered_json json;
  int exit_code = kOk;
};

/// Runs one command. Never throws: failures become reports with an "error"
/// entry and the matching exit code. `session` may be null for selftest.
Report run(const std::string& command, const Session* session, const Args& args, const Options& opt);

Report error_report(const std::string& command, int exit_code, const std::string& message);

/// JSON (one object, two-space indent) or key: value text.
std::string render(const Report& r, const std::string& format);

}  // namespace fsing::cli

#endif
