#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace rpbcs {

using Json = nlohmann::ordered_json;

enum class CheckStatus { Pass, Fail, Skipped, Info };

std::string to_string(CheckStatus s);

/// One named verification result. For an inequality LHS <= RHS the margin is
/// (RHS - LHS) / max(1, |RHS|); for an identity it is -max|LHS - RHS|.
/// Pass means margin >= -tolerance.
struct Check {
  std::string name;
  std::string statement;  // the verified relation, in plain ASCII math
  double margin = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;

  static Check identity(std::string name, std::string statement, double maxdiff,
                        double tol);
  static Check bound(std::string name, std::string statement, double lhs,
                     double rhs, double tol);
  static Check skipped(std::string name, std::string statement,
                       std::string reason);
  static Check info(std::string name, std::string statement, double margin,
                    std::string note = {});
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  Json params;
  std::vector<Check> checks;

  int count(CheckStatus s) const;
  bool all_passed() const;
  void sort_by_name();
};

/// 17-significant-digit decimal, round-trip exact.
std::string fmt17(double v);

Json check_to_json(const Check& c);
Json report_to_json(const VerificationReport& r);

/// Flatten a JSON document to "path,value" CSV rows carrying the same
/// numbers as the JSON emission.
std::string json_to_csv(const Json& j);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace rpbcs
