#include "rpbcs/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "rpbcs/errors.hpp"

namespace rpbcs {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::Info: return "info";
  }
  return "unknown";
}

Check Check::identity(std::string name, std::string statement, double maxdiff,
                      double tol) {
  Check c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  c.margin = -maxdiff;
  c.tolerance = tol;
  c.status = (c.margin >= -tol) ? CheckStatus::Pass : CheckStatus::Fail;
  return c;
}

Check Check::bound(std::string name, std::string statement, double lhs,
                   double rhs, double tol) {
  Check c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  c.margin = (rhs - lhs) / std::max(1.0, std::abs(rhs));
  c.tolerance = tol;
  c.status = (c.margin >= -tol) ? CheckStatus::Pass : CheckStatus::Fail;
  c.note = "lhs=" + fmt17(lhs) + " rhs=" + fmt17(rhs);
  return c;
}

Check Check::skipped(std::string name, std::string statement,
                     std::string reason) {
  Check c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  c.status = CheckStatus::Skipped;
  c.note = std::move(reason);
  return c;
}

Check Check::info(std::string name, std::string statement, double margin,
                  std::string note) {
  Check c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  c.margin = margin;
  c.status = CheckStatus::Info;
  c.note = std::move(note);
  return c;
}

int VerificationReport::count(CheckStatus s) const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(),
                    [s](const Check& c) { return c.status == s; }));
}

bool VerificationReport::all_passed() const {
  return count(CheckStatus::Fail) == 0;
}

void VerificationReport::sort_by_name() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.name < b.name; });
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json check_to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["statement"] = c.statement;
  j["status"] = to_string(c.status);
  if (c.status != CheckStatus::Skipped) {
    j["margin"] = c.margin;
    j["tolerance"] = c.tolerance;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["params"] = r.params;
  Json arr = Json::array();
  for (const Check& c : r.checks) arr.push_back(check_to_json(c));
  j["checks"] = arr;
  j["summary"] = {{"pass", r.count(CheckStatus::Pass)},
                  {"fail", r.count(CheckStatus::Fail)},
                  {"skipped", r.count(CheckStatus::Skipped)},
                  {"info", r.count(CheckStatus::Info)}};
  return j;
}

namespace {
void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              rows);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& el : j) flatten(el, prefix + "[" + std::to_string(i++) + "]", rows);
  } else if (j.is_number_float()) {
    rows.emplace_back(prefix, fmt17(j.get<double>()));
  } else if (j.is_number_integer()) {
    rows.emplace_back(prefix, std::to_string(j.get<long long>()));
  } else if (j.is_number_unsigned()) {
    rows.emplace_back(prefix, std::to_string(j.get<unsigned long long>()));
  } else if (j.is_boolean()) {
    rows.emplace_back(prefix, j.get<bool>() ? "true" : "false");
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    // CSV-quote strings containing separators
    if (s.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += "\"\"";
        else q += ch;
      }
      q += "\"";
      s = q;
    }
    rows.emplace_back(prefix, s);
  } else if (j.is_null()) {
    rows.emplace_back(prefix, "");
  }
}
}  // namespace

std::string json_to_csv(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += k + "," + v + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open output file: " + path);
  os << contents;
}

}  // namespace rpbcs
