#pragma once

// Result rows (CSV schema v1 and its JSON mirror) and the flat key=value
// experiment files read by `sweep`.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "nfpp/errors.hpp"

namespace nfpp {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";
inline constexpr const char* kCsvHeader = "estimand,p,param_json,mean,stderr,n,seed";

struct ResultRecord {
  std::string estimand;
  double p = 0;
  Json params = Json::object();
  double mean = 0;
  double std_err = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  double wall_time = 0;  // seconds; JSON only

  /// Equality ignoring wall_time.
  bool same_data(const ResultRecord& o) const {
    return estimand == o.estimand && p == o.p && params == o.params && mean == o.mean && std_err == o.std_err &&
           n == o.n && seed == o.seed;
  }
};

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

/// Splits one CSV line (RFC 4180 quoting, no embedded newlines).
inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> f(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          f.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        f.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      f.emplace_back();
    } else if (ch != '\r') {
      f.back() += ch;
    }
  }
  if (quoted) throw ArgumentError("csv: unterminated quote");
  return f;
}

// strtod rather than stod: subnormal values must read back too
inline double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ArgumentError("csv: not a number: '" + s + "'");
  return v;
}

inline void write_csv(std::ostream& os, const std::vector<ResultRecord>& rs) {
  os << kCsvHeader << '\n';
  for (const ResultRecord& r : rs)
    os << csv_quote(r.estimand) << ',' << format_number(r.p) << ',' << csv_quote(r.params.dump()) << ','
       << format_number(r.mean) << ',' << format_number(r.std_err) << ',' << r.n << ',' << r.seed << '\n';
}

inline std::vector<ResultRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ArgumentError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ArgumentError("csv: header must be '" + std::string(kCsvHeader) + "', got '" + line + "'");
  std::vector<ResultRecord> rs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = csv_split(line);
    if (f.size() != 7) throw ArgumentError("csv: expected 7 fields, got " + std::to_string(f.size()));
    ResultRecord r;
    r.estimand = f[0];
    r.p = parse_double(f[1]);
    r.params = Json::parse(f[2]);
    if (!r.params.is_object()) throw ArgumentError("csv: param_json must be an object");
    r.mean = parse_double(f[3]);
    r.std_err = parse_double(f[4]);
    r.n = std::stoull(f[5]);
    r.seed = std::stoull(f[6]);
    rs.push_back(std::move(r));
  }
  return rs;
}

inline Json to_json(const std::vector<ResultRecord>& rs) {
  Json arr = Json::array();
  for (const ResultRecord& r : rs)
    arr.push_back({{"estimand", r.estimand},
                   {"p", r.p},
                   {"params", r.params},
                   {"mean", r.mean},
                   {"stderr", r.std_err},
                   {"n", r.n},
                   {"seed", r.seed},
                   {"wall_time", r.wall_time}});
  return Json{{"schema", kSchemaVersion}, {"records", arr}};
}

inline std::vector<ResultRecord> from_json(const Json& j) {
  if (!j.is_object() || j.value("schema", "") != kSchemaVersion)
    throw ArgumentError("json: expected schema \"" + std::string(kSchemaVersion) + "\"");
  std::vector<ResultRecord> rs;
  for (const Json& e : j.at("records")) {
    ResultRecord r;
    r.estimand = e.at("estimand").get<std::string>();
    r.p = e.at("p").get<double>();
    r.params = e.at("params");
    r.mean = e.at("mean").get<double>();
    r.std_err = e.at("stderr").get<double>();
    r.n = e.at("n").get<std::uint64_t>();
    r.seed = e.at("seed").get<std::uint64_t>();
    r.wall_time = e.value("wall_time", 0.0);
    rs.push_back(std::move(r));
  }
  return rs;
}

// ---------------------------------------------------------------------------
// Experiment files
//
//   # comment
//   p = 0.40, 0.44, 0.46, 0.47
//   seed = 7
//   [estimate-mu]
//   n = 64
//
// Keys before the first section are shared; each section names an estimand
// and may override shared keys.

struct ExperimentFile {
  std::map<std::string, std::string> shared;
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> sections;

  /// Key lookup for a section, falling back to the shared keys.
  std::map<std::string, std::string> merged(std::size_t k) const {
    std::map<std::string, std::string> m = shared;
    for (const auto& [key, v] : sections.at(k).second) m[key] = v;
    return m;
  }
};

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline ExperimentFile parse_experiment_file(std::istream& is) {
  ExperimentFile f;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ArgumentError("experiment file line " + std::to_string(lineno) + ": bad section");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ArgumentError("experiment file line " + std::to_string(lineno) + ": empty section name");
      f.sections.push_back({name, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("experiment file line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key.empty()) throw ArgumentError("experiment file line " + std::to_string(lineno) + ": empty key");
    auto& target = f.sections.empty() ? f.shared : f.sections.back().second;
    if (!target.emplace(key, val).second)
      throw ArgumentError("experiment file line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return f;
}

/// Comma-separated numbers.
inline std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw ArgumentError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace nfpp
