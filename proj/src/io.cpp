#include "tcop/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tcop {

namespace {

const char* kConfigKeys[] = {"alpha1",       "alpha2",     "sigma1",
                             "sigma2",       "n",          "seed",
                             "bootstrap_k",  "beta",       "families",
                             "tc_estimator", "threads",    "out",
                             "hist_out",     "external_test_name",
                             "external_test_p"};

bool known_key(const std::string& k) {
  for (const char* key : kConfigKeys)
    if (k == key) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_loss_csv(const std::string& path, const LossSample& sample) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "x1,x2\n";
  for (std::size_t i = 0; i < sample.size(); ++i)
    out << format_full(sample.x1[i]) << ',' << format_full(sample.x2[i]) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

LossSample read_loss_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file: " + path);
  if (trim(line) != "x1,x2")
    throw IoError(path + ": expected header \"x1,x2\", got \"" + trim(line) + "\"");
  LossSample sample;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos)
      throw IoError(path + ":" + std::to_string(lineno) + ": expected two columns");
    try {
      std::size_t used1 = 0, used2 = 0;
      const std::string c1 = trim(t.substr(0, comma));
      const std::string c2 = trim(t.substr(comma + 1));
      const double v1 = std::stod(c1, &used1);
      const double v2 = std::stod(c2, &used2);
      if (used1 != c1.size() || used2 != c2.size())
        throw std::invalid_argument("trailing characters");
      sample.x1.push_back(v1);
      sample.x2.push_back(v2);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  if (sample.size() == 0) throw IoError(path + ": no data rows");
  return sample;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::map<std::string, std::string> cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!known_key(key))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key \"" +
                        key + "\"");
    cfg[key] = value;
  }
  return cfg;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace tcop
