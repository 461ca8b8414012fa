#ifndef TCOP_IO_HPP
#define TCOP_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "tcop/empirical.hpp"
#include "tcop/gof.hpp"

namespace tcop {

// Bad command line or configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// File system or parse failure (exit code 3).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Full-precision decimal formatting (%.17g), round-trip exact.
std::string format_full(double v);

// CSV with header "x1,x2", one pair per row, 17 significant digits.
void write_loss_csv(const std::string& path, const LossSample& sample);
LossSample read_loss_csv(const std::string& path);

// Flat key=value configuration; '#' starts a comment; unknown keys rejected.
std::map<std::string, std::string> read_config(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace tcop

#endif  // TCOP_IO_HPP
