#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace voigt_cli {

class SampleCsvError : public std::runtime_error {
  public:
    enum class Kind { kIo, kParse, kEmptyFile };

    SampleCsvError(Kind kind, std::size_t line, const std::string& what)
        : std::runtime_error(what), kind_(kind), line_(line) {}

    Kind kind() const { return kind_; }
    /// 1-based line of a parse error, 0 otherwise.
    std::size_t line() const { return line_; }

  private:
    Kind kind_;
    std::size_t line_;
};

/// One numeric value per line. A non-numeric first line followed by more
/// lines is a header and is skipped. Blank lines are ignored.
std::vector<double> parse_sample_csv(const std::string& text);
std::vector<double> read_sample_csv(const std::string& path);

}  // namespace voigt_cli
