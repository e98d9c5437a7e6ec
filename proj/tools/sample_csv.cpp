#include "sample_csv.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

namespace voigt_cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view field) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

std::vector<double> parse_sample_csv(const std::string& text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::string_view rest(text);
    std::size_t number = 0;
    while (!rest.empty()) {
        const auto eol = rest.find('\n');
        const std::string_view line = trim(rest.substr(0, eol));
        ++number;
        if (!line.empty()) lines.emplace_back(number, line);
        if (eol == std::string_view::npos) break;
        rest.remove_prefix(eol + 1);
    }
    if (lines.empty()) throw SampleCsvError(SampleCsvError::Kind::kEmptyFile, 0, "sample file is empty");

    std::vector<double> values;
    values.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& [line_no, field] = lines[i];
        if (auto v = parse_number(field)) {
            values.push_back(*v);
            continue;
        }
        if (i == 0 && lines.size() > 1) continue;  // header
        std::ostringstream msg;
        msg << "line " << line_no << ": not a number: '" << field << "'";
        throw SampleCsvError(SampleCsvError::Kind::kParse, line_no, msg.str());
    }
    return values;
}

std::vector<double> read_sample_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SampleCsvError(SampleCsvError::Kind::kIo, 0, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_sample_csv(buffer.str());
}

}  // namespace voigt_cli
