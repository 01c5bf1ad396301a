#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace anderson::report {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// RFC 4180 field quoting; lines joined with LF only.
std::string csv_field(const std::string& raw);
std::string csv_line(std::span<const std::string> fields);

class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> header);
    void add_row(std::vector<std::string> fields);
    const std::string& str() const { return body_; }

private:
    std::size_t columns_;
    std::string body_;
};

void write_file(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

std::string dump_summary(const nlohmann::json& summary);  // stable key order, trailing LF

}  // namespace anderson::report
