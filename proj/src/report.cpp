#include "anderson/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace anderson::report {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

std::string csv_field(const std::string& raw) {
    const bool needs_quote = raw.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) return raw;
    std::string out = "\"";
    for (char ch : raw) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string csv_line(std::span<const std::string> fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
    body_ = csv_line(header);
}

void CsvBuilder::add_row(std::vector<std::string> fields) {
    if (fields.size() != columns_)
        throw std::invalid_argument("CsvBuilder: row width does not match header");
    body_ += csv_line(fields);
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

std::string dump_summary(const nlohmann::json& summary) { return summary.dump(2) + "\n"; }

}  // namespace anderson::report
