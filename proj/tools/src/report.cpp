#include "hypstab/cli/report.hpp"

#include <cstdio>

#include "hypstab/errors.hpp"

namespace hypstab::cli {

namespace {

std::string format_digits(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
    return buffer;
}

}  // namespace

std::string format_full(double value) { return format_digits(value, 17); }

void Summary::text(std::string_view key, std::string_view value) {
    entries_.emplace_back(std::string(key), std::string(value));
}

void Summary::number(std::string_view key, double value) {
    entries_.emplace_back(std::string(key), format_digits(value, 6));
    entries_.emplace_back(std::string(key) + "_full", format_full(value));
}

void Summary::integer(std::string_view key, long long value) {
    entries_.emplace_back(std::string(key), std::to_string(value));
}

void Summary::flag(std::string_view key, bool pass) {
    entries_.emplace_back(std::string(key), pass ? "pass" : "fail");
}

std::string Summary::render() const {
    std::string out;
    for (const auto& [key, value] : entries_) out += key + " = " + value + "\n";
    return out;
}

SeriesCsv::SeriesCsv(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw ConfigError("cannot write '" + path.string() + "'");
    out_ << kSeriesHeader << '\n';
    out_.flush();
}

void SeriesCsv::row(const DecayRecord& r) {
    out_ << format_full(r.t) << ',' << format_full(r.l2) << ',' << format_full(r.truncated) << ','
         << format_full(r.p_truncated) << ',' << format_full(r.sup_norm) << ','
         << format_full(r.max_grad) << ',' << format_full(r.closeness) << '\n';
    out_.flush();
}

}  // namespace hypstab::cli
