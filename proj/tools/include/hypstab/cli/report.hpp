#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypstab/diagnostics.hpp"

namespace hypstab::cli {

inline constexpr std::string_view kSeriesHeader =
    "t,I_L2,I_delta,I_p_delta,sup_norm,max_grad,closeness";

/// 17 significant digits, enough to round-trip a double.
std::string format_full(double value);

/// Ordered `key = value` lines. Numbers appear twice: 6 significant digits
/// under `key` and full precision under `key_full`.
class Summary {
public:
    void text(std::string_view key, std::string_view value);
    void number(std::string_view key, double value);
    void integer(std::string_view key, long long value);
    void flag(std::string_view key, bool pass);
    std::string render() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Writes the header on construction and flushes every row, so that an
/// aborted run leaves a readable partial file.
class SeriesCsv {
public:
    explicit SeriesCsv(const std::filesystem::path& path);
    void row(const DecayRecord& record);

private:
    std::ofstream out_;
};

}  // namespace hypstab::cli
