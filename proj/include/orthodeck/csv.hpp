#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace orthodeck::csv {

/// 17 significant digits, classic locale.
std::string raw(double x);
/// Fixed 4 decimals after half-away-from-zero rounding.
std::string rounded4(double x);

/// Comma separated, header row, LF line endings.
class Table {
public:
    explicit Table(std::vector<std::string> header);

    Table& row(std::vector<std::string> cells);
    std::string str() const;
    void write(const std::filesystem::path& path) const;
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes `content` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace orthodeck::csv
