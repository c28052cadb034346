#pragma once

#include <string>
#include <vector>

namespace knotspread::cli {

/// 12 significant digits, the record format.
std::string fmt12(double x);
/// 6 significant digits, the table format.
std::string fmt6(double x);

/// Line-oriented report: "key=value" records, aligned tables and tab-separated blocks.
class Report {
public:
    void record(const std::string& key, const std::string& value);
    void record(const std::string& key, double value) { record(key, fmt12(value)); }
    void record(const std::string& key, long long value) { record(key, std::to_string(value)); }
    void record(const std::string& key, unsigned long long value) { record(key, std::to_string(value)); }
    void record(const std::string& key, int value) { record(key, std::to_string(value)); }
    void record(const std::string& key, long value) { record(key, std::to_string(value)); }
    void record(const std::string& key, unsigned long value) { record(key, std::to_string(value)); }
    void record(const std::string& key, const char* value) { record(key, std::string(value)); }
    void line(const std::string& text);

    /// Aligned columns followed by a "tsv.begin <name>" ... "tsv.end <name>" block.
    void table(const std::string& name, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

    const std::string& str() const { return text_; }

private:
    std::string text_;
};

}  // namespace knotspread::cli
