#include "report.hpp"

#include <algorithm>
#include <cstdio>

namespace knotspread::cli {

namespace {

std::string format(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

}  // namespace

std::string fmt12(double x) { return format("%.12g", x); }
std::string fmt6(double x) { return format("%.6g", x); }

void Report::record(const std::string& key, const std::string& value) { text_ += key + "=" + value + "\n"; }

void Report::line(const std::string& text) { text_ += text + "\n"; }

void Report::table(const std::string& name, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
    }
    auto emit_aligned = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) s += "  ";
            s += std::string(width[c] - cells[c].size(), ' ') + cells[c];
        }
        line(s);
    };
    emit_aligned(header);
    for (const auto& r : rows) emit_aligned(r);

    auto emit_tsv = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) s += '\t';
            s += cells[c];
        }
        line(s);
    };
    line("tsv.begin " + name);
    emit_tsv(header);
    for (const auto& r : rows) emit_tsv(r);
    line("tsv.end " + name);
}

}  // namespace knotspread::cli
