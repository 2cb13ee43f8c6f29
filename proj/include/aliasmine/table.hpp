#pragma once

#include <string>
#include <vector>

namespace aliasmine {

// Columnar output shared by the analytics operations and the exporters.
// CSV follows RFC 4180 (header row always present, even when empty);
// JSONL emits one object per row with the column names as keys.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    std::string to_jsonl() const;
};

std::string csv_escape(const std::string& field);

// Fixed-precision number rendering so repeated runs agree byte for byte.
std::string format_percent(double value);  // "%.2f"
std::string format_double(double value);   // "%.6g"

}  // namespace aliasmine
