// Row output shared by the status and bounds commands.
#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace cli {

using Json = nlohmann::ordered_json;

enum class Format { Text, Csv, Json, Md };

/// Accepts text, table, csv, json and md.
Format parse_format(const std::string& name);

/// Rows are JSON objects; only `columns` are printed, in that order.
struct Table {
    std::vector<std::string> columns;
    std::vector<Json> rows;
};

/// Arrays render as "; "-joined strings outside JSON. JSON output is an array of the full row objects.
void emit_table(const Table& t, Format f, std::ostream& out);

std::string csv_quote(const std::string& field);

}  // namespace cli
