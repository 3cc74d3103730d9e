#include "table.hpp"

#include <algorithm>
#include <stdexcept>

namespace cli {

Format parse_format(const std::string& name)
{
    if (name == "text" || name == "table") return Format::Text;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "md") return Format::Md;
    throw std::invalid_argument("unknown format '" + name + "'");
}

std::string csv_quote(const std::string& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

namespace {

std::string cell(const Json& row, const std::string& col)
{
    if (!row.contains(col)) return "";
    const Json& v = row.at(col);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty()) s += "; ";
            s += e.is_string() ? e.get<std::string>() : e.dump();
        }
        return s;
    }
    return v.dump();
}

}  // namespace

void emit_table(const Table& t, Format f, std::ostream& out)
{
    if (f == Format::Json) {
        Json arr = Json::array();
        for (const auto& r : t.rows) arr.push_back(r);
        out << arr.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : t.rows) {
        std::vector<std::string> line;
        for (const auto& c : t.columns) line.push_back(cell(r, c));
        cells.push_back(std::move(line));
    }
    if (f == Format::Csv) {
        for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << csv_quote(t.columns[j]);
        out << '\n';
        for (const auto& line : cells) {
            for (std::size_t j = 0; j < line.size(); ++j) out << (j ? "," : "") << csv_quote(line[j]);
            out << '\n';
        }
        return;
    }
    std::vector<std::size_t> width;
    for (const auto& c : t.columns) width.push_back(c.size());
    for (const auto& line : cells)
        for (std::size_t j = 0; j < line.size(); ++j) width[j] = std::max(width[j], line[j].size());
    // The last column is left ragged so that long certificates do not pad every row.
    auto emit = [&](const std::vector<std::string>& line) {
        if (f == Format::Md) out << "| ";
        for (std::size_t j = 0; j < line.size(); ++j) {
            const bool last = j + 1 == line.size();
            out << line[j];
            if (f == Format::Md)
                out << std::string(width[j] - line[j].size(), ' ') << (last ? " |" : " | ");
            else if (!last)
                out << std::string(width[j] - line[j].size() + 2, ' ');
        }
        out << '\n';
    };
    emit(t.columns);
    if (f == Format::Md) {
        out << '|';
        for (std::size_t w : width) out << std::string(w + 2, '-') << '|';
        out << '\n';
    }
    for (const auto& line : cells) emit(line);
}

}  // namespace cli
