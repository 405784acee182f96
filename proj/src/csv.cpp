#include "dos/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dos/errors.hpp"

namespace dos {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_row(std::string& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out += ',';
        out += needs_quoting(row[i]) ? quote(row[i]) : row[i];
    }
    out += '\n';
}

bool parse_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    v = std::strtod(begin, &end);
    return end == begin + s.size();
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_bool(bool v) { return v ? "true" : "false"; }

std::string to_csv_string(const CsvTable& table) {
    std::string out;
    append_row(out, table.header);
    for (const auto& row : table.rows) append_row(out, row);
    return out;
}

CsvTable parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        if (field_started || !field.empty() || !row.empty()) {
            end_field();
            records.push_back(row);
            row.clear();
        }
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                field_started = true;  // a following newline still ends an (empty) field
                break;
            case '\n':
                end_row();
                break;
            case '\r':
                break;  // tolerate CRLF input
            default:
                field += c;
                field_started = true;
                break;
        }
    }
    if (in_quotes) throw IoError("parse_csv: unterminated quoted field");
    end_row();

    CsvTable t;
    if (records.empty()) throw IoError("parse_csv: missing header row");
    t.header = records.front();
    t.rows.assign(records.begin() + 1, records.end());
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failure: " + path);
    return parse_csv(ss.str());
}

void write_csv_atomic(const std::string& path, const CsvTable& table) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp);
        const std::string body = to_csv_string(table);
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failure: " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("rename failure: " + path);
    }
}

bool csv_near_equal(const CsvTable& a, const CsvTable& b, double tol, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a.header != b.header) return fail("header mismatch");
    if (a.rows.size() != b.rows.size()) return fail("row count mismatch");
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].size() != b.rows[r].size())
            return fail("column count mismatch at row " + std::to_string(r + 1));
        for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
            const std::string& x = a.rows[r][c];
            const std::string& y = b.rows[r][c];
            double dx, dy;
            if (parse_double(x, dx) && parse_double(y, dy)) {
                const bool both_nan = std::isnan(dx) && std::isnan(dy);
                const bool equal = both_nan || dx == dy || std::abs(dx - dy) <= tol;
                if (!equal)
                    return fail("numeric mismatch at row " + std::to_string(r + 1) + ", column " +
                                std::to_string(c + 1) + ": " + x + " vs " + y);
            } else if (x != y) {
                return fail("text mismatch at row " + std::to_string(r + 1) + ", column " +
                            std::to_string(c + 1));
            }
        }
    }
    return true;
}

}  // namespace dos
