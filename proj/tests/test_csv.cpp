#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <string>

#include "doctest.h"
#include "dos/csv.hpp"
#include "dos/errors.hpp"

using dos::CsvTable;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
    const fs::path dir = fs::temp_directory_path() / (std::string("dos_csv_") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("format_double round-trips every value bit for bit") {
    for (double v : {0.1, 1.0, -0.0, 3.0e-308, 1.0 / 3.0, 2.5e17, std::acos(-1.0)}) {
        const std::string s = dos::format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(dos::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(dos::format_double(1.0) == "1");
    CHECK(dos::format_bool(true) == "true");
    CHECK(dos::format_bool(false) == "false");
}

TEST_CASE("serialization quotes exactly the fields that need it") {
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{"plain", "with,comma"}, {"with\"quote", "with\nnewline"}};
    CHECK(dos::to_csv_string(t) ==
          "a,b\n"
          "plain,\"with,comma\"\n"
          "\"with\"\"quote\",\"with\nnewline\"\n");
}

TEST_CASE("parse inverts serialization") {
    CsvTable t;
    t.header = {"x", "y", "z"};
    t.rows = {{"1", "a,b", "c\"d"}, {"", "line\nbreak", "tail"}};
    const CsvTable back = dos::parse_csv(dos::to_csv_string(t));
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
}

TEST_CASE("parser tolerates CRLF and rejects unterminated quotes") {
    const CsvTable t = dos::parse_csv("a,b\r\n1,2\r\n");
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0] == std::vector<std::string>{"1", "2"});
    CHECK_THROWS_AS(dos::parse_csv("a,b\n\"oops,2\n"), dos::IoError);
}

TEST_CASE("atomic write leaves either the full file or nothing") {
    const fs::path dir = temp_dir("atomic");
    const fs::path out = dir / "table.csv";

    CsvTable t;
    t.header = {"mu", "value"};
    t.rows = {{"0", "0.5"}, {"1", "0.25"}};
    dos::write_csv_atomic(out.string(), t);

    CHECK(fs::exists(out));
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));
    const CsvTable back = dos::read_csv_file(out.string());
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);

    const fs::path bad = dir / "missing" / "table.csv";
    CHECK_THROWS_AS(dos::write_csv_atomic(bad.string(), t), dos::IoError);
    CHECK_FALSE(fs::exists(bad));
    fs::remove_all(dir);
}

TEST_CASE("read_csv_file reports missing files as io errors") {
    CHECK_THROWS_AS(dos::read_csv_file("/nonexistent/dos/table.csv"), dos::IoError);
}

TEST_CASE("near-equality compares numbers within tolerance") {
    CsvTable a, b;
    a.header = b.header = {"x", "tag"};
    a.rows = {{"1.0000000000", "run"}};
    b.rows = {{"1.0000000004", "run"}};
    std::string why;
    CHECK(dos::csv_near_equal(a, b, 1e-9, &why));

    b.rows = {{"1.01", "run"}};
    CHECK_FALSE(dos::csv_near_equal(a, b, 1e-9, &why));
    CHECK(!why.empty());

    b.rows = {{"1.0000000004", "other"}};
    CHECK_FALSE(dos::csv_near_equal(a, b, 1e-9, &why));
}

TEST_CASE("near-equality treats nan and infinities as self-equal") {
    CsvTable a, b;
    a.header = b.header = {"v"};
    a.rows = {{"nan"}, {"inf"}, {"-inf"}};
    b.rows = {{"nan"}, {"inf"}, {"-inf"}};
    CHECK(dos::csv_near_equal(a, b, 1e-9));
    b.rows = {{"nan"}, {"inf"}, {"inf"}};
    CHECK_FALSE(dos::csv_near_equal(a, b, 1e-9));
}

TEST_CASE("near-equality requires identical headers and shape") {
    CsvTable a, b;
    a.header = {"x"};
    b.header = {"y"};
    std::string why;
    CHECK_FALSE(dos::csv_near_equal(a, b, 1e-9, &why));
    CHECK(why.find("header") != std::string::npos);

    b.header = {"x"};
    b.rows = {{"1"}};
    CHECK_FALSE(dos::csv_near_equal(a, b, 1e-9));
}
