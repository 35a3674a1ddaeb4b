#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mhd2d/errors.hpp"
#include "mhd2d/series_io.hpp"
#include "oracles.hpp"

using namespace mhd2d;

TEST_CASE("csv values round trip bitwise") {
    const auto dir = oracle::scratch("series");
    const std::vector<std::string> cols{"t", "x", "y"};
    const std::vector<double> r1{0.0, 0.1, 1.0 / 3.0};
    const std::vector<double> r2{0.01, 5e-310, -2.718281828459045};
    {
        SeriesWriter w(dir / "s.csv", cols, true);
        w.write(r1);
        w.write(r2);
        CHECK_THROWS_AS(w.write({1.0}), IoError);
    }
    const auto table = read_series_csv(dir / "s.csv");
    CHECK(table.columns == cols);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0] == r1);
    CHECK(table.rows[1] == r2);

    {
        auto w = SeriesWriter::append(dir / "s.csv", cols, true);
        w.write({0.02, std::nan(""), 1.0});
    }
    const auto again = read_series_csv(dir / "s.csv");
    CHECK(again.rows.size() == 3);
    CHECK(std::isnan(again.rows[2][1]));

    std::ifstream nd(ndjson_path_for(dir / "s.csv"));
    std::string line;
    std::vector<nlohmann::json> objs;
    while (std::getline(nd, line)) objs.push_back(nlohmann::json::parse(line));
    REQUIRE(objs.size() == 3);
    CHECK(objs[0]["y"].get<double>() == 1.0 / 3.0);
    CHECK(objs[2]["x"].is_null());

    CHECK_THROWS_AS(SeriesWriter::append(dir / "s.csv", {"t", "z"}, false), IoError);
}

TEST_CASE("malformed series files") {
    const auto dir = oracle::scratch("series_bad");
    CHECK_THROWS_AS(read_series_csv(dir / "none.csv"), IoError);
    std::ofstream(dir / "ragged.csv") << "t,a\n0,1\n0.1\n";
    CHECK_THROWS_AS(read_series_csv(dir / "ragged.csv"), IoError);
    std::ofstream(dir / "word.csv") << "t,a\n0,abc\n";
    CHECK_THROWS_AS(read_series_csv(dir / "word.csv"), IoError);
    SeriesTable t{{"t", "a"}, {{0.0, 1.5}}};
    write_series_csv(dir / "w.csv", t);
    CHECK(read_series_csv(dir / "w.csv").rows == t.rows);
}
