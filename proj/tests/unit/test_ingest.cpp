#include <doctest.h>

#include <cmath>

#include "drivestyle/error.hpp"
#include "drivestyle/ingest.hpp"
#include "test_support.hpp"

using namespace drivestyle;

TEST_CASE("parse_tdrive_line parses a T-Drive record at UTC+8") {
    const GpsLog log = parse_tdrive_line("1,2008-02-02 15:36:08,116.51172,39.92123");
    CHECK(log.driver_id == "1");
    CHECK(log.timestamp == 1201937768);  // 2008-02-02T07:36:08Z
    CHECK(log.longitude == 116.51172);
    CHECK(log.latitude == 39.92123);
}

TEST_CASE("parse_tdrive_line accepts boundary-legal coordinates") {
    const GpsLog log = parse_tdrive_line("7,2008-02-02 00:00:00,0.0,0.0");
    CHECK(log.timestamp == 1201881600);
    CHECK(log.longitude == 0.0);
    CHECK(log.latitude == 0.0);
    CHECK_NOTHROW(parse_tdrive_line("7,2008-02-02 00:00:00,-180,90\r\n"));
}

TEST_CASE("parse_tdrive_line honours the configured UTC offset") {
    CHECK(parse_tdrive_line("1,2008-02-02 00:00:00,1,1", 0).timestamp == 1201910400);
    CHECK(parse_tdrive_line("1,2008-02-02 00:00:00,1,1", 8).timestamp == 1201910400 - 8 * 3600);
}

TEST_CASE("parse_tdrive_line rejects malformed lines") {
    CHECK_THROWS_AS(parse_tdrive_line("7,2008-02-02,116.0"), ParseError);
    CHECK_THROWS_AS(parse_tdrive_line("7,2008-02-30 00:00:00,116.0,39.0"), ParseError);
    CHECK_THROWS_AS(parse_tdrive_line("7,2008-02-02 24:00:00,116.0,39.0"), ParseError);
    CHECK_THROWS_AS(parse_tdrive_line("7,2008/02/02 00:00:00,116.0,39.0"), ParseError);
    CHECK_THROWS_AS(parse_tdrive_line("7,2008-02-02 00:00:00,181.0,39.0"), ParseError);
    CHECK_THROWS_AS(parse_tdrive_line("7,2008-02-02 00:00:00,116.0,-90.5"), ParseError);
    CHECK_THROWS_AS(parse_tdrive_line("7,2008-02-02 00:00:00,abc,39.0"), ParseError);
    CHECK_THROWS_AS(parse_tdrive_line(",2008-02-02 00:00:00,116.0,39.0"), ParseError);
    CHECK_THROWS_AS(parse_tdrive_line("7,1969-12-31 23:59:59,116.0,39.0", 0), ParseError);

    try {
        parse_tdrive_line("7,2008-02-02,116.0");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("field") != std::string::npos);
    }
}

TEST_CASE("T-Drive format round-trips at 6 decimal places") {
    Xoshiro256ss rng(7);
    for (int i = 0; i < 500; ++i) {
        GpsLog log;
        log.driver_id = std::to_string(rng.uniform_int(1, 10000));
        log.timestamp = rng.uniform_int(0, 4'000'000'000LL);
        log.longitude = static_cast<double>(rng.uniform_int(-180'000'000, 180'000'000)) / 1e6;
        log.latitude = static_cast<double>(rng.uniform_int(-90'000'000, 90'000'000)) / 1e6;
        const int offset = static_cast<int>(rng.uniform_int(-12, 14));
        const std::string line = format_tdrive_line(log, offset);
        if (log.timestamp + offset * 3600 < 0) continue;
        CHECK(parse_tdrive_line(line, offset) == log);
    }
}

TEST_CASE("wall time conversion is invertible across leap days") {
    CHECK(parse_wall_time("2008-02-29 12:00:00", 0) == 1204286400);
    CHECK(format_wall_time(1204286400, 0) == "2008-02-29 12:00:00");
    CHECK(format_wall_time(1201937768, 8) == "2008-02-02 15:36:08");
    CHECK_THROWS_AS(parse_wall_time("2007-02-29 12:00:00", 0), ParseError);
}

TEST_CASE("load_dataset groups drivers and sorts their logs") {
    testing::TempDir dir;
    const auto a = dir.write("a.txt",
                             "5,2008-02-02 10:00:10,116.1,39.1\n"
                             "6,2008-02-02 10:00:00,116.2,39.2\n"
                             "5,2008-02-02 10:00:30,116.3,39.3\n");
    const auto b = dir.write("b.txt",
                             "5,2008-02-02 10:00:20,116.4,39.4\n"
                             "5,2008-02-02 10:00:00,116.5,39.5\n");
    const std::vector<std::filesystem::path> paths{a, b};
    const LoadResult r = load_dataset(paths);
    REQUIRE(r.drivers.size() == 2);
    CHECK(r.skipped == 0);
    const auto& five = r.drivers[0];
    CHECK(five.driver_id == "5");
    REQUIRE(five.logs.size() == 4);
    CHECK(five.logs[0].longitude == 116.5);
    CHECK(five.logs[1].longitude == 116.1);
    CHECK(five.logs[2].longitude == 116.4);
    CHECK(five.logs[3].longitude == 116.3);
    CHECK(r.drivers[1].logs.size() == 1);
}

TEST_CASE("load_dataset keeps file order among equal timestamps") {
    testing::TempDir dir;
    const auto a = dir.write("a.txt",
                             "1,2008-02-02 10:00:00,116.1,39.0\n"
                             "1,2008-02-02 09:00:00,116.0,39.0\n"
                             "1,2008-02-02 10:00:00,116.2,39.0\n");
    const std::vector<std::filesystem::path> paths{a};
    const auto r = load_dataset(paths);
    REQUIRE(r.drivers.size() == 1);
    CHECK(r.drivers[0].logs[1].longitude == 116.1);
    CHECK(r.drivers[0].logs[2].longitude == 116.2);
}

TEST_CASE("load_dataset on an empty file yields no drivers") {
    testing::TempDir dir;
    const std::vector<std::filesystem::path> paths{dir.write("empty.txt", "")};
    const auto r = load_dataset(paths);
    CHECK(r.drivers.empty());
    CHECK(r.skipped == 0);
}

TEST_CASE("load_dataset counts and skips malformed lines") {
    testing::TempDir dir;
    const std::vector<std::filesystem::path> paths{dir.write("mixed.txt",
                                                             "3,2008-02-02 10:00:00,116.1,39.0\n"
                                                             "3,2008-02-02 10:00:05,116.2\n"
                                                             "3,2008-02-02 10:00:10,116.3,39.0\n"
                                                             "3,2008-02-02 10:00:15,116.4,39.0\n")};
    const auto r = load_dataset(paths);
    REQUIRE(r.drivers.size() == 1);
    CHECK(r.drivers[0].logs.size() == 3);
    CHECK(r.skipped == 1);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].find("mixed.txt:2") != std::string::npos);
}

TEST_CASE("load_dataset names an unreadable file") {
    const std::vector<std::filesystem::path> paths{"/nonexistent/dir/log.txt"};
    try {
        load_dataset(paths);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/dir/log.txt") != std::string::npos);
    }
}

TEST_CASE("load_dataset output is sorted and uniform on fuzzed files") {
    testing::TempDir dir;
    Xoshiro256ss rng(99);
    for (int round = 0; round < 20; ++round) {
        std::string content;
        for (int i = 0; i < 200; ++i) {
            GpsLog log{std::to_string(rng.uniform_int(1, 5)), 1201881600 + rng.uniform_int(0, 5000),
                       116.0 + rng.uniform(), 39.0 + rng.uniform()};
            content += rng.uniform() < 0.05 ? "garbage,line\n" : format_tdrive_line(log) + "\n";
        }
        const std::vector<std::filesystem::path> paths{dir.write("f" + std::to_string(round), content)};
        const auto r = load_dataset(paths);
        std::size_t total = 0;
        for (const auto& d : r.drivers) {
            total += d.logs.size();
            for (std::size_t i = 0; i < d.logs.size(); ++i) {
                CHECK(d.logs[i].driver_id == d.driver_id);
                if (i > 0) CHECK(d.logs[i - 1].timestamp <= d.logs[i].timestamp);
            }
        }
        CHECK(total + r.skipped == 200);
    }
}

TEST_CASE("expand_inputs lists directory files in name order") {
    testing::TempDir dir;
    dir.write("b.txt", "");
    dir.write("a.txt", "");
    const std::vector<std::filesystem::path> paths{dir.path()};
    const auto files = expand_inputs(paths);
    REQUIRE(files.size() == 2);
    CHECK(files[0].filename() == "a.txt");
    CHECK(files[1].filename() == "b.txt");
}

TEST_CASE("generic CSV adapter reads a column mapping") {
    const auto map = CsvColumnMap::from_json(
        R"({"driver_col": 3, "time_col": 0, "time_format": "%d/%m/%Y %H:%M:%S", "lon_col": 2, "lat_col": 1, "has_header": true})");
    CHECK(map.driver_col == 3);
    CHECK(map.has_header);
    const GpsLog log = parse_csv_line("02/02/2008 15:36:08,39.92123,116.51172,taxi-9", map);
    CHECK(log.driver_id == "taxi-9");
    CHECK(log.timestamp == 1201937768);
    CHECK(log.longitude == 116.51172);
    CHECK(log.latitude == 39.92123);

    CsvColumnMap epoch;
    epoch.time_format = "epoch";
    CHECK(parse_csv_line("a,1201937768,116.5,39.9", epoch).timestamp == 1201937768);
    CHECK_THROWS_AS(parse_csv_line("a,12x,116.5,39.9", epoch), ParseError);
    CHECK_THROWS_AS(parse_csv_line("a,1", epoch), ParseError);
    CHECK_THROWS_AS(CsvColumnMap::from_json(R"({"driver_col": 0})"), ParseError);
}

TEST_CASE("load_dataset skips the CSV header when configured") {
    testing::TempDir dir;
    LoadOptions options;
    options.format = InputFormat::csv;
    options.columns.time_format = "epoch";
    options.columns.has_header = true;
    const std::vector<std::filesystem::path> paths{
        dir.write("d.csv", "driver,time,lon,lat\nx,100,1.0,2.0\nx,50,1.5,2.0\n")};
    const auto r = load_dataset(paths, options);
    REQUIRE(r.drivers.size() == 1);
    CHECK(r.skipped == 0);
    CHECK(r.drivers[0].logs.front().timestamp == 50);
}

TEST_CASE("Region validation") {
    CHECK_THROWS_AS(Region(116.5, 116.0, 39.0, 40.0), InvalidArgument);
    CHECK_THROWS_AS(Region(116.0, 116.5, 40.0, 40.0), InvalidArgument);
    CHECK_THROWS_AS(Region(-181.0, 116.5, 39.0, 40.0), InvalidArgument);
    CHECK_THROWS_AS(Region::parse("1,2,3"), InvalidArgument);
    const Region r = Region::parse("116.0, 116.5, 39.5, 40.0");
    CHECK(r.min_longitude() == 116.0);
    CHECK(r.max_latitude() == 40.0);
}

TEST_CASE("filter_region keeps exactly the logs inside the box") {
    const Region box(116.0, 117.0, 39.0, 40.0);
    DriverRecord inside{"1", {{"1", 1, 116.2, 39.2}, {"1", 2, 116.8, 39.9}}};
    CHECK(filter_region(inside, box) == inside);

    DriverRecord outside{"1", {{"1", 1, 115.2, 39.2}, {"1", 2, 116.8, 41.0}}};
    CHECK(filter_region(outside, box).logs.empty());

    DriverRecord mixed{"1",
                       {{"1", 1, 115.9, 39.5},
                        {"1", 2, 116.5, 39.5},
                        {"1", 3, 116.5, 40.1},
                        {"1", 4, 116.9, 39.1},
                        {"1", 5, 117.1, 39.5}}};
    const auto kept = filter_region(mixed, box);
    REQUIRE(kept.logs.size() == 2);
    CHECK(kept.logs[0].timestamp == 2);
    CHECK(kept.logs[1].timestamp == 4);

    DriverRecord edge{"1", {{"1", 1, 116.0, 40.0}}};
    CHECK(filter_region(edge, box).logs.size() == 1);
}

TEST_CASE("filter_region is idempotent") {
    Xoshiro256ss rng(3);
    const Region box(116.2, 116.6, 39.7, 40.1);
    for (int round = 0; round < 50; ++round) {
        DriverRecord r{"d", {}};
        for (int i = 0; i < 40; ++i) r.logs.push_back({"d", i, 116.0 + rng.uniform(), 39.5 + rng.uniform()});
        const auto once = filter_region(r, box);
        CHECK(filter_region(once, box) == once);
    }
}
