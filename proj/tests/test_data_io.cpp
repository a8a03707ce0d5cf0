#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "tiot/data_io.hpp"
#include "tiot/errors.hpp"
#include "tiot/time_series.hpp"

using namespace tiot;

namespace {

const std::string kData = TIOT_DATA_DIR;

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content)
        : path("io_fixture_" + name) {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

template <typename Fn>
void expect_parse_error(Fn&& fn, const std::string& fragment) {
    try {
        fn();
        FAIL_CHECK("expected ParseError mentioning '" << fragment << "'");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
}

} // namespace

TEST_CASE("robot surface archive loads with the documented shape") {
    const auto train = read_ucr_tsv(kData + "/ucr/SonyAIBORobotSurface1_TRAIN.tsv");
    const auto test = read_ucr_tsv(kData + "/ucr/SonyAIBORobotSurface1_TEST.tsv");
    CHECK(train.name == "SonyAIBORobotSurface1_TRAIN");
    CHECK(train.series.size() == 20);
    CHECK(test.series.size() == 601);
    for (const auto& s : train.series) {
        CHECK(s.length() == 70);
        CHECK(s.dim() == 1);
        REQUIRE(s.label().has_value());
        CHECK((*s.label() == 1 || *s.label() == 2));
    }
    // loaded series are z-scored: zero mean, unit population variance,
    // and the synthesized 1..70 timestamps are standardized the same way
    const auto& s0 = train.series.front();
    CHECK(s0.values().row(0).mean() == doctest::Approx(0.0).epsilon(1e-12));
    const double var = s0.values().row(0).array().square().mean();
    CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s0.timestamps().mean() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(*train.series.front().label() == 2);
}

TEST_CASE("raw load, save and reload reproduce every bit") {
    const auto raw =
        read_ucr_tsv(kData + "/ucr/SonyAIBORobotSurface1_TRAIN.tsv", false);
    // raw view keeps the file's values and plain 1..70 timestamps
    CHECK(raw.series.front().timestamps()(0) == 1.0);
    CHECK(raw.series.front().timestamps()(69) == 70.0);

    const std::string tmp = "io_fixture_roundtrip.tsv";
    write_ucr_tsv(raw, tmp);
    const auto back = read_ucr_tsv(tmp, false);
    std::remove(tmp.c_str());
    REQUIRE(back.series.size() == raw.series.size());
    for (std::size_t i = 0; i < raw.series.size(); ++i) {
        CHECK(*back.series[i].label() == *raw.series[i].label());
        CHECK(back.series[i].values() == raw.series[i].values()); // bitwise
    }
}

TEST_CASE("archive reader rejects malformed rows with located messages") {
    TempFile ragged("ragged.tsv", "1\t0.5\t0.25\n2\t1.5\n");
    expect_parse_error([&] { read_ucr_tsv(ragged.path); }, "ragged");
    expect_parse_error([&] { read_ucr_tsv(ragged.path); }, ":2");

    TempFile bad("badnum.tsv", "1\t0.5\tabc\n");
    expect_parse_error([&] { read_ucr_tsv(bad.path); }, "not a number");

    TempFile flabel("floatlabel.tsv", "1.5\t0.5\t0.25\n");
    expect_parse_error([&] { read_ucr_tsv(flabel.path); }, "label not an integer");

    TempFile lonely("lonely.tsv", "2\n");
    expect_parse_error([&] { read_ucr_tsv(lonely.path); }, "label and values");

    TempFile empty("empty.tsv", "");
    expect_parse_error([&] { read_ucr_tsv(empty.path); }, "no series");

    expect_parse_error([&] { read_ucr_tsv("io_fixture_missing.tsv"); }, "cannot open");
}

TEST_CASE("archive reader tolerates CRLF and blank lines") {
    TempFile crlf("crlf.tsv", "1\t0.5\t0.25\r\n\r\n2\t1.5\t0.75\r\n");
    const auto ds = read_ucr_tsv(crlf.path, false);
    REQUIRE(ds.series.size() == 2);
    CHECK(*ds.series[0].label() == 1);
    CHECK(*ds.series[1].label() == 2);
    CHECK(ds.series[1].values()(0, 1) == 0.75);
}

TEST_CASE("synthetic bump pair is deterministic and shaped as documented") {
    const auto [x1, y1] = gen_gaussian_pair(1, 200);
    const auto [x2, y2] = gen_gaussian_pair(1, 200);
    CHECK(x1.values() == x2.values());
    CHECK(y1.values() == y2.values());
    const auto [x3, y3] = gen_gaussian_pair(2, 200);
    CHECK(x1.values() != x3.values());

    const auto [cx, cy] = gen_gaussian_pair(1, 200, false);
    // bump summits: small bump height 0.2, tall bump height 1
    CHECK(cx.values()(0, 49) == doctest::Approx(0.2).epsilon(1e-12));  // t = 50
    CHECK(cx.values()(0, 139) == doctest::Approx(1.0).epsilon(1e-12)); // t = 140
    CHECK(cy.values()(0, 74) == doctest::Approx(0.2).epsilon(1e-12));  // t = 75
    CHECK(cy.values()(0, 164) == doctest::Approx(1.0).epsilon(1e-12)); // t = 165
    CHECK(cx.timestamps()(0) == 1.0);
    CHECK(cx.timestamps()(199) == 200.0);

    // noise stays within six standard deviations of the clean signal
    const double dev = (x1.values() - cx.values()).cwiseAbs().maxCoeff();
    CHECK(dev > 0.0);
    CHECK(dev <= 0.06);

    CHECK_THROWS_AS(gen_gaussian_pair(1, 0), InvalidInput);
}

TEST_CASE("climate readings load from the fixture and the full archive") {
    const auto fix = read_climate_csv(kData + "/climate_fixture.csv");
    CHECK(fix.length() == 64);
    CHECK(fix.dim() == 1);
    CHECK(!fix.label().has_value());
    CHECK(fix.values()(0, 0) == 10.0);
    CHECK(fix.values()(0, 1) == 7.4);
    CHECK(fix.timestamps()(0) == 1.0);
    CHECK(fix.timestamps()(63) == 64.0);

    const auto full = read_climate_csv(kData + "/daily_delhi_climate.csv");
    CHECK(full.length() == 1462);
    CHECK(full.values().allFinite());
}

TEST_CASE("climate reader rejects malformed input") {
    TempFile noheader("nohead.csv", "date,temp\n2013-01-01,10.0\n");
    expect_parse_error([&] { read_climate_csv(noheader.path); }, "meantemp");

    TempFile shortrow("short.csv", "date,meantemp\n2013-01-01\n");
    expect_parse_error([&] { read_climate_csv(shortrow.path); }, "short row");

    TempFile badval("badval.csv", "date,meantemp\n2013-01-01,oops\n");
    expect_parse_error([&] { read_climate_csv(badval.path); }, "not a number");

    TempFile headonly("headonly.csv", "date,meantemp\n");
    expect_parse_error([&] { read_climate_csv(headonly.path); }, "no data rows");

    TempFile blank("blank.csv", "");
    expect_parse_error([&] { read_climate_csv(blank.path); }, "empty file");

    expect_parse_error([&] { read_climate_csv("io_fixture_nope.csv"); }, "cannot open");
}

TEST_CASE("lag windows are one-based and reindex their timestamps") {
    VectorXd v(10);
    for (int i = 0; i < 10; ++i) v(i) = i + 1;
    const auto ts = TimeSeries::univariate(v);

    const auto w = lag_window(ts, 3, 4);
    REQUIRE(w.length() == 4);
    CHECK(w.values()(0, 0) == 3.0);
    CHECK(w.values()(0, 3) == 6.0);
    CHECK(w.timestamps()(0) == 1.0);
    CHECK(w.timestamps()(3) == 4.0);

    const auto head = lag_window(ts, 1, 4);
    CHECK(head.values()(0, 0) == 1.0);
    const auto tail = lag_window(ts, 7, 4);
    CHECK(tail.values()(0, 3) == 10.0);

    CHECK_THROWS_AS(lag_window(ts, 0, 4), InvalidInput);
    CHECK_THROWS_AS(lag_window(ts, 8, 4), InvalidInput);
    CHECK_THROWS_AS(lag_window(ts, 1, 11), InvalidInput);

    MatrixXd mv(2, 5);
    mv.setOnes();
    VectorXd mt(5);
    mt << 1, 2, 3, 4, 5;
    CHECK_THROWS_AS(lag_window(TimeSeries(mv, mt), 1, 2), InvalidInput);
}
