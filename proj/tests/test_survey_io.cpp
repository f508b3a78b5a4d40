#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "elfscan/rng.hpp"
#include "elfscan/survey_io.hpp"
#include "fixture_models.hpp"

using namespace elfscan;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per suite run.
fs::path scratch_dir() {
    const fs::path dir = fs::current_path() / "tmp_survey_io";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const fs::path& file, const std::string& text) {
    std::ofstream out(file);
    out << text;
    return file;
}

const char* kHeader =
    "laptop_id,screen_size_in,power_source,side,point_id,bx_uT,by_uT,bz_uT,b_rms_uT\n";

}  // namespace

TEST_CASE("ingest groups rows into experiment cells in canonical order") {
    const fs::path dir = scratch_dir();
    std::string csv = kHeader;
    csv += "lapB,15.6,Battery,BottomBody,bbmp2,0.1,0.2,0.3,\n";
    csv += "lapA,15.6,AC,TopBody,tbmp1,1,0,0,\n";
    csv += "lapA,15.6,Battery,TopBody,tbmp1,,,,0.5\n";
    csv += "lapB,15.6,AC,BottomBody,bbmp1,0.3,0,0.4,\n";
    const auto datasets = ingest_csv(write_text(dir / "cells.csv", csv));
    REQUIRE(datasets.size() == 4);
    CHECK(datasets[0].side == Side::TopBody);
    CHECK(datasets[0].power_source == PowerSource::AC);
    CHECK(datasets[1].side == Side::TopBody);
    CHECK(datasets[1].power_source == PowerSource::Battery);
    CHECK(datasets[2].side == Side::BottomBody);
    CHECK(datasets[2].power_source == PowerSource::AC);
    CHECK(datasets[3].side == Side::BottomBody);
    CHECK(datasets[3].power_source == PowerSource::Battery);
    CHECK(datasets[2].records[0].feature_value() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("a single-cell file produces a single dataset") {
    const fs::path dir = scratch_dir();
    std::string csv = kHeader;
    csv += "lapA,14,AC,TopBody,tbmp1,0.1,0.1,0.1,\n";
    csv += "lapA,14,AC,TopBody,tbmp2,,,,0.2\n";
    const auto datasets = ingest_csv(write_text(dir / "one.csv", csv));
    REQUIRE(datasets.size() == 1);
    CHECK(datasets[0].records.size() == 2);
}

TEST_CASE("unit suffixes convert on ingest") {
    const fs::path dir = scratch_dir();
    std::string csv =
        "laptop_id,screen_size_in,power_source,side,point_id,bx_nT,by_nT,bz_nT,b_rms_mT\n";
    csv += "lapA,15.6,AC,TopBody,tbmp1,300,0,400,\n";  // 0.5 uT after conversion
    csv += "lapA,15.6,AC,TopBody,tbmp2,,,,0.002\n";    // 2 uT
    const auto datasets = ingest_csv(write_text(dir / "units.csv", csv));
    CHECK(datasets[0].records[0].feature_value() == doctest::Approx(0.0005).epsilon(1e-12));
    CHECK(datasets[0].records[1].feature_value() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("unknown units are a unit error, not a parse error") {
    const fs::path dir = scratch_dir();
    const std::string csv =
        "laptop_id,screen_size_in,power_source,side,point_id,bx_kT,by_uT,bz_uT,b_rms_uT\n";
    CHECK_THROWS_AS(ingest_csv(write_text(dir / "bad_unit.csv", csv + "x,1,AC,TopBody,tbmp1,1,1,1,\n")),
                    UnitError);
}

TEST_CASE("malformed rows report their line number") {
    const fs::path dir = scratch_dir();
    auto expect_parse_error = [&](const std::string& row, std::size_t line) {
        const fs::path file = write_text(dir / "bad.csv", std::string(kHeader) + row);
        try {
            ingest_csv(file);
            FAIL("expected ParseError for: " << row);
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_parse_error("lapA,15.6,AC,TopBody,tbmp1,1,0\n", 2);               // field count
    expect_parse_error("lapA,15.6,AC,TopBody,tbmp1,1,oops,0,\n", 2);         // bad number
    expect_parse_error("lapA,15.6,Solar,TopBody,tbmp1,1,0,0,\n", 2);         // power source
    expect_parse_error("lapA,15.6,AC,TopBody,bbmp1,1,0,0,\n", 2);            // side mismatch
    expect_parse_error("lapA,15.6,AC,TopBody,tbmp1,1,0,0,0.5\n", 2);         // both
    expect_parse_error("lapA,15.6,AC,TopBody,tbmp1,,,,\n", 2);               // neither
    expect_parse_error("lapA,15.6,AC,TopBody,tbmp1,1,,0,\n", 2);             // partial trio
    expect_parse_error("lapA,-3,AC,TopBody,tbmp1,1,0,0,\n", 2);              // screen size
    expect_parse_error("lapA,15.6,AC,TopBody,tbmp1,1,0,0,\nlapA,15.6\n", 3); // second row
}

TEST_CASE("empty and header-only files are empty-input errors") {
    const fs::path dir = scratch_dir();
    CHECK_THROWS_AS(ingest_csv(write_text(dir / "empty.csv", "")), EmptyInputError);
    CHECK_THROWS_AS(ingest_csv(write_text(dir / "header.csv", kHeader)), EmptyInputError);
    CHECK_THROWS_AS(ingest_csv(dir / "missing.csv"), IoError);
}

TEST_CASE("duplicate rows survive ingest and surface in validation") {
    const fs::path dir = scratch_dir();
    std::string csv = kHeader;
    csv += "lapA,15.6,AC,TopBody,tbmp1,1,0,0,\n";
    csv += "lapA,15.6,AC,TopBody,tbmp1,2,0,0,\n";
    const auto datasets = ingest_csv(write_text(dir / "dup.csv", csv));
    const auto report = validate_dataset(datasets[0]);
    REQUIRE_FALSE(report.valid());
    CHECK(report.errors[0].code == "duplicate");
}

TEST_CASE("write then ingest round-trips every value exactly") {
    const fs::path dir = scratch_dir();
    Rng rng(123);
    std::vector<SurveyDataset> datasets(1);
    datasets[0].side = Side::TopBody;
    datasets[0].power_source = PowerSource::AC;
    for (int lap = 0; lap < 5; ++lap) {
        for (int p = 1; p <= 9; ++p) {
            SurveyRecord rec;
            rec.laptop_id = "lap" + std::to_string(lap);
            rec.screen_size_in = 11.6 + rng.uniform01() * 6.0;
            rec.point = MeasurementPoint(Side::TopBody, p);
            if (p % 2 == 0) {
                rec.rms_uT = rng.uniform01() * 3.0;
            } else {
                rec.sample = FieldSample{rng.uniform01() * 2.0 - 1.0,
                                         rng.uniform01() * 2.0 - 1.0, rng.gaussian() * 0.2};
            }
            datasets[0].records.push_back(std::move(rec));
        }
    }

    const fs::path file = dir / "roundtrip.csv";
    write_survey_csv(file, datasets);
    const auto loaded = ingest_csv(file);
    REQUIRE(loaded.size() == 1);
    REQUIRE(loaded[0].records.size() == datasets[0].records.size());
    for (std::size_t i = 0; i < loaded[0].records.size(); ++i) {
        const auto& a = datasets[0].records[i];
        const auto& b = loaded[0].records[i];
        CHECK(a.laptop_id == b.laptop_id);
        CHECK(a.screen_size_in == b.screen_size_in);
        CHECK(a.point.id() == b.point.id());
        REQUIRE(a.sample.has_value() == b.sample.has_value());
        if (a.sample) {
            CHECK(a.sample->bx_uT == b.sample->bx_uT);
            CHECK(a.sample->by_uT == b.sample->by_uT);
            CHECK(a.sample->bz_uT == b.sample->bz_uT);
        } else {
            CHECK(*a.rms_uT == *b.rms_uT);
        }
        CHECK(a.feature_value() == doctest::Approx(b.feature_value()).epsilon(1e-12));
    }
}

TEST_CASE("model files round-trip through writer and reader") {
    const fs::path dir = scratch_dir();
    const auto models = testfix::make_fixture_models();
    const fs::path file = dir / "fixture.model";
    write_model_file(file, models);
    const auto loaded = read_model_file(file);
    REQUIRE(loaded.size() == models.size());
    for (const auto& [id, model] : models) {
        const auto it = loaded.find(id);
        REQUIRE(it != loaded.end());
        CHECK(it->second.screen_size_in == model.screen_size_in);
        REQUIRE(it->second.wires.paths.size() == model.wires.paths.size());
        for (std::size_t p = 0; p < model.wires.paths.size(); ++p) {
            CHECK(it->second.wires.paths[p].current_A == model.wires.paths[p].current_A);
            CHECK(it->second.wires.paths[p].vertices.size() ==
                  model.wires.paths[p].vertices.size());
        }
    }
}

TEST_CASE("model file reader accepts comments and rejects malformed blocks") {
    const fs::path dir = scratch_dir();
    const std::string good =
        "# demo\n"
        "laptop demo 15.6\n"
        "path 0.5\n"
        "  0 0 0\n"
        "  0.1 0 0   # inline comment\n"
        "end\n";
    const auto models = read_model_file(write_text(dir / "good.model", good));
    REQUIRE(models.count("demo") == 1);
    CHECK(models.at("demo").wires.paths[0].vertices.size() == 2);
    CHECK(models.at("demo").wires.paths[0].current_A == 0.5);

    auto expect_error = [&](const std::string& text, std::size_t line) {
        try {
            read_model_file(write_text(dir / "bad.model", text));
            FAIL("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_error("path 0.5\n", 1);                                    // path before laptop
    expect_error("laptop a 15.6\npath 0.5\n 0 0 0\nend\nend\n", 5);   // stray end
    expect_error("laptop a 15.6\npath 0.5\n 0 0 0\nend\n", 4);        // single-vertex path
    expect_error("laptop a 15.6\npath 0.5\n 0 0\nend\n", 3);          // short vertex
    expect_error("laptop a 15.6\npath 0.5\n 0 0 0\n 0 0 0\nend\n", 4);// repeated vertex
    expect_error("laptop a 15.6\npath 0.5\n 0 0 0\n 1 0 0\n", 2);     // unterminated
    expect_error("laptop a 15.6\nlaptop a 14\n", 2);                  // duplicate laptop
    expect_error("laptop a\n", 1);                                    // missing screen size
}
