#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "support.hpp"
#include "ure/errors.hpp"
#include "ure/records_io.hpp"

using testsupport::ScratchDir;
using ure::EvaluationRecord;

TEST_CASE("records round-trip through CSV") {
    const ScratchDir dir("records");
    const std::vector<EvaluationRecord> records = {
        {"alpha", 0.125, 0.875}, {"beta", 1.0, 0.0}, {"gamma", 0.33, 0.66}};
    const auto path = dir / "r.csv";
    ure::write_records(records, path);
    CHECK(ure::read_records(path) == records);
}

TEST_CASE("values that need more than 9 digits settle after one round-trip") {
    const ScratchDir dir("records");
    const std::vector<EvaluationRecord> records = {{"x", 1.0 / 3.0, 2.0 / 3.0}};
    const auto path = dir / "r.csv";
    ure::write_records(records, path);
    const auto once = ure::read_records(path);
    CHECK(std::abs(once[0].score - records[0].score) < 1e-9);
    CHECK(std::abs(once[0].confidence - records[0].confidence) < 1e-9);
    ure::write_records(once, path);
    CHECK(ure::read_records(path) == once); // 9 significant digits is a fixed point
}

TEST_CASE("records file parse errors name the line") {
    const ScratchDir dir("records");
    const auto path = dir / "r.csv";

    testsupport::write_file(path, "id,score,confidence\na,0.5,1.5\n");
    CHECK_THROWS_WITH_AS(ure::read_records(path),
                         doctest::Contains("line 2"), ure::InputError);

    testsupport::write_file(path, "id,score,confidence\na,0.5\n");
    CHECK_THROWS_WITH_AS(ure::read_records(path), doctest::Contains("expected 3 fields"),
                         ure::InputError);

    testsupport::write_file(path, "id,score,confidence\na,zero,0.5\n");
    CHECK_THROWS_WITH_AS(ure::read_records(path), doctest::Contains("cannot parse score"),
                         ure::InputError);

    testsupport::write_file(path, "score,confidence\n");
    CHECK_THROWS_AS(ure::read_records(path), ure::InputError);

    testsupport::write_file(path, "");
    CHECK_THROWS_AS(ure::read_records(path), ure::InputError);

    testsupport::write_file(path, "id,score,confidence\na,0.5,0.5\na,0.6,0.6\n");
    CHECK_THROWS_WITH_AS(ure::read_records(path), doctest::Contains("duplicate"),
                         ure::InputError);

    CHECK_THROWS_AS(ure::read_records(dir / "missing.csv"), ure::InputError);
}

TEST_CASE("header-only records file parses to an empty list") {
    const ScratchDir dir("records");
    const auto path = dir / "r.csv";
    testsupport::write_file(path, "id,score,confidence\n");
    CHECK(ure::read_records(path).empty());
}

TEST_CASE("ids with separators are rejected on write") {
    const ScratchDir dir("records");
    const std::vector<EvaluationRecord> records = {{"a,b", 0.5, 0.5}};
    CHECK_THROWS_AS(ure::write_records(records, dir / "r.csv"), ure::InputError);
}

TEST_CASE("windows line endings are tolerated") {
    const ScratchDir dir("records");
    const auto path = dir / "r.csv";
    testsupport::write_file(path, "id,score,confidence\r\na,0.5,0.25\r\n");
    const auto records = ure::read_records(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].score == 0.5);
    CHECK(records[0].confidence == 0.25);
}
