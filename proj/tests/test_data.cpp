#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "s3vm/data.hpp"
#include "s3vm/error.hpp"
#include "s3vm/rng.hpp"

using namespace s3vm;

TEST_CASE("sparse format: labels, gaps and unlabeled lines") {
    const Dataset d = parse_dataset("+1 1:0.5 3:2.0\n? 1:1.0\n-1 2:4 # comment\n", FileFormat::sparse);
    REQUIRE(d.m() == 3);
    REQUIRE(d.X.cols() == 3);
    CHECK(d.X(0, 0) == 0.5);
    CHECK(d.X(0, 1) == 0.0);
    CHECK(d.X(0, 2) == 2.0);
    CHECK(d.y_true == LabelVector{1, 0, -1});
    CHECK(d.labeled_mask == std::vector<bool>{true, false, true});
    CHECK(d.X(1, 0) == 1.0);
    CHECK(d.X(2, 1) == 4.0);
}

TEST_CASE("sparse format: errors carry line numbers") {
    try {
        parse_dataset("+1 1:1.0\n2 1:1.0\n", FileFormat::sparse);
        FAIL("expected an error");
    } catch (const DataError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_dataset("+1 0:1.0\n", FileFormat::sparse), DataError);
    CHECK_THROWS_AS(parse_dataset("+1 2:1.0 1:1.0\n", FileFormat::sparse), DataError);
    CHECK_THROWS_AS(parse_dataset("+1 1:abc\n", FileFormat::sparse), DataError);
}

TEST_CASE("csv format: header, CRLF, unlabeled, errors") {
    const Dataset d = parse_dataset("label,x,y\r\n+1,0.5,1\r\n?,2,3\r\n-1,-1,0\r\n", FileFormat::csv);
    REQUIRE(d.m() == 3);
    CHECK(d.X.cols() == 2);
    CHECK(d.y_true == LabelVector{1, 0, -1});
    CHECK(d.X(1, 1) == 3.0);

    CHECK_THROWS_AS(parse_dataset("1,2\n2,1\n", FileFormat::csv), DataError);
    try {
        parse_dataset("1,2,3\n-1,2\n", FileFormat::csv);
        FAIL("expected an error");
    } catch (const DataError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("write-then-read round trip is exact for both formats") {
    Rng rng(99);
    Dataset d{Matrix(20, 3), LabelVector(20), std::vector<bool>(20)};
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = 0; j < 3; ++j) d.X(i, j) = j == 1 && i % 3 == 0 ? 0.0 : rng.normal() * 1e3;
        d.y_true[i] = i % 4 == 3 ? 0 : (i % 2 ? 1 : -1);
        d.labeled_mask[i] = d.y_true[i] != 0;
    }
    for (auto fmt : {FileFormat::csv, FileFormat::sparse}) {
        const Dataset back = parse_dataset(format_dataset(d, fmt), fmt);
        CHECK(back.X == d.X);
        CHECK(back.y_true == d.y_true);
        CHECK(back.labeled_mask == d.labeled_mask);
    }
    const auto path = std::filesystem::temp_directory_path() / "s3vm_roundtrip.csv";
    save_dataset(d, path, FileFormat::csv);
    CHECK(load_dataset(path, FileFormat::csv).X == d.X);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_dataset(path, FileFormat::csv), DataError);
}

TEST_CASE("make_split: determinism, distinct repeats, both classes") {
    const auto [X, y] = make_moons(MoonVariant::two, 30, 0.1, 3);
    SplitSpec spec;
    spec.n_labeled = 4;
    spec.seed = 0;
    const Dataset a = make_split(X, y, spec, 0), b = make_split(X, y, spec, 0), c = make_split(X, y, spec, 1);
    CHECK(a.labeled_mask == b.labeled_mask);
    CHECK(a.labeled_mask != c.labeled_mask);
    for (std::size_t rep = 0; rep < 50; ++rep) {
        const Dataset s = make_split(X, y, spec, rep);
        CHECK(s.l() == 4);
        const auto labels = s.labeled_labels();
        CHECK(std::count(labels.begin(), labels.end(), 1) >= 1);
        CHECK(std::count(labels.begin(), labels.end(), -1) >= 1);
        CHECK(s.y_true == y);
    }
    spec.n_labeled = X.rows();
    CHECK_THROWS_AS(make_split(X, y, spec, 0), InvalidArgument);
    spec.n_labeled = 4;
    CHECK_THROWS_AS(make_split(X, LabelVector(X.rows(), 1), spec, 0), InvalidArgument);

    spec.n_positive = 3;
    const auto labels = make_split(X, y, spec, 2).labeled_labels();
    CHECK(std::count(labels.begin(), labels.end(), 1) == 3);
}

TEST_CASE("make_moons: noiseless geometry and class counts") {
    const auto [X, y] = make_moons(MoonVariant::two, 25, 0.0, 1);
    REQUIRE(X.rows() == 50);
    CHECK(std::count(y.begin(), y.end(), 1) == 25);
    CHECK(std::count(y.begin(), y.end(), -1) == 25);
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const double cx = y[i] == 1 ? 0.0 : 1.0, cy = y[i] == 1 ? 0.0 : 0.5;
        const double r = std::hypot(X(i, 0) - cx, X(i, 1) - cy);
        CHECK(std::abs(r - 1.0) <= 1e-12);
        CHECK((y[i] == 1 ? X(i, 1) >= -1e-12 : X(i, 1) <= 0.5 + 1e-12));
    }

    const auto [X3, y3] = make_moons(MoonVariant::three, 20, 0.05, 4);
    CHECK(X3.rows() == 60);
    CHECK(std::count(y3.begin(), y3.end(), 1) == 40);
    CHECK(std::count(y3.begin(), y3.end(), -1) == 20);
    CHECK(make_moons(MoonVariant::three, 20, 0.05, 4).first == X3);
    CHECK_THROWS_AS(make_moons(MoonVariant::two, 0, 0.1, 1), InvalidArgument);
}
