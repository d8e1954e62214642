#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>
#include <vector>

#include "ecoc/code_matrix.hpp"
#include "ecoc/rng.hpp"
#include "tables.hpp"

using namespace ecoc;

namespace {

// Independent oracle: bit-by-bit count, no packed words.
std::size_t hamming_oracle(const BitVec& a, const BitVec& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a.get(i) != b.get(i);
    return d;
}

BitVec random_bits(Rng& rng, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng.coin());
    return v;
}

CodeMatrix random_matrix(Rng& rng, std::size_t k, std::size_t n) {
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < k; ++i) rows.push_back(random_bits(rng, n));
    return CodeMatrix(std::move(rows));
}

} // namespace

TEST_CASE("hamming_distance basics") {
    const BitVec a = BitVec::from_string("110001");
    const BitVec b = BitVec::from_string("110000");
    CHECK(hamming_distance(a, b) == 1);
    CHECK(hamming_distance(a, a) == 0);
    CHECK(hamming_distance(BitVec::from_string("0000"), BitVec::from_string("1111")) == 4);
    CHECK_THROWS_AS(hamming_distance(a, BitVec::from_string("11")), std::invalid_argument);
}

TEST_CASE("hamming_distance is a metric and matches the bitwise oracle") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.index(130);
        const BitVec a = random_bits(rng, n), b = random_bits(rng, n), c = random_bits(rng, n);
        const std::size_t ab = hamming_distance(a, b);
        CHECK(ab == hamming_oracle(a, b));
        CHECK(ab == hamming_distance(b, a));
        CHECK((ab == 0) == (a == b));
        CHECK(hamming_distance(a, c) <= ab + hamming_distance(b, c));
    }
}

TEST_CASE("quality_report on the reference codes") {
    SECTION("ten-class 15-bit code corrects three errors") {
        const auto rep = quality_report(testing::ten_class_15bit_code());
        CHECK(rep.min_row_distance == 7);
        CHECK(rep.correction_capacity == 3);
        CHECK(rep.duplicate_rows.empty());
    }
    SECTION("five-class exhaustive code has row separation 8") {
        const auto rep = quality_report(testing::five_class_exhaustive_reference());
        CHECK(rep.min_row_distance == 8);
        CHECK(rep.complementary_or_duplicate_columns.empty());
    }
    SECTION("one-per-class corrects nothing") {
        for (std::size_t k : {2u, 4u, 10u}) {
            const auto rep = quality_report(one_per_class(k));
            CHECK(rep.min_row_distance == 2);
            CHECK(rep.correction_capacity == 0);
        }
        // Each pair of identity columns: H = 2, complement distance k - 2.
        CHECK(quality_report(one_per_class(3)).min_column_separation == 1);
    }
}

TEST_CASE("quality_report matches a brute-force oracle on random matrices") {
    Rng rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t k = 2 + rng.index(19);  // up to 20 rows
        const std::size_t n = 1 + rng.index(30);  // up to 30 columns
        const CodeMatrix m = random_matrix(rng, k, n);
        const auto rep = quality_report(m);

        std::size_t min_row = n + 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                min_row = std::min(min_row, hamming_oracle(m.row(i), m.row(j)));
        CHECK(rep.min_row_distance == min_row);
        CHECK(rep.correction_capacity == (min_row == 0 ? 0 : (min_row - 1) / 2));

        if (n >= 2) {
            std::size_t min_col = k;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const std::size_t h = hamming_oracle(m.column(i), m.column(j));
                    min_col = std::min(min_col, std::min(h, k - h));
                }
            CHECK(rep.min_column_separation == min_col);
            CHECK(rep.min_column_separation <= k / 2);
        }
    }
}

TEST_CASE("quality_report is invariant under row permutation") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const CodeMatrix m = random_matrix(rng, 3 + rng.index(9), 2 + rng.index(16));
        std::vector<std::size_t> perm(m.k());
        for (std::size_t i = 0; i < m.k(); ++i) perm[i] = i;
        rng.shuffle(perm);
        std::vector<BitVec> rows;
        for (std::size_t i = 0; i < m.k(); ++i) rows.push_back(m.row(perm[i]));
        const auto a = quality_report(m);
        const auto b = quality_report(CodeMatrix(std::move(rows)));
        CHECK(a.min_row_distance == b.min_row_distance);
        CHECK(a.correction_capacity == b.correction_capacity);
        CHECK(a.min_column_separation == b.min_column_separation);
    }
}

TEST_CASE("one_per_class shape and errors") {
    const CodeMatrix m = one_per_class(3);
    CHECK(m.row(0).to_string() == "100");
    CHECK(m.row(1).to_string() == "010");
    CHECK(m.row(2).to_string() == "001");
    CHECK(is_one_per_class(m));
    CHECK_FALSE(is_one_per_class(testing::ten_class_15bit_code()));
    CHECK_THROWS_AS(one_per_class(1), std::invalid_argument);
}

TEST_CASE("validate reports structural violations without throwing") {
    SECTION("reference exhaustive code is clean") {
        CHECK(validate(testing::five_class_exhaustive_reference()).empty());
    }
    SECTION("all-zero column flagged") {
        const CodeMatrix m(
            {BitVec::from_string("010"), BitVec::from_string("001"), BitVec::from_string("011")});
        const auto v = validate(m);
        REQUIRE(std::any_of(v.begin(), v.end(), [](const CodeViolation& x) {
            return x.kind == CodeViolation::ConstantColumn && x.a == 0;
        }));
    }
    SECTION("duplicate rows flagged") {
        const auto v = validate(CodeMatrix({BitVec::from_string("01"), BitVec::from_string("01")}));
        REQUIRE(std::any_of(v.begin(), v.end(), [](const CodeViolation& x) {
            return x.kind == CodeViolation::DuplicateRow;
        }));
    }
    SECTION("the meaningful digit code loads but is flagged") {
        const auto v = validate(testing::digit_meaningful_code());
        CHECK(std::any_of(v.begin(), v.end(), [](const CodeViolation& x) {
            return x.kind == CodeViolation::DuplicateRow && x.a == 0 && x.b == 8;
        }));
    }
}

TEST_CASE("code matrix text format round-trips bit-exactly") {
    Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        CodeMatrix m = random_matrix(rng, 2 + rng.index(12), 1 + rng.index(40));
        if (trial % 2 == 0) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < m.k(); ++i) names.push_back("class" + std::to_string(i));
            m.set_class_names(names);
        }
        std::ostringstream os;
        save_code_matrix(m, os);
        std::istringstream is(os.str());
        CHECK(load_code_matrix(is) == m);
    }
}

TEST_CASE("code matrix loader accepts comments and rejects malformed input") {
    std::istringstream ok("# a comment\n2 3\n101\n# interleaved\n010\nlabel 0 a\nlabel 1 b\n");
    const CodeMatrix m = load_code_matrix(ok);
    CHECK(m.k() == 2);
    CHECK(m.class_names() == std::vector<std::string>{"a", "b"});

    std::istringstream bad_bits("2 3\n101\n01x\n");
    CHECK_THROWS_AS(load_code_matrix(bad_bits), ParseError);
    std::istringstream short_row("2 3\n101\n01\n");
    CHECK_THROWS_AS(load_code_matrix(short_row), ParseError);
    std::istringstream missing_row("3 3\n101\n010\n");
    CHECK_THROWS_AS(load_code_matrix(missing_row), ParseError);
}
