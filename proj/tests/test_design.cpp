#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "ecoc/design.hpp"
#include "tables.hpp"

using namespace ecoc;

TEST_CASE("exhaustive codes follow the run-length construction") {
    SECTION("k=5 reproduces the reference matrix bit for bit") {
        CHECK(exhaustive_code(5) == testing::five_class_exhaustive_reference());
    }
    SECTION("k=4: seven columns, all row pairs at distance 4") {
        const CodeMatrix m = exhaustive_code(4);
        CHECK(m.n() == 7);
        CHECK(quality_report(m).min_row_distance == 4);
    }
    SECTION("k=3: rows 111, 001, 010") {
        const CodeMatrix m = exhaustive_code(3);
        CHECK(m.row(0).to_string() == "111");
        CHECK(m.row(1).to_string() == "001");
        CHECK(m.row(2).to_string() == "010");
        CHECK(quality_report(m).min_row_distance == 2);
    }
    SECTION("every supported k is structurally clean") {
        for (std::size_t k = 3; k <= 7; ++k) {
            const CodeMatrix m = exhaustive_code(k);
            CHECK(m.n() == (std::size_t{1} << (k - 1)) - 1);
            CHECK(validate(m).empty());
        }
    }
    SECTION("out-of-range k names the alternatives") {
        CHECK_THROWS_AS(exhaustive_code(2), UnsupportedSizeError);
        CHECK_THROWS_WITH(exhaustive_code(8), Catch::Matchers::ContainsSubstring("select_columns"));
    }
}

namespace {

// Post-hoc oracle for the column-distance band.
bool band_satisfied(const CodeMatrix& m, std::size_t lo, std::size_t hi) {
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = i + 1; j < m.n(); ++j) {
            const std::size_t h = hamming_distance(m.column(i), m.column(j));
            if (h < lo || h > hi) return false;
        }
    return true;
}

} // namespace

TEST_CASE("select_columns") {
    SECTION("satisfied results pass an exhaustive band check") {
        SearchConfig cfg;
        cfg.seed = 7;
        cfg.max_iterations = 30000;
        cfg.column_band = {{2, 29}};
        const auto r = select_columns(8, 31, cfg);
        REQUIRE(r.satisfied);
        CHECK(r.code.k() == 8);
        CHECK(r.code.n() == 31);
        CHECK(band_satisfied(r.code, 2, 29));
        // Chosen columns must come from the exhaustive pool: with the top
        // row all ones, each column has its first bit set.
        for (std::size_t j = 0; j < r.code.n(); ++j) CHECK(r.code.bit(0, j));
    }
    SECTION("full-length selection with a vacuous band returns the exhaustive pool") {
        SearchConfig cfg;
        cfg.seed = 1;
        cfg.column_band = {{0, 127}};
        const auto r = select_columns(8, 127, cfg);
        CHECK(r.satisfied);
        CHECK(r.code == CodeMatrix(detail::exhaustive_rows(8)));
    }
    SECTION("an unsatisfiable band comes back flagged, not thrown") {
        // Columns are 8-bit vectors, so pairwise distance 10 is impossible.
        SearchConfig cfg;
        cfg.seed = 3;
        cfg.max_iterations = 2000;
        cfg.column_band = {{10, 21}};
        const auto r = select_columns(8, 31, cfg);
        CHECK_FALSE(r.satisfied);
        CHECK(r.code.n() == 31);
    }
    SECTION("empty band rejected") {
        SearchConfig cfg;
        cfg.column_band = {{32, 31}};
        CHECK_THROWS_AS(select_columns(8, 63, cfg), std::invalid_argument);
    }
    SECTION("same seed, same matrix") {
        SearchConfig cfg;
        cfg.seed = 11;
        cfg.max_iterations = 5000;
        cfg.column_band = {{2, 13}};
        CHECK(select_columns(9, 15, cfg).code == select_columns(9, 15, cfg).code);
    }
}

TEST_CASE("hill_climb_code") {
    SECTION("k=2, L=1 is forced to the two distinct rows") {
        for (std::uint64_t seed : {0ull, 1ull, 2ull, 99ull}) {
            SearchConfig cfg;
            cfg.seed = seed;
            cfg.max_iterations = 10;
            const auto r = hill_climb_code(2, 1, cfg);
            const std::set<std::string> rows = {r.code.row(0).to_string(),
                                                r.code.row(1).to_string()};
            CHECK(rows == std::set<std::string>{"0", "1"});
        }
    }
    SECTION("k=26, L=40: accepted objectives never decrease and beat the initial draw") {
        SearchConfig cfg;
        cfg.seed = 4242;
        cfg.max_iterations = 1500;
        const auto r = hill_climb_code(26, 40, cfg);
        REQUIRE_FALSE(r.accepted.empty());
        for (std::size_t i = 1; i < r.accepted.size(); ++i)
            CHECK(r.accepted[i] >= r.accepted[i - 1]);
        const auto final_rep = quality_report(r.code);
        CHECK(final_rep.min_row_distance > r.initial_min_row_distance);
        CHECK(final_rep.min_row_distance == r.accepted.back().min_row_distance);
    }
    SECTION("k=10, L=15 reaches row separation 5 within budget") {
        SearchConfig cfg;
        cfg.seed = 5;
        cfg.max_iterations = 4000;
        const auto r = hill_climb_code(10, 15, cfg);
        CHECK(quality_report(r.code).min_row_distance >= 5);
    }
    SECTION("identical seed gives an identical matrix") {
        SearchConfig cfg;
        cfg.seed = 77;
        cfg.max_iterations = 300;
        CHECK(hill_climb_code(12, 20, cfg).code == hill_climb_code(12, 20, cfg).code);
    }
    SECTION("target distance stops the search early") {
        SearchConfig cfg;
        cfg.seed = 8;
        cfg.max_iterations = 100000;
        cfg.target_row_distance = 3;
        const auto r = hill_climb_code(8, 12, cfg);
        CHECK(quality_report(r.code).min_row_distance >= 3);
    }
    SECTION("rows must fit") {
        SearchConfig cfg;
        CHECK_THROWS_AS(hill_climb_code(5, 2, cfg), std::invalid_argument);
    }
}

TEST_CASE("bch_design") {
    SECTION("10 rows from the (15,5) t=3 codebook keep distance >= 7") {
        const auto r = bch_design(10, 15, 3);
        CHECK(r.dimension == 5);
        CHECK(r.selected_rows.k() == 10);
        CHECK(quality_report(r.selected_rows).min_row_distance >= 7);
        CHECK(r.report.min_row_distance >= 7); // column deletion only removes degenerate columns
        CHECK(r.code.k() == 10);

        // Membership: every selected row is a word of the full codebook.
        const GaloisField f(4);
        const auto book = enumerate_codebook(f, bch_generator(f, 3));
        for (std::size_t i = 0; i < r.selected_rows.k(); ++i)
            CHECK(std::binary_search(book.begin(), book.end(), r.selected_rows.row(i)));
    }
    SECTION("taking the whole codebook keeps the designed distance") {
        const auto r = bch_design(32, 15, 3);
        CHECK(quality_report(r.selected_rows).min_row_distance == 7);
    }
    SECTION("degenerate columns are deleted") {
        // Two rows from the repetition-like t=7 code: the all-zero word plus
        // the all-one word leave every column duplicated after selection.
        const auto r = bch_design(2, 15, 7);
        CHECK(r.code.n() == 1);
        CHECK(r.removed_columns.size() == 14);
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(bch_design(40, 15, 3), std::invalid_argument); // 40 > 32 codewords
        CHECK_THROWS_AS(bch_design(4, 16, 2), UnsupportedSizeError);   // not 2^m - 1
    }
}

TEST_CASE("bch_design keeps distance >= 7 when selection drops degenerate columns") {
    const auto full = bch_design(32, 15, 3);
    CHECK(full.removed_columns.empty()); // all 15 columns informative on the full book
}

TEST_CASE("design_auto dispatch") {
    CHECK(design_auto(5).method == "exhaustive");
    CHECK(design_auto(5).code.n() == 15);
    CHECK(design_auto(7).method == "exhaustive");

    const auto ten = design_auto(10, 31, 21);
    CHECK(ten.method == "gsat");
    CHECK(ten.code.n() == 31);

    const auto big = design_auto(26, std::nullopt, 9);
    CHECK(big.method == "hillclimb");
    CHECK(big.code.n() == 63);

    const auto bch = design_auto(26, 31, 0);
    CHECK(bch.method == "bch");
    CHECK(bch.code.k() == 26);

    const auto hc = design_auto(26, 40, 1);
    CHECK(hc.method == "hillclimb");
    CHECK(hc.code.n() == 40);

    CHECK_THROWS_AS(design_auto(2), std::invalid_argument);
}
