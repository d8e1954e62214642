#pragma once

// Code-construction algorithms, chosen by class count k:
//
//   3 <= k <= 7    exhaustive_code   every usable column, run-length rule
//   8 <= k <= 11   select_columns    GSAT search over exhaustive columns
//   k > 11         hill_climb_code   randomized local search on random rows
//                  bch_design        algebraic codes, rows picked greedily
//
// All search randomness comes from SearchConfig::seed through ecoc::Rng, so
// identical configs reproduce identical matrices.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecoc/code_matrix.hpp"
#include "ecoc/errors.hpp"
#include "ecoc/galois.hpp"
#include "ecoc/rng.hpp"

namespace ecoc {

struct SearchConfig {
    std::uint64_t seed = 0;
    std::size_t max_iterations = 20000;
    std::size_t restarts = 0; // extra random restarts (column selection)
    std::optional<std::size_t> target_row_distance;
    // (d, L-d): every pair of chosen columns must have Hamming distance
    // inside this closed band. Required by select_columns.
    std::optional<std::pair<std::size_t, std::size_t>> column_band;
};

namespace detail {

// Rows of the exhaustive code for k classes, n = 2^(k-1) - 1 columns.
// Row 0 is all ones; row i >= 1 alternates runs of 2^(k-1-i) zeroes and
// ones, starting with zeroes, truncated to n. The columns come out as every
// k-bit vector with top bit 1 except all-ones: no duplicates, no constant
// column, no complementary pair.
inline std::vector<BitVec> exhaustive_rows(std::size_t k) {
    const std::size_t n = (std::size_t{1} << (k - 1)) - 1;
    std::vector<BitVec> rows;
    rows.reserve(k);
    rows.emplace_back(n, true);
    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t run = std::size_t{1} << (k - 1 - i);
        BitVec r(n);
        for (std::size_t j = 0; j < n; ++j)
            if ((j / run) % 2 == 1) r.set(j, true);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::size_t ceil_log2(std::size_t k) {
    std::size_t b = 0;
    while ((std::size_t{1} << b) < k) ++b;
    return b;
}

} // namespace detail

inline CodeMatrix exhaustive_code(std::size_t k) {
    if (k < 3 || k > 7)
        throw UnsupportedSizeError(
            "exhaustive_code: k=" + std::to_string(k) +
            " outside [3,7]; use select_columns for 8<=k<=11, hill_climb_code or "
            "bch_design beyond that");
    return CodeMatrix(detail::exhaustive_rows(k));
}

// ---------------------------------------------------------------------------
// Column selection (GSAT)

struct SelectionResult {
    CodeMatrix code;
    bool satisfied; // true iff every chosen column pair lies inside the band
};

// Picks L columns of the exhaustive code so that every pair of chosen
// columns (k-bit vectors) has Hamming distance inside cfg.column_band.
// GSAT over column-inclusion variables: score = violated pairs among chosen
// + |#chosen - L|; each step flips the variable minimizing the score, with a
// random restart every max_iterations/(restarts+1) flips. Runs out of budget
// without a solution -> best-found subset, flagged unsatisfied.
inline SelectionResult select_columns(std::size_t k, std::size_t length, const SearchConfig& cfg) {
    if (k < 8 || k > 11)
        throw UnsupportedSizeError(
            "select_columns: k=" + std::to_string(k) +
            " outside [8,11]; use exhaustive_code for 3<=k<=7, hill_climb_code or "
            "bch_design beyond 11");
    const std::size_t pool_n = (std::size_t{1} << (k - 1)) - 1;
    if (length < 1 || length > pool_n)
        throw std::invalid_argument("select_columns: length must be in [1, " +
                                    std::to_string(pool_n) + "]");
    if (!cfg.column_band)
        throw std::invalid_argument("select_columns: cfg.column_band is required");
    const auto [band_lo, band_hi] = *cfg.column_band;
    if (band_lo > band_hi)
        throw std::invalid_argument("select_columns: infeasible band [" +
                                    std::to_string(band_lo) + ", " + std::to_string(band_hi) +
                                    "]");

    const std::vector<BitVec> rows = detail::exhaustive_rows(k);
    std::vector<BitVec> cols(pool_n);
    for (std::size_t j = 0; j < pool_n; ++j) {
        BitVec c(k);
        for (std::size_t i = 0; i < k; ++i) c.set(i, rows[i].get(j));
        cols[j] = std::move(c);
    }

    // Pairwise band-violation matrix over the column pool.
    std::vector<std::uint8_t> bad(pool_n * pool_n, 0);
    for (std::size_t a = 0; a < pool_n; ++a)
        for (std::size_t b = a + 1; b < pool_n; ++b) {
            const std::size_t h = hamming_distance(cols[a], cols[b]);
            const std::uint8_t v = (h < band_lo || h > band_hi) ? 1 : 0;
            bad[a * pool_n + b] = v;
            bad[b * pool_n + a] = v;
        }

    Rng rng(cfg.seed);
    const std::size_t tries = cfg.restarts + 1;
    const std::size_t flips_per_try = std::max<std::size_t>(1, cfg.max_iterations / tries);

    std::vector<std::uint8_t> chosen(pool_n, 0);
    std::vector<std::size_t> bad_vs_chosen(pool_n, 0); // per column, violations vs chosen set
    std::size_t n_chosen = 0, violations = 0;

    auto flip = [&](std::size_t c) {
        const std::size_t delta = bad_vs_chosen[c];
        if (chosen[c]) {
            chosen[c] = 0;
            --n_chosen;
            violations -= delta;
            for (std::size_t x = 0; x < pool_n; ++x) bad_vs_chosen[x] -= bad[c * pool_n + x];
        } else {
            chosen[c] = 1;
            ++n_chosen;
            violations += delta;
            for (std::size_t x = 0; x < pool_n; ++x) bad_vs_chosen[x] += bad[c * pool_n + x];
        }
    };

    auto randomize = [&]() {
        std::fill(chosen.begin(), chosen.end(), 0);
        std::fill(bad_vs_chosen.begin(), bad_vs_chosen.end(), 0);
        n_chosen = violations = 0;
        std::vector<std::size_t> order(pool_n);
        for (std::size_t j = 0; j < pool_n; ++j) order[j] = j;
        rng.shuffle(order);
        for (std::size_t j = 0; j < length; ++j) flip(order[j]);
    };

    auto score = [&]() {
        const std::size_t miss =
            n_chosen > length ? n_chosen - length : length - n_chosen;
        return violations + miss;
    };

    std::size_t best_score = std::numeric_limits<std::size_t>::max();
    std::vector<std::uint8_t> best_chosen;

    for (std::size_t attempt = 0; attempt < tries && best_score > 0; ++attempt) {
        randomize();
        if (score() < best_score) {
            best_score = score();
            best_chosen = chosen;
        }
        for (std::size_t step = 0; step < flips_per_try && best_score > 0; ++step) {
            // Score after flipping c, using the incremental violation counts.
            std::size_t best_flip_score = std::numeric_limits<std::size_t>::max();
            std::vector<std::size_t> best_vars;
            for (std::size_t c = 0; c < pool_n; ++c) {
                const std::size_t nc = chosen[c] ? n_chosen - 1 : n_chosen + 1;
                const std::size_t nv =
                    chosen[c] ? violations - bad_vs_chosen[c] : violations + bad_vs_chosen[c];
                const std::size_t miss = nc > length ? nc - length : length - nc;
                const std::size_t s = nv + miss;
                if (s < best_flip_score) {
                    best_flip_score = s;
                    best_vars.assign(1, c);
                } else if (s == best_flip_score) {
                    best_vars.push_back(c);
                }
            }
            flip(best_vars[rng.index(best_vars.size())]);
            if (score() < best_score) {
                best_score = score();
                best_chosen = chosen;
            }
        }
    }

    // Normalize the best assignment to exactly `length` columns.
    chosen = best_chosen;
    std::fill(bad_vs_chosen.begin(), bad_vs_chosen.end(), 0);
    n_chosen = violations = 0;
    for (std::size_t c = 0; c < pool_n; ++c)
        if (chosen[c]) {
            chosen[c] = 0;
            flip(c);
        }
    while (n_chosen > length) {
        std::size_t worst = pool_n;
        for (std::size_t c = 0; c < pool_n; ++c)
            if (chosen[c] && (worst == pool_n || bad_vs_chosen[c] > bad_vs_chosen[worst]))
                worst = c;
        flip(worst);
    }
    while (n_chosen < length) {
        std::size_t best = pool_n;
        for (std::size_t c = 0; c < pool_n; ++c)
            if (!chosen[c] && (best == pool_n || bad_vs_chosen[c] < bad_vs_chosen[best]))
                best = c;
        flip(best);
    }

    std::vector<BitVec> out_rows(k, BitVec(length));
    std::size_t out_j = 0;
    for (std::size_t c = 0; c < pool_n; ++c) {
        if (!chosen[c]) continue;
        for (std::size_t i = 0; i < k; ++i) out_rows[i].set(out_j, rows[i].get(c));
        ++out_j;
    }
    return SelectionResult{CodeMatrix(std::move(out_rows)), violations == 0};
}

// ---------------------------------------------------------------------------
// Randomized hill climbing

struct HillClimbObjective {
    std::size_t min_row_distance = 0;
    double column_extremity = 0; // max over column pairs of |H - L/2|

    // Lexicographic: higher row separation first, then lower extremity.
    friend bool operator<(const HillClimbObjective& a, const HillClimbObjective& b) {
        if (a.min_row_distance != b.min_row_distance)
            return a.min_row_distance < b.min_row_distance;
        return a.column_extremity > b.column_extremity;
    }
    friend bool operator>=(const HillClimbObjective& a, const HillClimbObjective& b) {
        return !(a < b);
    }
    friend bool operator>(const HillClimbObjective& a, const HillClimbObjective& b) {
        return b < a;
    }
};

struct HillClimbResult {
    CodeMatrix code;
    std::size_t initial_min_row_distance = 0;
    // Objective after every accepted move; non-decreasing by construction.
    std::vector<HillClimbObjective> accepted;
};

// Draws k random rows of length L, repairs duplicates, then repeatedly finds
// the closest row pair and the column pair with the most extreme Hamming
// distance and retries the four bits where they cross. At a local maximum
// the pairs are chosen at random instead; sideways moves are accepted there,
// so the accepted-move objective never decreases.
inline HillClimbResult hill_climb_code(std::size_t k, std::size_t length,
                                       const SearchConfig& cfg) {
    if (k < 2) throw std::invalid_argument("hill_climb_code: need k >= 2");
    if (length < detail::ceil_log2(k))
        throw std::invalid_argument("hill_climb_code: L=" + std::to_string(length) +
                                    " cannot hold " + std::to_string(k) + " distinct rows");

    Rng rng(cfg.seed);
    std::vector<BitVec> rows(k, BitVec(length));
    std::vector<BitVec> cols(length, BitVec(k));
    auto set_bit = [&](std::size_t i, std::size_t j, bool b) {
        rows[i].set(j, b);
        cols[j].set(i, b);
    };

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < length; ++j) set_bit(i, j, rng.coin());

    // Distinct-row repair: flip random bits of a row until it collides with
    // no earlier row.
    for (std::size_t i = 1; i < k; ++i) {
        auto collides = [&]() {
            for (std::size_t p = 0; p < i; ++p)
                if (rows[p] == rows[i]) return true;
            return false;
        };
        while (collides()) {
            const std::size_t j = rng.index(length);
            set_bit(i, j, !rows[i].get(j));
        }
    }

    const double half = static_cast<double>(length) / 2.0;
    struct Scan {
        HillClimbObjective obj;
        std::size_t r1, r2, c1, c2;
    };
    auto scan = [&]() {
        Scan s{};
        s.obj.min_row_distance = length + 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const std::size_t d = hamming_distance(rows[i], rows[j]);
                if (d < s.obj.min_row_distance) {
                    s.obj.min_row_distance = d;
                    s.r1 = i;
                    s.r2 = j;
                }
            }
        s.obj.column_extremity = -1;
        for (std::size_t i = 0; i < length; ++i)
            for (std::size_t j = i + 1; j < length; ++j) {
                const double e = std::abs(static_cast<double>(hamming_distance(cols[i], cols[j])) - half);
                if (e > s.obj.column_extremity) {
                    s.obj.column_extremity = e;
                    s.c1 = i;
                    s.c2 = j;
                }
            }
        if (length < 2) s.obj.column_extremity = 0;
        return s;
    };

    HillClimbResult result{CodeMatrix(rows), 0, {}};
    Scan cur = scan();
    result.initial_min_row_distance = cur.obj.min_row_distance;

    // Separation of the two probed pairs only: the quantity a single patch
    // can actually move when several row pairs share the global minimum.
    struct LocalScore {
        std::size_t pair_row_distance = 0;
        double pair_col_extremity = 0;
        bool operator>(const LocalScore& o) const {
            if (pair_row_distance != o.pair_row_distance)
                return pair_row_distance > o.pair_row_distance;
            return pair_col_extremity < o.pair_col_extremity;
        }
    };
    auto local_score = [&](std::size_t r1, std::size_t r2, std::size_t c1, std::size_t c2) {
        return LocalScore{hamming_distance(rows[r1], rows[r2]),
                          std::abs(static_cast<double>(hamming_distance(cols[c1], cols[c2])) - half)};
    };
    auto apply_mask = [&](std::size_t r1, std::size_t r2, std::size_t c1, std::size_t c2,
                          unsigned mask) {
        const std::size_t ri[2] = {r1, r2}, ci[2] = {c1, c2};
        for (unsigned b = 0; b < 4; ++b)
            set_bit(ri[b >> 1], ci[b & 1], (mask >> b) & 1u);
    };

    // Try all 16 assignments of the four bits where the row pair and column
    // pair intersect. A mask is acceptable when the global objective does
    // not decrease and either it, or the probed pair's own separation,
    // strictly improves; the best acceptable mask wins (global objective
    // first, pair separation as tie-break). Applies the winner and returns
    // its objective, or nothing if every mask is a step backwards.
    auto try_patch = [&](std::size_t r1, std::size_t r2, std::size_t c1,
                         std::size_t c2) -> std::optional<HillClimbObjective> {
        unsigned original = 0;
        const std::size_t ri[2] = {r1, r2}, ci[2] = {c1, c2};
        for (unsigned b = 0; b < 4; ++b)
            if (rows[ri[b >> 1]].get(ci[b & 1])) original |= 1u << b;
        const LocalScore cur_local = local_score(r1, r2, c1, c2);

        bool found = false;
        unsigned pick = original;
        HillClimbObjective pick_obj;
        LocalScore pick_local;
        for (unsigned mask = 0; mask < 16; ++mask) {
            if (mask == original) continue;
            apply_mask(r1, r2, c1, c2, mask);
            const HillClimbObjective obj = scan().obj;
            const LocalScore loc = local_score(r1, r2, c1, c2);
            const bool acceptable = obj >= cur.obj && (obj > cur.obj || loc > cur_local);
            if (acceptable &&
                (!found || obj > pick_obj || (!(pick_obj > obj) && loc > pick_local))) {
                found = true;
                pick = mask;
                pick_obj = obj;
                pick_local = loc;
            }
        }
        apply_mask(r1, r2, c1, c2, found ? pick : original);
        if (found) return pick_obj;
        return std::nullopt;
    };

    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        if (cfg.target_row_distance && cur.obj.min_row_distance >= *cfg.target_row_distance)
            break;

        // Repair at the worst intersection; when nothing there helps, the
        // search is at a local maximum and a random intersection is tried.
        auto accepted = try_patch(cur.r1, cur.r2, cur.c1, cur.c2);
        if (!accepted) {
            std::size_t a = rng.index(k), b = rng.index(k - 1);
            if (b >= a) ++b;
            std::size_t c = rng.index(length), d = length > 1 ? rng.index(length - 1) : 0;
            if (d >= c && length > 1) ++d;
            accepted = try_patch(std::min(a, b), std::max(a, b), std::min(c, d), std::max(c, d));
        }
        if (accepted) result.accepted.push_back(*accepted);
        cur = scan();
    }

    result.code = CodeMatrix(rows);
    return result;
}

// ---------------------------------------------------------------------------
// BCH design

struct BchDesignResult {
    CodeMatrix code;          // after degenerate-column deletion
    CodeMatrix selected_rows; // the k chosen codewords at full length
    std::vector<std::size_t> removed_columns;
    CodeQualityReport report; // of the final code
    Gf2Poly generator;
    int field_m = 0;
    int dimension = 0;
    unsigned t = 0;
};

// Builds the BCH codebook for the field with 2^m - 1 = target_length, picks
// k rows greedily (always the codeword farthest in minimum distance from
// those already chosen, ties to the lowest index), then drops columns made
// constant or duplicate by the row selection.
inline BchDesignResult bch_design(std::size_t k, std::size_t target_length, unsigned t) {
    int m = 0;
    for (int cand = 3; cand <= 6; ++cand)
        if (target_length == (std::size_t{1} << cand) - 1) m = cand;
    if (m == 0)
        throw UnsupportedSizeError("bch_design: target_length must be 2^m - 1 for m in {3..6}");
    if (k < 2) throw std::invalid_argument("bch_design: need k >= 2");

    const GaloisField field(m);
    const Gf2Poly g = bch_generator(field, t); // throws if dimension <= 0
    const int dim = bch_dimension(field, g);
    const std::vector<BitVec> book = enumerate_codebook(field, g);
    if (k > book.size())
        throw std::invalid_argument("bch_design: k=" + std::to_string(k) +
                                    " exceeds codebook size " + std::to_string(book.size()));

    std::vector<std::size_t> min_dist(book.size(), target_length + 1);
    std::vector<char> used(book.size(), 0);
    std::vector<BitVec> sel_rows;
    std::size_t pick = 0; // empty chosen set: all tie, lowest index wins
    for (std::size_t round = 0; round < k; ++round) {
        used[pick] = 1;
        sel_rows.push_back(book[pick]);
        std::size_t next = book.size();
        for (std::size_t i = 0; i < book.size(); ++i) {
            if (used[i]) continue;
            min_dist[i] = std::min(min_dist[i], hamming_distance(book[i], book[pick]));
            if (next == book.size() || min_dist[i] > min_dist[next]) next = i;
        }
        pick = next;
    }

    CodeMatrix selected(sel_rows);
    std::vector<std::size_t> removed;
    std::vector<std::size_t> kept;
    std::vector<BitVec> seen_cols;
    for (std::size_t j = 0; j < selected.n(); ++j) {
        const BitVec c = selected.column(j);
        const std::size_t ones = c.popcount();
        const bool constant = ones == 0 || ones == k;
        const bool dup = std::find(seen_cols.begin(), seen_cols.end(), c) != seen_cols.end();
        if (constant || dup) {
            removed.push_back(j);
        } else {
            kept.push_back(j);
            seen_cols.push_back(c);
        }
    }
    if (kept.empty())
        throw InfeasibleDesignError("bch_design: every column degenerate after row selection");

    std::vector<BitVec> final_rows(k, BitVec(kept.size()));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t jj = 0; jj < kept.size(); ++jj)
            final_rows[i].set(jj, sel_rows[i].get(kept[jj]));

    BchDesignResult out{CodeMatrix(std::move(final_rows)), std::move(selected),
                        std::move(removed), {},      g,
                        m,                  dim,     t};
    out.report = quality_report(out.code);
    return out;
}

// ---------------------------------------------------------------------------
// Dispatch by class count

struct DesignResult {
    CodeMatrix code;
    std::string method; // "exhaustive" | "gsat" | "hillclimb" | "bch"
    bool satisfied = true;
};

// Method choice follows the class-count ranges above. With no length hint,
// k in [8,11] selects min(31, pool) columns with band (2, L-2); k > 11 hill
// climbs at L = 63. A hint of exactly 2^m - 1 (m in {3..6}) routes k > 11 to
// BCH with the strongest t whose codebook still covers k classes.
inline DesignResult design_auto(std::size_t k, std::optional<std::size_t> length_hint = {},
                                std::uint64_t seed = 0) {
    if (k < 3) throw std::invalid_argument("design_auto: need k >= 3");
    if (k <= 7) return {exhaustive_code(k), "exhaustive", true};

    if (k <= 11) {
        const std::size_t pool_n = (std::size_t{1} << (k - 1)) - 1;
        const std::size_t len = std::min(length_hint.value_or(31), pool_n);
        SearchConfig cfg;
        cfg.seed = seed;
        const std::size_t d = std::min<std::size_t>(2, len / 2);
        cfg.column_band = {{d, len - d}};
        auto sel = select_columns(k, len, cfg);
        return {std::move(sel.code), "gsat", sel.satisfied};
    }

    if (length_hint) {
        int m = 0;
        for (int cand = 3; cand <= 6; ++cand)
            if (*length_hint == (std::size_t{1} << cand) - 1) m = cand;
        if (m != 0) {
            const GaloisField field(m);
            // Strongest designed correction whose codebook still has k rows
            // and an enumerable dimension.
            std::optional<unsigned> best_t;
            for (unsigned t = 1; 2 * t + 1 <= field.order(); ++t) {
                Gf2Poly g;
                try {
                    g = bch_generator(field, t);
                } catch (const InfeasibleDesignError&) {
                    break;
                }
                const int dim = bch_dimension(field, g);
                if (dim <= 16 && (std::uint64_t{1} << dim) >= k) best_t = t;
            }
            if (best_t) {
                auto bch = bch_design(k, *length_hint, *best_t);
                return {std::move(bch.code), "bch", true};
            }
        }
    }

    SearchConfig cfg;
    cfg.seed = seed;
    auto hc = hill_climb_code(k, length_hint.value_or(63), cfg);
    return {std::move(hc.code), "hillclimb", true};
}

} // namespace ecoc
