#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "ecoc/galois.hpp"
#include "ecoc/rng.hpp"

using namespace ecoc;

TEST_CASE("field construction and generator property") {
    for (int m = 3; m <= 6; ++m) {
        const GaloisField f(m);
        std::set<std::uint32_t> powers;
        for (std::uint32_t p = 0; p < f.order(); ++p) powers.insert(f.alpha_pow(p));
        CHECK(powers.size() == f.order()); // alpha generates every nonzero element
        CHECK(f.alpha_pow(f.order()) == 1); // alpha^(2^m - 1) = 1
    }
    CHECK_THROWS_AS(GaloisField(2), UnsupportedSizeError);
    CHECK_THROWS_AS(GaloisField(7), UnsupportedSizeError);
}

TEST_CASE("m=4: alpha^4 reduces to alpha + 1 under x^4 + x + 1") {
    const GaloisField f(4);
    CHECK(f.alpha_pow(4) == 0b0011);
    CHECK(f.alpha_pow(1) == 0b0010);
}

TEST_CASE("field axioms on random triples, inverses for every element") {
    for (int m = 3; m <= 6; ++m) {
        const GaloisField f(m);
        Rng rng(100 + m);
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = static_cast<std::uint32_t>(rng.below(f.order() + 1));
            const auto b = static_cast<std::uint32_t>(rng.below(f.order() + 1));
            const auto c = static_cast<std::uint32_t>(rng.below(f.order() + 1));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
        for (std::uint32_t x = 1; x <= f.order(); ++x)
            CHECK(f.mul(x, f.inverse(x)) == 1);
    }
}

TEST_CASE("minimal polynomials have the defining roots") {
    const GaloisField f(4);

    SECTION("alpha itself gives back the primitive polynomial") {
        CHECK(minimal_polynomial(f, 1) == f.primitive_poly());
        CHECK(minimal_polynomial(f, 1).bits == 0b10011);
    }
    SECTION("every minimal polynomial vanishes on its whole conjugacy class") {
        for (std::uint32_t e = 1; e < f.order(); ++e) {
            const Gf2Poly p = minimal_polynomial(f, e);
            std::uint32_t c = e;
            do {
                CHECK(f.eval(p, f.alpha_pow(c)) == 0);
                c = (c * 2) % f.order();
            } while (c != e);
        }
    }
    SECTION("conjugate exponents share one polynomial") {
        for (std::uint32_t e = 1; e < f.order(); ++e)
            CHECK(minimal_polynomial(f, e) == minimal_polynomial(f, (2 * e) % f.order()));
        CHECK(minimal_polynomial(f, 3).degree() == 4);
    }
}

TEST_CASE("BCH generators") {
    const GaloisField f(4);

    SECTION("t=1 is the Hamming code: generator x^4+x+1, dimension 11") {
        const Gf2Poly g = bch_generator(f, 1);
        CHECK(g.bits == 0b10011);
        CHECK(bch_dimension(f, g) == 11);
    }
    SECTION("t=3 gives a degree-10 generator, dimension 5") {
        const Gf2Poly g = bch_generator(f, 3);
        CHECK(g.degree() == 10);
        CHECK(bch_dimension(f, g) == 5);
    }
    SECTION("alpha^1..alpha^2t are roots of the generator") {
        for (unsigned t = 1; t <= 3; ++t) {
            const Gf2Poly g = bch_generator(f, t);
            for (std::uint32_t e = 1; e <= 2 * t; ++e)
                CHECK(f.eval(g, f.alpha_pow(e)) == 0);
        }
    }
    SECTION("t=7 collapses to the repetition code, dimension 1") {
        const Gf2Poly g = bch_generator(f, 7);
        CHECK(bch_dimension(f, g) == 1);
    }
    SECTION("2t+1 beyond the block length is rejected") {
        CHECK_THROWS_AS(bch_generator(f, 8), std::invalid_argument);
    }
}

TEST_CASE("codebook enumeration: m=4, t=3 has 32 words at distance 7") {
    const GaloisField f(4);
    const Gf2Poly g = bch_generator(f, 3);
    const auto book = enumerate_codebook(f, g);
    REQUIRE(book.size() == 32);

    // All-zero word present, list lexicographically sorted and duplicate-free.
    CHECK(book.front().popcount() == 0);
    CHECK(std::is_sorted(book.begin(), book.end()));
    CHECK(std::adjacent_find(book.begin(), book.end()) == book.end());

    // Exhaustive pairwise minimum distance is exactly the designed 7.
    std::size_t min_d = 15;
    for (std::size_t i = 0; i < book.size(); ++i)
        for (std::size_t j = i + 1; j < book.size(); ++j)
            min_d = std::min(min_d, hamming_distance(book[i], book[j]));
    CHECK(min_d == 7);
}

TEST_CASE("codebooks are linear: closed under XOR") {
    const GaloisField f(4);
    for (unsigned t : {1u, 2u, 3u}) {
        const auto book = enumerate_codebook(f, bch_generator(f, t));
        if (book.size() > 64) continue; // keep the exhaustive check cheap
        for (const auto& a : book)
            for (const auto& b : book) {
                BitVec x(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) x.set(i, a.get(i) != b.get(i));
                CHECK(std::binary_search(book.begin(), book.end(), x));
            }
    }
}

TEST_CASE("designed distance holds for every m=4 code with positive dimension") {
    const GaloisField f(4);
    for (unsigned t = 1; t <= 3; ++t) {
        const auto book = enumerate_codebook(f, bch_generator(f, t));
        std::size_t min_d = f.order();
        for (std::size_t i = 0; i < book.size(); ++i)
            for (std::size_t j = i + 1; j < book.size(); ++j)
                min_d = std::min(min_d, hamming_distance(book[i], book[j]));
        CHECK(min_d >= 2 * t + 1);
    }
}

TEST_CASE("enumeration cap") {
    const GaloisField f6(6);
    CHECK_THROWS_AS(enumerate_codebook(f6, bch_generator(f6, 1)), UnsupportedSizeError);
}
