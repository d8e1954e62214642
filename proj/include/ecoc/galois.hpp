#pragma once

// GF(2^m) arithmetic and BCH generator construction, m in {3..6}. The field
// is represented through log/antilog tables built from a fixed primitive
// polynomial per m, so codebooks are bit-reproducible:
//
//   m=3: x^3+x+1   m=4: x^4+x+1   m=5: x^5+x^2+1   m=6: x^6+x+1
//
// A BCH generator for designed correction t is the lcm of the minimal
// polynomials of alpha^1..alpha^2t; every codeword is a GF(2) multiple of
// the generator. Decoding is not implemented: ECOC decodes by nearest
// codeword, never algebraically.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ecoc/bits.hpp"
#include "ecoc/errors.hpp"

namespace ecoc {

// Polynomial over GF(2), bit i = coefficient of x^i. Everything this module
// needs stays below degree 63, so one word suffices.
struct Gf2Poly {
    std::uint64_t bits = 0;

    int degree() const {
        if (bits == 0) return -1;
        return 63 - std::countl_zero(bits);
    }

    friend bool operator==(const Gf2Poly& a, const Gf2Poly& b) { return a.bits == b.bits; }

    // Carry-less product; operands must keep the result below degree 64.
    friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
        if (a.bits != 0 && b.bits != 0 && a.degree() + b.degree() > 63)
            throw UnsupportedSizeError("Gf2Poly: product exceeds degree 63");
        std::uint64_t r = 0;
        std::uint64_t x = a.bits;
        for (int i = 0; x != 0; ++i, x >>= 1)
            if (x & 1u) r ^= b.bits << i;
        return {r};
    }

    std::string to_string() const {
        if (bits == 0) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (!((bits >> i) & 1u)) continue;
            if (!s.empty()) s += " + ";
            if (i == 0)
                s += "1";
            else if (i == 1)
                s += "x";
            else
                s += "x^" + std::to_string(i);
        }
        return s;
    }
};

class GaloisField {
  public:
    explicit GaloisField(int m) : m_(m) {
        static constexpr std::uint64_t kPrimitive[] = {
            0,          0,    0,
            0b1011,     // m=3
            0b10011,    // m=4
            0b100101,   // m=5
            0b1000011,  // m=6
        };
        if (m < 3 || m > 6)
            throw UnsupportedSizeError("GaloisField: m must be in {3..6}, got " +
                                       std::to_string(m));
        primitive_poly_ = {kPrimitive[m]};
        size_ = (1u << m) - 1; // nonzero elements

        antilog_.assign(size_, 0);
        log_.assign(size_ + 1, 0);
        std::uint32_t x = 1;
        for (std::uint32_t p = 0; p < size_; ++p) {
            antilog_[p] = x;
            log_[x] = p;
            x <<= 1;
            if (x >> m) x ^= static_cast<std::uint32_t>(primitive_poly_.bits);
        }
        if (x != 1)
            throw std::logic_error("GaloisField: polynomial for m=" + std::to_string(m) +
                                   " is not primitive");
    }

    int m() const { return m_; }
    std::uint32_t order() const { return size_; } // multiplicative group order 2^m - 1
    const Gf2Poly& primitive_poly() const { return primitive_poly_; }

    // alpha^p for any integer power p.
    std::uint32_t alpha_pow(std::uint64_t p) const { return antilog_[p % size_]; }

    std::uint32_t log(std::uint32_t x) const {
        if (x == 0) throw std::invalid_argument("GaloisField::log(0)");
        return log_[x];
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return antilog_[(log_[a] + log_[b]) % size_];
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }

    std::uint32_t inverse(std::uint32_t a) const {
        if (a == 0) throw std::invalid_argument("GaloisField::inverse(0)");
        return antilog_[(size_ - log_[a]) % size_];
    }

    // Evaluate a GF(2) polynomial at a field element.
    std::uint32_t eval(const Gf2Poly& p, std::uint32_t x) const {
        std::uint32_t acc = 0;
        for (int i = p.degree(); i >= 0; --i) {
            acc = mul(acc, x);
            if ((p.bits >> i) & 1u) acc ^= 1u;
        }
        return acc;
    }

  private:
    int m_;
    std::uint32_t size_ = 0;
    Gf2Poly primitive_poly_;
    std::vector<std::uint32_t> antilog_;
    std::vector<std::uint32_t> log_;
};

// Minimal polynomial of alpha^e over GF(2): the monic product of (x - beta)
// over the conjugacy class { alpha^(e*2^i) }. Conjugates always multiply out
// to 0/1 coefficients; anything else signals a table bug, so it is checked.
inline Gf2Poly minimal_polynomial(const GaloisField& f, std::uint32_t e) {
    const std::uint32_t n = f.order();
    if (e < 1 || e > n - 1)
        throw std::invalid_argument("minimal_polynomial: exponent out of range");

    std::vector<std::uint32_t> conjugates;
    std::uint32_t c = e % n;
    do {
        conjugates.push_back(c);
        c = (c * 2) % n;
    } while (c != e % n);

    // Coefficients live in the field while multiplying the linear factors.
    std::vector<std::uint32_t> poly{1};
    for (std::uint32_t exp : conjugates) {
        const std::uint32_t beta = f.alpha_pow(exp);
        std::vector<std::uint32_t> next(poly.size() + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] ^= poly[i];            // x * poly
            next[i] ^= f.mul(beta, poly[i]);   // beta * poly (same as -beta in GF(2^m))
        }
        poly = std::move(next);
    }

    Gf2Poly out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] > 1)
            throw std::logic_error("minimal_polynomial: non-binary coefficient");
        if (poly[i]) out.bits |= std::uint64_t{1} << i;
    }
    return out;
}

// Generator polynomial for designed error correction t: lcm of the minimal
// polynomials of alpha^1..alpha^2t. Distinct conjugacy classes give coprime
// irreducible factors, so the lcm is their plain product.
inline Gf2Poly bch_generator(const GaloisField& f, unsigned t) {
    const std::uint32_t n = f.order();
    if (t < 1 || 2 * t + 1 > n)
        throw std::invalid_argument("bch_generator: need 1 <= 2t+1 <= " + std::to_string(n));

    std::set<std::uint32_t> seen_class_reps;
    Gf2Poly g{1};
    for (std::uint32_t e = 1; e <= 2 * t; ++e) {
        // Canonical class representative: smallest exponent in the orbit.
        std::uint32_t rep = e % n, c = (e * 2) % n;
        while (c != e % n) {
            rep = std::min(rep, c);
            c = (c * 2) % n;
        }
        if (!seen_class_reps.insert(rep).second) continue;
        g = g * minimal_polynomial(f, e);
    }
    const int dim = static_cast<int>(n) - g.degree();
    if (dim <= 0)
        throw InfeasibleDesignError("bch_generator: dimension " + std::to_string(dim) +
                                    " for m=" + std::to_string(f.m()) +
                                    ", t=" + std::to_string(t));
    return g;
}

inline int bch_dimension(const GaloisField& f, const Gf2Poly& g) {
    return static_cast<int>(f.order()) - g.degree();
}

// All 2^dim codewords (every message polynomial times g), each as a bit
// vector of length 2^m - 1, sorted lexicographically. The cap keeps the
// codebook exhaustively checkable; ECOC never needs more rows than this.
inline std::vector<BitVec> enumerate_codebook(const GaloisField& f, const Gf2Poly& g) {
    const int dim = bch_dimension(f, g);
    if (dim <= 0) throw InfeasibleDesignError("enumerate_codebook: empty code");
    if (dim > 16)
        throw UnsupportedSizeError("enumerate_codebook: dimension " + std::to_string(dim) +
                                   " exceeds the enumeration cap of 16");

    const std::size_t n = f.order();
    std::vector<BitVec> book;
    book.reserve(std::size_t{1} << dim);
    for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << dim); ++msg) {
        const Gf2Poly w = Gf2Poly{msg} * g;
        BitVec v(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((w.bits >> i) & 1u) v.set(i, true);
        book.push_back(std::move(v));
    }
    std::sort(book.begin(), book.end());
    return book;
}

} // namespace ecoc
