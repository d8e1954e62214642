#pragma once

// Packed bit-vectors. Codewords and code-matrix columns are stored as
// 64-bit words so Hamming distance reduces to XOR + popcount, which is
// what the code-design search loops spend their time on.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecoc/errors.hpp"

namespace ecoc {

class BitVec {
  public:
    BitVec() = default;

    explicit BitVec(std::size_t n_bits, bool fill = false)
        : n_(n_bits), words_((n_bits + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
        trim();
    }

    static BitVec from_string(const std::string& s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                v.set(i, true);
            else if (s[i] != '0')
                throw ParseError("bit string contains '" + std::string(1, s[i]) + "'");
        }
        return v;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool b) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (b)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    BitVec complement() const {
        BitVec r(*this);
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    // Lexicographic on the bit sequence b0, b1, ...
    friend bool operator<(const BitVec& a, const BitVec& b) {
        const std::size_t n = a.n_ < b.n_ ? a.n_ : b.n_;
        for (std::size_t i = 0; i < n; ++i) {
            const bool x = a.get(i), y = b.get(i);
            if (x != y) return y;
        }
        return a.n_ < b.n_;
    }

    friend std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
        if (a.n_ != b.n_)
            throw std::invalid_argument("hamming_distance: lengths differ (" +
                                        std::to_string(a.n_) + " vs " + std::to_string(b.n_) + ")");
        std::size_t d = 0;
        for (std::size_t w = 0; w < a.words_.size(); ++w)
            d += static_cast<std::size_t>(std::popcount(a.words_[w] ^ b.words_[w]));
        return d;
    }

  private:
    void trim() {
        if (n_ & 63) words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace ecoc
