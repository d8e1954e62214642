#pragma once

// Output code matrices: one codeword row per class, one learned binary
// function per column. Quality is measured by row separation (minimum
// pairwise Hamming distance between codewords, which bounds how many bit
// errors nearest-codeword decoding can absorb) and column separation
// (columns should be far from each other and from each other's complement,
// since a learner treats a target and its complement symmetrically).

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ecoc/bits.hpp"
#include "ecoc/errors.hpp"

namespace ecoc {

class CodeMatrix {
  public:
    CodeMatrix(std::vector<BitVec> rows, std::vector<std::string> class_names = {})
        : rows_(std::move(rows)), class_names_(std::move(class_names)) {
        if (rows_.size() < 2)
            throw std::invalid_argument("CodeMatrix: need at least 2 rows, got " +
                                        std::to_string(rows_.size()));
        n_ = rows_.front().size();
        if (n_ < 1) throw std::invalid_argument("CodeMatrix: need at least 1 column");
        for (const auto& r : rows_)
            if (r.size() != n_)
                throw std::invalid_argument("CodeMatrix: ragged rows");
        if (!class_names_.empty() && class_names_.size() != rows_.size())
            throw std::invalid_argument("CodeMatrix: class_names size != row count");
    }

    std::size_t k() const { return rows_.size(); }
    std::size_t n() const { return n_; }

    const BitVec& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<BitVec>& rows() const { return rows_; }

    bool bit(std::size_t i, std::size_t j) const { return rows_[i].get(j); }

    BitVec column(std::size_t j) const {
        BitVec c(k());
        for (std::size_t i = 0; i < k(); ++i) c.set(i, rows_[i].get(j));
        return c;
    }

    const std::vector<std::string>& class_names() const { return class_names_; }
    void set_class_names(std::vector<std::string> names) {
        if (!names.empty() && names.size() != k())
            throw std::invalid_argument("CodeMatrix: class_names size != row count");
        class_names_ = std::move(names);
    }

    friend bool operator==(const CodeMatrix& a, const CodeMatrix& b) {
        return a.rows_ == b.rows_ && a.class_names_ == b.class_names_;
    }

  private:
    std::vector<BitVec> rows_;
    std::vector<std::string> class_names_;
    std::size_t n_ = 0;
};

struct CodeQualityReport {
    std::size_t min_row_distance = 0;
    std::size_t correction_capacity = 0; // floor((d-1)/2)
    // min over column pairs of min(H(ci,cj), k - H(ci,cj)): distance to the
    // other column or to its complement, whichever is closer.
    std::size_t min_column_separation = 0;
    std::vector<std::pair<std::size_t, std::size_t>> duplicate_rows;
    std::vector<std::size_t> constant_columns;
    std::vector<std::pair<std::size_t, std::size_t>> complementary_or_duplicate_columns;
};

inline CodeQualityReport quality_report(const CodeMatrix& m) {
    CodeQualityReport rep;
    const std::size_t k = m.k(), n = m.n();

    rep.min_row_distance = n + 1;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const std::size_t d = hamming_distance(m.row(i), m.row(j));
            rep.min_row_distance = std::min(rep.min_row_distance, d);
            if (d == 0) rep.duplicate_rows.emplace_back(i, j);
        }
    if (rep.min_row_distance > n) rep.min_row_distance = 0; // k < 2 cannot happen
    rep.correction_capacity =
        rep.min_row_distance == 0 ? 0 : (rep.min_row_distance - 1) / 2;

    std::vector<BitVec> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = m.column(j);

    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t ones = cols[j].popcount();
        if (ones == 0 || ones == k) rep.constant_columns.push_back(j);
    }

    rep.min_column_separation = k;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t h = hamming_distance(cols[i], cols[j]);
            const std::size_t sep = std::min(h, k - h);
            rep.min_column_separation = std::min(rep.min_column_separation, sep);
            if (h == 0 || h == k) rep.complementary_or_duplicate_columns.emplace_back(i, j);
        }
    if (n < 2) rep.min_column_separation = 0;
    return rep;
}

// Identity-pattern code: row i has a single 1 in column i. Minimum row
// distance is 2 regardless of k, so the code corrects no errors.
inline CodeMatrix one_per_class(std::size_t k, std::vector<std::string> class_names = {}) {
    if (k < 2)
        throw std::invalid_argument("one_per_class: need k >= 2, got " + std::to_string(k));
    std::vector<BitVec> rows(k, BitVec(k));
    for (std::size_t i = 0; i < k; ++i) rows[i].set(i, true);
    return CodeMatrix(std::move(rows), std::move(class_names));
}

inline bool is_one_per_class(const CodeMatrix& m) {
    if (m.k() != m.n()) return false;
    for (std::size_t i = 0; i < m.k(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j)
            if (m.bit(i, j) != (i == j)) return false;
    return true;
}

struct CodeViolation {
    enum Kind { DuplicateRow, ConstantColumn, DuplicateColumn, ComplementaryColumns } kind;
    std::size_t a = 0, b = 0; // indices involved; b unused for ConstantColumn
    std::string describe() const {
        std::ostringstream os;
        switch (kind) {
            case DuplicateRow: os << "rows " << a << " and " << b << " are identical"; break;
            case ConstantColumn: os << "column " << a << " is constant"; break;
            case DuplicateColumn: os << "columns " << a << " and " << b << " are identical"; break;
            case ComplementaryColumns:
                os << "columns " << a << " and " << b << " are complementary";
                break;
        }
        return os.str();
    }
};

// Structural check of the row/column separation requirements. Never throws:
// hand-written "meaningful" codes legitimately violate these and must still
// load; designed codes are expected to come back clean.
inline std::vector<CodeViolation> validate(const CodeMatrix& m) {
    std::vector<CodeViolation> out;
    const std::size_t k = m.k(), n = m.n();

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (m.row(i) == m.row(j))
                out.push_back({CodeViolation::DuplicateRow, i, j});

    std::vector<BitVec> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = m.column(j);

    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t ones = cols[j].popcount();
        if (ones == 0 || ones == k) out.push_back({CodeViolation::ConstantColumn, j, 0});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t h = hamming_distance(cols[i], cols[j]);
            if (h == 0)
                out.push_back({CodeViolation::DuplicateColumn, i, j});
            else if (h == k)
                out.push_back({CodeViolation::ComplementaryColumns, i, j});
        }
    return out;
}

// Text format: first line "k n", then k lines of n characters from {0,1}.
// '#' lines are comments. Optional trailing "label <i> <name>" lines attach
// class names. save/load round-trips bit-exactly.
inline void save_code_matrix(const CodeMatrix& m, std::ostream& os) {
    os << m.k() << ' ' << m.n() << '\n';
    for (std::size_t i = 0; i < m.k(); ++i) os << m.row(i).to_string() << '\n';
    if (!m.class_names().empty())
        for (std::size_t i = 0; i < m.k(); ++i)
            os << "label " << i << ' ' << m.class_names()[i] << '\n';
}

inline void save_code_matrix(const CodeMatrix& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "' for writing");
    save_code_matrix(m, f);
}

inline CodeMatrix load_code_matrix(std::istream& is) {
    std::string line;
    auto next_content_line = [&](std::string& out) {
        while (std::getline(is, out)) {
            while (!out.empty() && (out.back() == '\r' || out.back() == '\n')) out.pop_back();
            if (out.empty() || out[0] == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_content_line(line)) throw ParseError("code matrix: empty file");
    std::istringstream head(line);
    std::size_t k = 0, n = 0;
    if (!(head >> k >> n)) throw ParseError("code matrix: bad header line '" + line + "'");

    std::vector<BitVec> rows;
    rows.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!next_content_line(line))
            throw ParseError("code matrix: expected " + std::to_string(k) + " rows, got " +
                             std::to_string(i));
        if (line.size() != n)
            throw ParseError("code matrix: row " + std::to_string(i) + " has " +
                             std::to_string(line.size()) + " bits, expected " + std::to_string(n));
        rows.push_back(BitVec::from_string(line));
    }

    std::vector<std::string> names;
    while (next_content_line(line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "label")
            throw ParseError("code matrix: unexpected trailing line '" + line + "'");
        std::size_t idx = 0;
        std::string name;
        if (!(ls >> idx >> name) || idx >= k)
            throw ParseError("code matrix: bad label line '" + line + "'");
        if (names.empty()) names.resize(k);
        names[idx] = name;
    }
    return CodeMatrix(std::move(rows), std::move(names));
}

inline CodeMatrix load_code_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open code matrix file '" + path + "'");
    return load_code_matrix(f);
}

} // namespace ecoc
