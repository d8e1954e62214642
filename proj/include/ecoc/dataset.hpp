#pragma once

// Dataset ingestion. A dataset is a headerless CSV plus a line-oriented
// schema sidecar declaring every column in order:
//
//   feature <name> numeric
//   feature <name> categorical v1,v2,...
//   class <name> c1,c2,...
//
// Missing values ('?' or an empty cell) are imputed with the column mean
// (numeric) or the most frequent value (categorical). The imputation values
// — and later the standardization statistics — are recorded in the schema so
// they can be reapplied verbatim to test data.
//
// Categorical cells are stored as vocabulary indices in a double; the schema
// says how to read each column.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ecoc/errors.hpp"
#include "ecoc/rng.hpp"

namespace ecoc {

enum class FeatureKind { Numeric, Categorical };

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
    std::vector<std::string> vocabulary; // categorical only

    // Filled when training data is loaded; reused for test data.
    std::optional<double> impute_value;        // numeric: column mean
    std::optional<std::size_t> impute_category; // categorical: modal value

    // Filled by fit_encoding for numeric features.
    std::optional<double> center, scale;
};

struct Schema {
    std::vector<FeatureSpec> features;
    std::string class_name;
    std::vector<std::string> class_names;
    std::size_t class_column = 0; // position of the class among the CSV columns

    std::size_t arity() const { return features.size(); }
    std::size_t k() const { return class_names.size(); }

    std::size_t class_index(const std::string& name) const {
        for (std::size_t i = 0; i < class_names.size(); ++i)
            if (class_names[i] == name) return i;
        throw ParseError("unknown class label '" + name + "'");
    }
};

struct Dataset {
    Schema schema;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> labels;

    std::size_t size() const { return rows.size(); }
    std::size_t k() const { return schema.k(); }

    Dataset subset(const std::vector<std::size_t>& indices) const {
        Dataset out;
        out.schema = schema;
        out.rows.reserve(indices.size());
        out.labels.reserve(indices.size());
        for (std::size_t i : indices) {
            out.rows.push_back(rows.at(i));
            out.labels.push_back(labels.at(i));
        }
        return out;
    }

    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.rows == b.rows && a.labels == b.labels;
    }
};

namespace detail {

inline std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

inline double parse_double(const std::string& s, std::size_t row, std::size_t col) {
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last)
        throw ParseError("row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1) +
                         ": '" + s + "' is not numeric");
    return v;
}

} // namespace detail

inline Schema load_schema(std::istream& is) {
    Schema s;
    std::string line;
    std::size_t column = 0;
    bool have_class = false;
    while (std::getline(is, line)) {
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag, name, rest;
        ls >> tag >> name;
        if (tag == "feature") {
            std::string kind;
            ls >> kind;
            FeatureSpec f;
            f.name = name;
            if (kind == "numeric") {
                f.kind = FeatureKind::Numeric;
            } else if (kind == "categorical") {
                f.kind = FeatureKind::Categorical;
                std::getline(ls, rest);
                for (auto& v : detail::split_csv(detail::trim(rest)))
                    if (!v.empty()) f.vocabulary.push_back(v);
                if (f.vocabulary.empty())
                    throw ParseError("schema: categorical feature '" + name + "' has no values");
            } else {
                throw ParseError("schema: unknown feature kind '" + kind + "'");
            }
            s.features.push_back(std::move(f));
            ++column;
        } else if (tag == "class") {
            if (have_class) throw ParseError("schema: multiple class lines");
            have_class = true;
            s.class_name = name;
            s.class_column = column;
            std::getline(ls, rest);
            for (auto& v : detail::split_csv(detail::trim(rest)))
                if (!v.empty()) s.class_names.push_back(v);
            ++column;
        } else {
            throw ParseError("schema: unexpected line '" + line + "'");
        }
    }
    if (!have_class) throw ParseError("schema: missing class line");
    if (s.class_names.size() < 2) throw ParseError("schema: need at least 2 classes");
    return s;
}

inline Schema load_schema(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open schema file '" + path + "'");
    return load_schema(f);
}

// Parses the CSV against the schema. Imputation statistics already present
// in the schema are reused (test data); missing ones are computed from this
// file and recorded in the returned dataset's schema (training data).
inline Dataset load_dataset(std::istream& is, Schema schema) {
    const std::size_t n_cols = schema.features.size() + 1;
    constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

    Dataset d;
    std::vector<std::vector<std::size_t>> missing_at(schema.features.size());
    std::string line;
    std::size_t row_no = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv(line);
        if (cells.size() != n_cols)
            throw ParseError("row " + std::to_string(row_no + 1) + ": got " +
                             std::to_string(cells.size()) + " columns, schema declares " +
                             std::to_string(n_cols));
        std::vector<double> row(schema.features.size(), 0.0);
        std::size_t fi = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string& cell = cells[c];
            if (c == schema.class_column) {
                d.labels.push_back(schema.class_index(cell));
                continue;
            }
            const FeatureSpec& f = schema.features[fi];
            if (cell == "?" || cell.empty()) {
                missing_at[fi].push_back(d.rows.size());
                row[fi] = kMissing;
            } else if (f.kind == FeatureKind::Numeric) {
                row[fi] = detail::parse_double(cell, row_no, c);
            } else {
                const auto it = std::find(f.vocabulary.begin(), f.vocabulary.end(), cell);
                if (it == f.vocabulary.end())
                    throw ParseError("row " + std::to_string(row_no + 1) + ", column " +
                                     std::to_string(c + 1) + ": '" + cell +
                                     "' not in the vocabulary of feature '" + f.name + "'");
                row[fi] = static_cast<double>(it - f.vocabulary.begin());
            }
            ++fi;
        }
        d.rows.push_back(std::move(row));
        ++row_no;
    }

    for (std::size_t fi = 0; fi < schema.features.size(); ++fi) {
        FeatureSpec& f = schema.features[fi];
        if (f.kind == FeatureKind::Numeric) {
            if (!f.impute_value) {
                double sum = 0;
                std::size_t cnt = 0;
                for (std::size_t r = 0; r < d.rows.size(); ++r)
                    if (!std::isnan(d.rows[r][fi])) {
                        sum += d.rows[r][fi];
                        ++cnt;
                    }
                f.impute_value = cnt ? sum / static_cast<double>(cnt) : 0.0;
            }
            for (std::size_t r : missing_at[fi]) d.rows[r][fi] = *f.impute_value;
        } else {
            if (!f.impute_category) {
                std::vector<std::size_t> counts(f.vocabulary.size(), 0);
                for (std::size_t r = 0; r < d.rows.size(); ++r)
                    if (!std::isnan(d.rows[r][fi]))
                        ++counts[static_cast<std::size_t>(d.rows[r][fi])];
                f.impute_category =
                    std::max_element(counts.begin(), counts.end()) - counts.begin();
            }
            for (std::size_t r : missing_at[fi])
                d.rows[r][fi] = static_cast<double>(*f.impute_category);
        }
    }

    d.schema = std::move(schema);
    return d;
}

inline Dataset load_dataset(const std::string& data_path, const Schema& schema) {
    std::ifstream f(data_path);
    if (!f) throw ParseError("cannot open data file '" + data_path + "'");
    return load_dataset(f, schema);
}

inline Dataset load_dataset(const std::string& data_path, const std::string& schema_path) {
    return load_dataset(data_path, load_schema(schema_path));
}

// Deterministic seeded split into (first, second) with |first| ~ fraction.
// The stratified variant splits each class separately, so class ratios are
// preserved to within one example per class. Row order inside each part
// follows the original dataset.
inline std::pair<Dataset, Dataset> split(const Dataset& d, double fraction, std::uint64_t seed,
                                         bool stratified) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("split: fraction must be in (0,1)");

    Rng rng(seed);
    std::vector<std::size_t> first, second;
    auto take = [&](std::vector<std::size_t> group) {
        rng.shuffle(group);
        const auto want = static_cast<std::size_t>(
            std::llround(fraction * static_cast<double>(group.size())));
        for (std::size_t i = 0; i < group.size(); ++i)
            (i < want ? first : second).push_back(group[i]);
    };

    if (stratified) {
        std::vector<std::vector<std::size_t>> per_class(d.k());
        for (std::size_t i = 0; i < d.size(); ++i) per_class[d.labels[i]].push_back(i);
        for (auto& g : per_class)
            if (!g.empty()) take(std::move(g));
    } else {
        std::vector<std::size_t> all(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) all[i] = i;
        take(std::move(all));
    }
    if (first.empty() || second.empty())
        throw std::invalid_argument("split: a side would be empty");
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    return {d.subset(first), d.subset(second)};
}

// Copies the schema with standardization statistics for numeric features
// computed from `d`. Zero-variance columns keep scale 1 so they center to 0.
inline Schema fit_encoding(const Dataset& d) {
    Schema s = d.schema;
    for (std::size_t fi = 0; fi < s.features.size(); ++fi) {
        FeatureSpec& f = s.features[fi];
        if (f.kind != FeatureKind::Numeric) continue;
        double sum = 0;
        for (const auto& r : d.rows) sum += r[fi];
        const double mean = d.rows.empty() ? 0.0 : sum / static_cast<double>(d.rows.size());
        double ss = 0;
        for (const auto& r : d.rows) ss += (r[fi] - mean) * (r[fi] - mean);
        const double var = d.rows.empty() ? 0.0 : ss / static_cast<double>(d.rows.size());
        f.center = mean;
        f.scale = var > 0 ? std::sqrt(var) : 1.0;
    }
    return s;
}

// One-hot expansion + standardization using statistics already recorded in
// `fitted` (an original-layout schema from fit_encoding). Every output
// feature is numeric: categorical features become one indicator column per
// vocabulary value.
inline Dataset apply_encoding(const Dataset& d, const Schema& fitted) {
    if (fitted.features.size() != d.schema.features.size())
        throw std::invalid_argument("apply_encoding: schema layout mismatch");

    Dataset out;
    out.labels = d.labels;
    out.schema.class_name = fitted.class_name;
    out.schema.class_names = fitted.class_names;

    for (const FeatureSpec& f : fitted.features) {
        if (f.kind == FeatureKind::Numeric) {
            FeatureSpec nf;
            nf.name = f.name;
            nf.kind = FeatureKind::Numeric;
            nf.center = f.center;
            nf.scale = f.scale;
            out.schema.features.push_back(std::move(nf));
        } else {
            for (const std::string& v : f.vocabulary) {
                FeatureSpec nf;
                nf.name = f.name + "=" + v;
                nf.kind = FeatureKind::Numeric;
                out.schema.features.push_back(std::move(nf));
            }
        }
    }
    out.schema.class_column = out.schema.features.size();

    out.rows.reserve(d.rows.size());
    for (const auto& row : d.rows) {
        std::vector<double> enc;
        enc.reserve(out.schema.features.size());
        for (std::size_t fi = 0; fi < fitted.features.size(); ++fi) {
            const FeatureSpec& f = fitted.features[fi];
            if (f.kind == FeatureKind::Numeric) {
                const double c = f.center.value_or(0.0);
                const double s = f.scale.value_or(1.0);
                enc.push_back((row[fi] - c) / s);
            } else {
                const auto hot = static_cast<std::size_t>(row[fi]);
                for (std::size_t v = 0; v < f.vocabulary.size(); ++v)
                    enc.push_back(v == hot ? 1.0 : 0.0);
            }
        }
        out.rows.push_back(std::move(enc));
    }
    return out;
}

inline Dataset encode_numeric(const Dataset& d) { return apply_encoding(d, fit_encoding(d)); }

inline bool has_categorical(const Schema& s) {
    return std::any_of(s.features.begin(), s.features.end(), [](const FeatureSpec& f) {
        return f.kind == FeatureKind::Categorical;
    });
}

} // namespace ecoc
