#pragma once

// Small builders shared by the test suites.

#include <string>
#include <vector>

#include "ecoc/dataset.hpp"

namespace ecoc::testing {

// All-numeric dataset with anonymous feature names and classes "c0".."c{k-1}".
inline Dataset make_numeric_dataset(std::vector<std::vector<double>> rows,
                                    std::vector<std::size_t> labels, std::size_t k) {
    Dataset d;
    for (std::size_t f = 0; f < rows.front().size(); ++f) {
        FeatureSpec fs;
        fs.name = "f" + std::to_string(f);
        fs.kind = FeatureKind::Numeric;
        d.schema.features.push_back(fs);
    }
    d.schema.class_name = "class";
    for (std::size_t c = 0; c < k; ++c) d.schema.class_names.push_back("c" + std::to_string(c));
    d.schema.class_column = d.schema.features.size();
    d.rows = std::move(rows);
    d.labels = std::move(labels);
    return d;
}

} // namespace ecoc::testing
