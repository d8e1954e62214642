#pragma once

// Small feed-forward network: one hidden layer, logistic sigmoid on hidden
// and output units, trained by per-example gradient descent on squared error
// with a fixed learning rate and no momentum. A validation slice is split
// off up front; training returns the weight snapshot from the epoch with the
// best validation MSE, stopping once `patience` epochs pass without
// improvement. Everything (init, shuffling, the split) is driven by
// MlpOptions::seed, so runs reproduce bit-identically.

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ecoc/dataset.hpp"
#include "ecoc/errors.hpp"
#include "ecoc/rng.hpp"

namespace ecoc {

struct MlpOptions {
    std::size_t hidden_units = 8;
    double learning_rate = 0.25;
    std::size_t max_epochs = 500;
    double validation_fraction = 0.2;
    std::size_t patience = 25;
    std::uint64_t seed = 0;
};

struct MlpModel {
    std::size_t n_inputs = 0, n_hidden = 0, n_outputs = 0;
    // Row-major: w1[h * n_inputs + i], w2[o * n_hidden + h].
    std::vector<double> w1, b1, w2, b2;

    std::size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + b2.size(); }

    std::vector<double> flatten_parameters() const {
        std::vector<double> p;
        p.reserve(parameter_count());
        for (const auto* v : {&w1, &b1, &w2, &b2}) p.insert(p.end(), v->begin(), v->end());
        return p;
    }

    void set_parameters(const std::vector<double>& p) {
        if (p.size() != parameter_count())
            throw std::invalid_argument("MlpModel: parameter vector size mismatch");
        std::size_t at = 0;
        for (auto* v : {&w1, &b1, &w2, &b2})
            for (auto& x : *v) x = p[at++];
    }

    friend bool operator==(const MlpModel& a, const MlpModel& b) {
        return a.n_inputs == b.n_inputs && a.n_hidden == b.n_hidden &&
               a.n_outputs == b.n_outputs && a.w1 == b.w1 && a.b1 == b.b1 && a.w2 == b.w2 &&
               a.b2 == b.b2;
    }
};

namespace detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct Activations {
    std::vector<double> hidden, output;
};

inline Activations mlp_forward(const MlpModel& m, const std::vector<double>& x) {
    Activations a;
    a.hidden.resize(m.n_hidden);
    for (std::size_t h = 0; h < m.n_hidden; ++h) {
        double s = m.b1[h];
        for (std::size_t i = 0; i < m.n_inputs; ++i) s += m.w1[h * m.n_inputs + i] * x[i];
        a.hidden[h] = sigmoid(s);
    }
    a.output.resize(m.n_outputs);
    for (std::size_t o = 0; o < m.n_outputs; ++o) {
        double s = m.b2[o];
        for (std::size_t h = 0; h < m.n_hidden; ++h) s += m.w2[o * m.n_hidden + h] * a.hidden[h];
        a.output[o] = sigmoid(s);
    }
    return a;
}

} // namespace detail

inline std::vector<double> mlp_outputs(const MlpModel& m, const std::vector<double>& x) {
    if (x.size() != m.n_inputs)
        throw std::invalid_argument("mlp_outputs: expected " + std::to_string(m.n_inputs) +
                                    " inputs, got " + std::to_string(x.size()));
    return detail::mlp_forward(m, x).output;
}

// Per-example squared error: 1/2 sum_o (out_o - target_o)^2.
inline double mlp_loss(const MlpModel& m, const std::vector<double>& x,
                       const std::vector<double>& target) {
    const auto out = mlp_outputs(m, x);
    double e = 0;
    for (std::size_t o = 0; o < out.size(); ++o)
        e += 0.5 * (out[o] - target[o]) * (out[o] - target[o]);
    return e;
}

// Gradient of mlp_loss with respect to the flattened parameters
// (w1, b1, w2, b2 order, matching flatten_parameters).
inline std::vector<double> mlp_gradient(const MlpModel& m, const std::vector<double>& x,
                                        const std::vector<double>& target) {
    const auto a = detail::mlp_forward(m, x);
    std::vector<double> delta_out(m.n_outputs), delta_hid(m.n_hidden, 0);
    for (std::size_t o = 0; o < m.n_outputs; ++o)
        delta_out[o] = (a.output[o] - target[o]) * a.output[o] * (1 - a.output[o]);
    for (std::size_t h = 0; h < m.n_hidden; ++h) {
        double s = 0;
        for (std::size_t o = 0; o < m.n_outputs; ++o) s += delta_out[o] * m.w2[o * m.n_hidden + h];
        delta_hid[h] = s * a.hidden[h] * (1 - a.hidden[h]);
    }

    std::vector<double> g(m.parameter_count(), 0);
    std::size_t at = 0;
    for (std::size_t h = 0; h < m.n_hidden; ++h)
        for (std::size_t i = 0; i < m.n_inputs; ++i) g[at++] = delta_hid[h] * x[i];
    for (std::size_t h = 0; h < m.n_hidden; ++h) g[at++] = delta_hid[h];
    for (std::size_t o = 0; o < m.n_outputs; ++o)
        for (std::size_t h = 0; h < m.n_hidden; ++h) g[at++] = delta_out[o] * a.hidden[h];
    for (std::size_t o = 0; o < m.n_outputs; ++o) g[at++] = delta_out[o];
    return g;
}

inline MlpModel make_mlp(std::size_t n_inputs, std::size_t n_hidden, std::size_t n_outputs,
                         std::uint64_t seed) {
    if (n_hidden < 1 || n_outputs < 1 || n_inputs < 1)
        throw std::invalid_argument("make_mlp: layer sizes must be >= 1");
    MlpModel m;
    m.n_inputs = n_inputs;
    m.n_hidden = n_hidden;
    m.n_outputs = n_outputs;
    m.w1.resize(n_hidden * n_inputs);
    m.b1.resize(n_hidden);
    m.w2.resize(n_outputs * n_hidden);
    m.b2.resize(n_outputs);
    Rng rng(seed);
    for (auto* v : {&m.w1, &m.b1, &m.w2, &m.b2})
        for (auto& w : *v) w = rng.real(-0.5, 0.5);
    return m;
}

inline double mean_squared_error(const MlpModel& m, const std::vector<std::vector<double>>& xs,
                                 const std::vector<std::vector<double>>& ts,
                                 const std::vector<std::size_t>& idx) {
    if (idx.empty()) return 0;
    double e = 0;
    for (std::size_t i : idx) {
        const auto out = detail::mlp_forward(m, xs[i]).output;
        for (std::size_t o = 0; o < out.size(); ++o)
            e += (out[o] - ts[i][o]) * (out[o] - ts[i][o]);
    }
    return e / (static_cast<double>(idx.size()) * static_cast<double>(m.n_outputs));
}

inline MlpModel train_mlp(const Dataset& data, const std::vector<std::vector<double>>& targets,
                          const MlpOptions& opts) {
    if (data.size() == 0) throw std::invalid_argument("train_mlp: empty dataset");
    if (targets.size() != data.size())
        throw std::invalid_argument("train_mlp: targets size != dataset size");
    if (has_categorical(data.schema))
        throw std::invalid_argument(
            "train_mlp: categorical features must be one-hot encoded first (encode_numeric)");
    if (!(opts.validation_fraction > 0 && opts.validation_fraction < 1))
        throw std::invalid_argument("train_mlp: validation_fraction must be in (0,1)");
    if (opts.learning_rate < 0)
        throw std::invalid_argument("train_mlp: learning rate must be >= 0");
    const std::size_t n_out = targets.front().size();
    for (const auto& t : targets)
        if (t.size() != n_out) throw std::invalid_argument("train_mlp: ragged targets");

    MlpModel model = make_mlp(data.schema.arity(), opts.hidden_units, n_out,
                              derive_seed(opts.seed, 0));

    // Validation slice. For a single-example dataset it doubles as training.
    Rng split_rng(derive_seed(opts.seed, 1));
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    split_rng.shuffle(order);
    std::size_t n_val = static_cast<std::size_t>(
        std::llround(opts.validation_fraction * static_cast<double>(data.size())));
    std::vector<std::size_t> val_idx, train_idx;
    if (data.size() < 2) {
        val_idx = train_idx = order;
    } else {
        n_val = std::min(std::max<std::size_t>(n_val, 1), data.size() - 1);
        val_idx.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
        train_idx.assign(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
    }

    Rng epoch_rng(derive_seed(opts.seed, 2));
    double best_val = mean_squared_error(model, data.rows, targets, val_idx);
    MlpModel best = model;
    std::size_t since_best = 0;

    std::vector<double> grad;
    for (std::size_t epoch = 1; epoch <= opts.max_epochs; ++epoch) {
        epoch_rng.shuffle(train_idx);
        for (std::size_t i : train_idx) {
            grad = mlp_gradient(model, data.rows[i], targets[i]);
            std::size_t at = 0;
            for (auto* v : {&model.w1, &model.b1, &model.w2, &model.b2})
                for (auto& w : *v) w -= opts.learning_rate * grad[at++];
        }
        const double val = mean_squared_error(model, data.rows, targets, val_idx);
        if (!std::isfinite(val))
            throw TrainingDivergedError("train_mlp: non-finite validation loss at epoch " +
                                        std::to_string(epoch));
        if (val < best_val) {
            best_val = val;
            best = model;
            since_best = 0;
        } else if (++since_best > opts.patience) {
            break;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Serialization: shape header + row-major weights at 17 significant digits,
// which round-trips IEEE doubles exactly.

inline void save_mlp(const MlpModel& m, std::ostream& os) {
    os << "mlp " << m.n_inputs << ' ' << m.n_hidden << ' ' << m.n_outputs << '\n';
    auto dump = [&](const char* name, const std::vector<double>& v) {
        os << name;
        char buf[40];
        for (double x : v) {
            std::snprintf(buf, sizeof buf, " %.17g", x);
            os << buf;
        }
        os << '\n';
    };
    dump("w1", m.w1);
    dump("b1", m.b1);
    dump("w2", m.w2);
    dump("b2", m.b2);
}

inline MlpModel load_mlp(std::istream& is) {
    std::string tag;
    MlpModel m;
    if (!(is >> tag >> m.n_inputs >> m.n_hidden >> m.n_outputs) || tag != "mlp")
        throw ParseError("mlp: missing shape header");
    auto slurp = [&](const char* name, std::vector<double>& v, std::size_t n) {
        std::string t;
        if (!(is >> t) || t != name) throw ParseError("mlp: expected '" + std::string(name) + "'");
        v.resize(n);
        for (auto& x : v)
            if (!(is >> x)) throw ParseError("mlp: truncated weights");
    };
    slurp("w1", m.w1, m.n_hidden * m.n_inputs);
    slurp("b1", m.b1, m.n_hidden);
    slurp("w2", m.w2, m.n_outputs * m.n_hidden);
    slurp("b2", m.b2, m.n_outputs);
    return m;
}

} // namespace ecoc
