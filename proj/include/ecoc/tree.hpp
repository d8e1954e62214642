#pragma once

// Decision-tree learner in the C4.5 mold: greedy top-down induction on the
// gain ratio, numeric features split at midpoints between consecutive
// distinct values, categorical features split multiway, and optional
// pessimistic subtree-replacement pruning driven by a one-sided normal upper
// confidence bound on the leaf error rate.
//
// Zero-gain splits are allowed when nothing better exists (parity-style
// targets such as XOR have no first split with positive gain but still reach
// purity one level down), so unpruned trees grow until nodes are pure or
// structurally indivisible.
//
// Leaf probabilities are Laplace-smoothed: (count_i + 1) / (n + #classes).
// Training is fully deterministic: ties in gain ratio go to the lowest
// feature index, then the lowest threshold.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ecoc/dataset.hpp"
#include "ecoc/errors.hpp"
#include "ecoc/stats.hpp"

namespace ecoc {

struct TreeOptions {
    bool pruning_enabled = true;
    double confidence_factor = 0.25;
    std::size_t min_examples_per_leaf = 1;
    std::optional<std::size_t> max_depth;
};

struct TreeNode {
    static constexpr std::size_t kNoChild = static_cast<std::size_t>(-1);

    bool leaf = true;
    std::size_t feature = 0;
    bool categorical = false;
    double threshold = 0; // numeric test: x <= threshold goes to children[0]
    // numeric: {left, right}; categorical: one slot per vocabulary value,
    // kNoChild where no training example had that value.
    std::vector<std::size_t> children;
    std::size_t majority_child = 0; // densest branch; route for absent slots
    std::vector<std::size_t> counts; // per-target-class training counts
    std::size_t total = 0;
};

class Tree {
  public:
    Tree() = default;
    Tree(std::vector<TreeNode> nodes, std::size_t n_targets)
        : nodes_(std::move(nodes)), n_targets_(n_targets) {}

    std::size_t n_targets() const { return n_targets_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }

    const TreeNode& route(const std::vector<double>& x) const {
        std::size_t at = 0;
        while (!nodes_[at].leaf) {
            const TreeNode& nd = nodes_[at];
            std::size_t next;
            if (nd.categorical) {
                const auto v = static_cast<std::size_t>(x[nd.feature]);
                next = v < nd.children.size() ? nd.children[v] : TreeNode::kNoChild;
                if (next == TreeNode::kNoChild) next = nd.majority_child;
            } else {
                next = x[nd.feature] <= nd.threshold ? nd.children[0] : nd.children[1];
            }
            at = next;
        }
        return nodes_[at];
    }

    friend bool operator==(const Tree& a, const Tree& b);

  private:
    std::vector<TreeNode> nodes_;
    std::size_t n_targets_ = 2;
};

inline bool operator==(const Tree& a, const Tree& b) {
    if (a.n_targets_ != b.n_targets_ || a.nodes_.size() != b.nodes_.size()) return false;
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
        const TreeNode &x = a.nodes_[i], &y = b.nodes_[i];
        if (x.leaf != y.leaf || x.feature != y.feature || x.categorical != y.categorical ||
            x.threshold != y.threshold || x.children != y.children ||
            x.majority_child != y.majority_child || x.counts != y.counts || x.total != y.total)
            return false;
    }
    return true;
}

// Laplace-smoothed class distribution of the leaf x lands in.
inline std::vector<double> tree_prob(const Tree& t, const std::vector<double>& x) {
    const TreeNode& leaf = t.route(x);
    std::vector<double> p(t.n_targets());
    const double denom = static_cast<double>(leaf.total + t.n_targets());
    for (std::size_t c = 0; c < p.size(); ++c)
        p[c] = (static_cast<double>(leaf.counts[c]) + 1.0) / denom;
    return p;
}

// P(target = 1) for a binary tree.
inline double tree_prob_one(const Tree& t, const std::vector<double>& x) {
    return tree_prob(t, x)[1];
}

inline std::size_t leaf_count(const Tree& t) {
    std::size_t c = 0;
    for (const auto& nd : t.nodes()) c += nd.leaf;
    return c;
}

struct SplitCandidate {
    std::size_t feature = 0;
    bool categorical = false;
    double threshold = 0;
    double gain = 0;
    double gain_ratio = 0;
};

namespace detail {

inline double entropy(const std::vector<std::size_t>& counts, std::size_t total) {
    if (total == 0) return 0;
    double h = 0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

// One-sided upper confidence limit on the error rate of a leaf with e errors
// out of n, inverted from the normal approximation at confidence cf (the
// usual pessimistic-pruning bound; well-defined at e = 0).
inline double pessimistic_error_rate(std::size_t e, std::size_t n, double cf) {
    if (n == 0) return 0;
    const double z = normal_quantile(1.0 - cf);
    const double f = static_cast<double>(e) / static_cast<double>(n);
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    return (f + z2 / (2 * nn) + z * std::sqrt(f * (1 - f) / nn + z2 / (4 * nn * nn))) /
           (1 + z2 / nn);
}

} // namespace detail

// Every structurally valid split of `indices`, scored by information gain
// and gain ratio. Numeric candidates are midpoints between consecutive
// distinct sorted values with both sides holding at least
// min_examples_per_leaf; categorical candidates need two such branches.
inline std::vector<SplitCandidate> enumerate_splits(const Dataset& data,
                                                    const std::vector<int>& targets,
                                                    std::size_t n_targets,
                                                    const std::vector<std::size_t>& indices,
                                                    const TreeOptions& opts) {
    std::vector<SplitCandidate> out;
    const std::size_t m = indices.size();
    if (m < 2) return out;

    std::vector<std::size_t> node_counts(n_targets, 0);
    for (std::size_t i : indices) ++node_counts[static_cast<std::size_t>(targets[i])];
    const double node_h = detail::entropy(node_counts, m);

    for (std::size_t fi = 0; fi < data.schema.features.size(); ++fi) {
        const FeatureSpec& f = data.schema.features[fi];
        if (f.kind == FeatureKind::Numeric) {
            std::vector<std::size_t> order = indices;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (data.rows[a][fi] != data.rows[b][fi]) return data.rows[a][fi] < data.rows[b][fi];
                return a < b;
            });
            std::vector<std::size_t> left(n_targets, 0);
            std::size_t n_left = 0;
            for (std::size_t pos = 0; pos + 1 < m; ++pos) {
                ++left[static_cast<std::size_t>(targets[order[pos]])];
                ++n_left;
                const double v = data.rows[order[pos]][fi];
                const double next = data.rows[order[pos + 1]][fi];
                if (v == next) continue;
                if (n_left < opts.min_examples_per_leaf || m - n_left < opts.min_examples_per_leaf)
                    continue;
                std::vector<std::size_t> right(n_targets, 0);
                for (std::size_t c = 0; c < n_targets; ++c) right[c] = node_counts[c] - left[c];
                const double pl = static_cast<double>(n_left) / static_cast<double>(m);
                const double h = pl * detail::entropy(left, n_left) +
                                 (1 - pl) * detail::entropy(right, m - n_left);
                const double split_info = -pl * std::log2(pl) - (1 - pl) * std::log2(1 - pl);
                SplitCandidate cand;
                cand.feature = fi;
                cand.threshold = v + (next - v) / 2;
                cand.gain = node_h - h;
                cand.gain_ratio = split_info > 0 ? cand.gain / split_info : 0;
                out.push_back(cand);
            }
        } else {
            std::vector<std::vector<std::size_t>> branch(f.vocabulary.size(),
                                                         std::vector<std::size_t>(n_targets, 0));
            std::vector<std::size_t> branch_n(f.vocabulary.size(), 0);
            for (std::size_t i : indices) {
                const auto v = static_cast<std::size_t>(data.rows[i][fi]);
                ++branch[v][static_cast<std::size_t>(targets[i])];
                ++branch_n[v];
            }
            std::size_t big_enough = 0, nonempty = 0;
            for (std::size_t bn : branch_n) {
                nonempty += bn > 0;
                big_enough += bn >= opts.min_examples_per_leaf;
            }
            if (nonempty < 2 || big_enough < 2) continue;
            double h = 0, split_info = 0;
            for (std::size_t v = 0; v < branch_n.size(); ++v) {
                if (branch_n[v] == 0) continue;
                const double p = static_cast<double>(branch_n[v]) / static_cast<double>(m);
                h += p * detail::entropy(branch[v], branch_n[v]);
                split_info -= p * std::log2(p);
            }
            SplitCandidate cand;
            cand.feature = fi;
            cand.categorical = true;
            cand.gain = node_h - h;
            cand.gain_ratio = split_info > 0 ? cand.gain / split_info : 0;
            out.push_back(cand);
        }
    }
    return out;
}

namespace detail {

struct TreeBuilder {
    const Dataset& data;
    const std::vector<int>& targets;
    std::size_t n_targets;
    const TreeOptions& opts;
    std::vector<TreeNode> nodes;

    std::size_t build(const std::vector<std::size_t>& indices, std::size_t depth) {
        const std::size_t id = nodes.size();
        nodes.emplace_back();
        {
            TreeNode& nd = nodes[id];
            nd.counts.assign(n_targets, 0);
            for (std::size_t i : indices) ++nd.counts[static_cast<std::size_t>(targets[i])];
            nd.total = indices.size();
        }

        const bool pure =
            std::count(nodes[id].counts.begin(), nodes[id].counts.end(), 0) + 1 >=
            static_cast<long>(n_targets);
        const bool too_small = indices.size() < 2 * opts.min_examples_per_leaf;
        const bool too_deep = opts.max_depth && depth >= *opts.max_depth;
        if (indices.empty() || pure || too_small || too_deep) return id;

        const auto cands = enumerate_splits(data, targets, n_targets, indices, opts);
        if (cands.empty()) return id;
        const SplitCandidate* best = &cands.front();
        for (const auto& c : cands)
            if (c.gain_ratio > best->gain_ratio + 1e-12) best = &c;

        if (best->categorical) {
            const std::size_t vocab = data.schema.features[best->feature].vocabulary.size();
            std::vector<std::vector<std::size_t>> parts(vocab);
            for (std::size_t i : indices)
                parts[static_cast<std::size_t>(data.rows[i][best->feature])].push_back(i);
            std::vector<std::size_t> children(vocab, TreeNode::kNoChild);
            std::size_t majority = TreeNode::kNoChild, majority_n = 0;
            for (std::size_t v = 0; v < vocab; ++v) {
                if (parts[v].empty()) continue;
                children[v] = build(parts[v], depth + 1);
                if (parts[v].size() > majority_n) {
                    majority_n = parts[v].size();
                    majority = children[v];
                }
            }
            TreeNode& nd = nodes[id];
            nd.leaf = false;
            nd.feature = best->feature;
            nd.categorical = true;
            nd.children = std::move(children);
            nd.majority_child = majority;
        } else {
            std::vector<std::size_t> lo, hi;
            for (std::size_t i : indices)
                (data.rows[i][best->feature] <= best->threshold ? lo : hi).push_back(i);
            const std::size_t left = build(lo, depth + 1);
            const std::size_t right = build(hi, depth + 1);
            TreeNode& nd = nodes[id];
            nd.leaf = false;
            nd.feature = best->feature;
            nd.threshold = best->threshold;
            nd.children = {left, right};
            nd.majority_child = lo.size() >= hi.size() ? left : right;
        }
        return id;
    }

    // Pessimistic subtree replacement: collapse a subtree into a leaf when
    // the leaf's upper-bound error count does not exceed the subtree's.
    double prune(std::size_t id) {
        TreeNode& nd = nodes[id];
        const std::size_t errors =
            nd.total - *std::max_element(nd.counts.begin(), nd.counts.end());
        const double as_leaf = static_cast<double>(nd.total) *
                               pessimistic_error_rate(errors, nd.total, opts.confidence_factor);
        if (nd.leaf) return as_leaf;

        double as_subtree = 0;
        for (std::size_t c : nd.children)
            if (c != TreeNode::kNoChild) as_subtree += prune(c);
        if (as_leaf <= as_subtree) {
            nd.leaf = true;
            nd.children.clear();
            return as_leaf;
        }
        return as_subtree;
    }

    // Drops nodes orphaned by pruning and renumbers the survivors in
    // preorder (the order the serializer walks).
    std::vector<TreeNode> compact() const {
        std::vector<TreeNode> out;
        std::vector<std::size_t> remap(nodes.size(), TreeNode::kNoChild);
        std::vector<std::size_t> order;
        std::vector<std::size_t> work{0};
        while (!work.empty()) {
            const std::size_t at = work.back();
            work.pop_back();
            remap[at] = order.size();
            order.push_back(at);
            const TreeNode& nd = nodes[at];
            if (nd.leaf) continue;
            for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it)
                if (*it != TreeNode::kNoChild) work.push_back(*it);
        }
        out.reserve(order.size());
        for (std::size_t old_id : order) {
            TreeNode nd = nodes[old_id];
            if (nd.leaf) {
                nd.children.clear();
            } else {
                for (auto& c : nd.children)
                    if (c != TreeNode::kNoChild) c = remap[c];
                nd.majority_child = remap[nd.majority_child];
            }
            out.push_back(std::move(nd));
        }
        return out;
    }
};

} // namespace detail

inline Tree train_tree(const Dataset& data, const std::vector<int>& targets,
                       std::size_t n_targets, const TreeOptions& opts = {}) {
    if (targets.size() != data.size())
        throw std::invalid_argument("train_tree: targets size " + std::to_string(targets.size()) +
                                    " != dataset size " + std::to_string(data.size()));
    if (n_targets < 2) throw std::invalid_argument("train_tree: need at least 2 target classes");
    for (int t : targets)
        if (t < 0 || static_cast<std::size_t>(t) >= n_targets)
            throw std::invalid_argument("train_tree: target " + std::to_string(t) +
                                        " out of range");
    if (!(opts.confidence_factor > 0 && opts.confidence_factor < 1))
        throw std::invalid_argument("train_tree: confidence_factor must be in (0,1)");
    if (opts.min_examples_per_leaf < 1)
        throw std::invalid_argument("train_tree: min_examples_per_leaf must be >= 1");

    detail::TreeBuilder b{data, targets, n_targets, opts, {}};
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    b.build(all, 0);
    if (opts.pruning_enabled) b.prune(0);
    return Tree(b.compact(), n_targets);
}

// Multiclass convenience: targets are the dataset's own labels.
inline Tree train_multiclass_tree(const Dataset& data, const TreeOptions& opts = {}) {
    std::vector<int> targets(data.labels.begin(), data.labels.end());
    return train_tree(data, targets, data.k(), opts);
}

// ---------------------------------------------------------------------------
// Serialization: preorder node records, thresholds at 17 significant digits
// so routing reproduces bit-exactly.

namespace detail {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void save_node(const Tree& t, std::size_t id, std::ostream& os) {
    const TreeNode& nd = t.nodes()[id];
    if (nd.leaf) {
        os << "leaf " << nd.total;
        for (std::size_t c : nd.counts) os << ' ' << c;
        os << '\n';
        return;
    }
    if (nd.categorical) {
        std::size_t majority_slot = 0;
        for (std::size_t v = 0; v < nd.children.size(); ++v)
            if (nd.children[v] == nd.majority_child) majority_slot = v;
        os << "split_cat " << nd.feature << ' ' << nd.children.size() << ' ' << majority_slot;
        for (std::size_t c : nd.children) os << ' ' << (c == TreeNode::kNoChild ? 0 : 1);
        os << '\n';
        for (std::size_t c : nd.children)
            if (c != TreeNode::kNoChild) save_node(t, c, os);
    } else {
        os << "split_num " << nd.feature << ' ' << format_g17(nd.threshold) << '\n';
        save_node(t, nd.children[0], os);
        save_node(t, nd.children[1], os);
    }
}

inline std::size_t load_node(std::istream& is, std::vector<TreeNode>& nodes,
                             std::size_t n_targets) {
    std::string tag;
    if (!(is >> tag)) throw ParseError("tree: truncated node record");
    const std::size_t id = nodes.size();
    nodes.emplace_back();
    if (tag == "leaf") {
        TreeNode& nd = nodes[id];
        nd.leaf = true;
        if (!(is >> nd.total)) throw ParseError("tree: bad leaf record");
        nd.counts.resize(n_targets);
        for (auto& c : nd.counts)
            if (!(is >> c)) throw ParseError("tree: bad leaf counts");
    } else if (tag == "split_num") {
        std::size_t feature;
        std::string tok;
        if (!(is >> feature >> tok)) throw ParseError("tree: bad split_num record");
        double thr = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), thr);
        if (ec != std::errc{} || p != tok.data() + tok.size())
            throw ParseError("tree: bad threshold '" + tok + "'");
        const std::size_t left = load_node(is, nodes, n_targets);
        const std::size_t right = load_node(is, nodes, n_targets);
        TreeNode& nd = nodes[id];
        nd.leaf = false;
        nd.feature = feature;
        nd.threshold = thr;
        nd.children = {left, right};
        // Majority side is not serialized for numeric splits; recover it from
        // the children's totals (kept only for routing symmetry, unused).
        nd.majority_child = nodes[left].total >= nodes[right].total ? left : right;
    } else if (tag == "split_cat") {
        std::size_t feature, width, majority_slot;
        if (!(is >> feature >> width >> majority_slot))
            throw ParseError("tree: bad split_cat record");
        std::vector<int> present(width);
        for (auto& p : present)
            if (!(is >> p)) throw ParseError("tree: bad split_cat mask");
        std::vector<std::size_t> children(width, TreeNode::kNoChild);
        for (std::size_t v = 0; v < width; ++v)
            if (present[v]) children[v] = load_node(is, nodes, n_targets);
        if (majority_slot >= width || children[majority_slot] == TreeNode::kNoChild)
            throw ParseError("tree: bad majority slot");
        TreeNode& nd = nodes[id];
        nd.leaf = false;
        nd.feature = feature;
        nd.categorical = true;
        nd.children = std::move(children);
        nd.majority_child = nd.children[majority_slot];
    } else {
        throw ParseError("tree: unknown node tag '" + tag + "'");
    }
    return id;
}

} // namespace detail

inline void save_tree(const Tree& t, std::ostream& os) {
    os << "tree " << t.n_targets() << '\n';
    detail::save_node(t, 0, os);
}

inline Tree load_tree(std::istream& is) {
    std::string tag;
    std::size_t n_targets = 0;
    if (!(is >> tag >> n_targets) || tag != "tree")
        throw ParseError("tree: missing 'tree <n_targets>' header");
    std::vector<TreeNode> nodes;
    detail::load_node(is, nodes, n_targets);
    return Tree(std::move(nodes), n_targets);
}

} // namespace ecoc
