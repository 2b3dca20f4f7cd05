#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uaroot/centrality.hpp"  // BigInt
#include "uaroot/plane_tree.hpp"
#include "uaroot/word.hpp"

namespace uaroot {

// E_x(f) = { u : x * prod over ancestors v of f(v)/2 >= 1 }. Enumeration is an
// exact DFS: every factor f(v)/2 is at most 1/2, so the running product is
// monotone along paths and a failing node prunes its whole subtree. Each flow
// kind supplies its own certified stop rule for the sibling scan.

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(std::int64_t partial, std::string what)
        : std::runtime_error(std::move(what)), partial_count(partial) {}
    std::int64_t partial_count;
};

struct EnumerationResult {
    std::int64_t count = 0;
    std::vector<Word> words;  // filled only when requested
};

// Flow concept:
//   struct Flow {
//     using Node = ...;
//     Node root();
//     struct Cursor {
//       // Yields children in index order with their f-values. Returns
//       // std::nullopt once no further child can have value >= threshold.
//       std::optional<std::pair<Node, double>> next(double threshold);
//     };
//     Cursor children(const Node&);
//   };
template <class Flow>
EnumerationResult enumerate_flow_set(Flow& flow, double x, std::int64_t budget,
                                     bool keep_words = false) {
    if (!(x > 0)) throw std::invalid_argument("enumerate_flow_set: x must be positive");
    EnumerationResult result;
    if (x < 1.0) return result;  // even the root fails

    struct Frame {
        typename Flow::Node node;
        typename Flow::Cursor cursor;
        double product;  // x * prod of f/2 along the path; >= 1 by construction
    };
    std::vector<Frame> stack;
    Word path;
    auto record = [&](const Word& w) {
        ++result.count;
        if (result.count > budget)
            throw BudgetExceeded(result.count - 1,
                                 "enumerate_flow_set: node budget exceeded; partial count " +
                                     std::to_string(result.count - 1));
        if (keep_words) result.words.push_back(w);
    };

    auto root = flow.root();
    record(path);
    stack.push_back(Frame{root, flow.children(root), x});
    while (!stack.empty()) {
        Frame& top = stack.back();
        auto child = top.cursor.next(2.0 / top.product);
        if (!child) {
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        const double product = top.product * (child->second / 2.0);
        if (product >= 1.0) {
            path.push_back(static_cast<std::uint32_t>(top.cursor.index()));
            record(path);
            stack.push_back(Frame{child->first, flow.children(child->first), product});
        }
    }
    return result;
}

// Deterministic geometric flow gamma_alpha(u*j) = alpha^(1-j) gamma(u), i.e.
// gamma(u) = alpha^(-sum(letters - 1)). Not a preflow for alpha < 2 (sibling
// values sum to alpha/(alpha-1) times the parent), but E_x is defined for any
// [0,1]-valued function and child values decay monotonically in j, which is
// what the sibling scan needs.
class GammaFlow {
public:
    explicit GammaFlow(double alpha) : alpha_(alpha) {
        if (!(alpha > 1.0) || !(alpha <= 2.0))
            throw std::invalid_argument("GammaFlow: alpha must lie in (1, 2]");
    }

    struct Node {
        double value;
    };
    class Cursor {
    public:
        Cursor(double parent_value, double alpha) : value_(parent_value), alpha_(alpha) {}
        std::optional<std::pair<Node, double>> next(double threshold) {
            // Child j has value parent * alpha^(1-j), strictly decreasing in j.
            if (index_ > 0) value_ /= alpha_;
            ++index_;
            if (value_ < threshold) return std::nullopt;
            return std::make_pair(Node{value_}, value_);
        }
        std::uint32_t index() const { return index_; }

    private:
        double value_;
        double alpha_;
        std::uint32_t index_ = 0;
    };

    Node root() const { return Node{1.0}; }
    Cursor children(const Node& node) const { return Cursor(node.value, alpha_); }
    double alpha() const { return alpha_; }

private:
    double alpha_;
};

double log_gamma_value(double alpha, const Word& w);
double gamma_value(double alpha, const Word& w);

// Exact enumeration of E_x(gamma_alpha).
EnumerationResult enumerate_gamma_set(double alpha, double x, std::int64_t budget = 10'000'000,
                                      bool keep_words = true);

// Empirical subtree-proportion preflow of a plane tree below `base`:
// f(w) = |theta_(base*w)| / |theta_base|.
class TreePreflow {
public:
    TreePreflow(const PlaneTree& tree, NodeId base) : tree_(&tree), base_size_(tree.subtree_size(base)), base_(base) {}

    struct Node {
        NodeId id;
        double value;
    };
    class Cursor {
    public:
        Cursor(const PlaneTree& tree, NodeId parent, double parent_value, double base_size)
            : tree_(&tree),
              it_(tree.children_begin(parent)),
              end_(tree.children_end(parent)),
              remaining_(parent_value),
              base_size_(base_size) {}
        std::optional<std::pair<Node, double>> next(double threshold) {
            // Children values sum to less than the parent value, so once the
            // unscanned mass drops below the threshold no child can qualify.
            while (it_ != end_ && remaining_ >= threshold) {
                const NodeId child = *it_++;
                ++index_;
                const double value = static_cast<double>(tree_->subtree_size(child)) / base_size_;
                remaining_ -= value;
                if (value >= threshold) return std::make_pair(Node{child, value}, value);
            }
            return std::nullopt;
        }
        std::uint32_t index() const { return index_; }

    private:
        const PlaneTree* tree_;
        const NodeId* it_;
        const NodeId* end_;
        double remaining_;
        double base_size_;
        std::uint32_t index_ = 0;
    };

    Node root() const { return Node{base_, 1.0}; }
    Cursor children(const Node& node) const {
        return Cursor(*tree_, node.id, node.value, base_size_);
    }

private:
    const PlaneTree* tree_;
    double base_size_;
    NodeId base_;
};

// Number of integer partitions of s, bottom-up dynamic programming.
BigInt partition_count(std::int64_t s);

struct ErdosCertificate {
    std::int64_t s = 0;
    BigInt exact;
    double log_bound = 0.0;  // pi * sqrt(2s/3)
    bool pass = false;
};

// Checks p(s) <= exp(pi sqrt(2s/3)).
ErdosCertificate erdos_certificate(std::int64_t s);

struct CountCertificate {
    double x = 0.0;
    double alpha = 0.0;
    std::int64_t exact_count = 0;
    std::int64_t n = 0;        // floor(log_alpha x)
    double log_bound = 0.0;    // log((n+1)^2 exp(pi sqrt(2n/3)))
    bool pass = false;
};

// Exact N_x(gamma_alpha) against the partition-based bound (n+1)^2 exp(pi sqrt(2n/3)).
CountCertificate certified_nx_bound(double alpha, double x, std::int64_t budget = 10'000'000);

// d-ary preflow access for the domination check: children(handle) returns
// (child handle, p(child)/p(node)) pairs; at most d children, ratios
// nonnegative with sum <= 1.
using DaryChildrenFn =
    std::function<std::vector<std::pair<std::int64_t, double>>(std::int64_t)>;

struct DominationWitness {
    Word word;  // sibling-sorted address
    double p_value = 0.0;
    double gamma_value = 0.0;
};

struct DominationResult {
    bool pass = true;
    std::optional<DominationWitness> witness;
};

// Sorts sibling values descending at every node, then verifies
// p(w) <= gamma_alpha(w) with alpha = d^(1/(d-1)) for all words up to
// probe_depth. Throws on non-d-ary input.
DominationResult dary_domination_check(const DaryChildrenFn& children, std::int32_t d,
                                       std::int32_t probe_depth);

// Adapter: the subtree-proportion preflow below `base` as a DaryChildrenFn
// over node-id handles.
DaryChildrenFn tree_dary_preflow(const PlaneTree& tree, NodeId base);

}  // namespace uaroot
