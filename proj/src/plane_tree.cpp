#include "uaroot/plane_tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace uaroot {

PlaneTree::PlaneTree(std::vector<NodeId> parent, std::vector<std::int32_t> birth_rank)
    : parent_(std::move(parent)), birth_rank_(std::move(birth_rank)) {
    const auto n = static_cast<std::int64_t>(parent_.size());
    if (n == 0 || parent_.size() != birth_rank_.size())
        throw std::invalid_argument("PlaneTree: empty or mismatched arrays");
    if (parent_[0] != kNoNode || birth_rank_[0] != 0)
        throw std::invalid_argument("PlaneTree: node 0 must be the root");

    std::vector<std::int32_t> counts(parent_.size(), 0);
    for (std::int64_t v = 1; v < n; ++v) {
        if (parent_[v] < 0 || parent_[v] >= n)
            throw std::invalid_argument("PlaneTree: parent id out of range");
        if (birth_rank_[v] < 1) throw std::invalid_argument("PlaneTree: birth rank must be >= 1");
        ++counts[parent_[v]];
    }

    child_begin_.resize(parent_.size());
    child_end_.resize(parent_.size());
    std::int32_t offset = 0;
    for (std::int64_t v = 0; v < n; ++v) {
        child_begin_[v] = offset;
        child_end_[v] = offset;
        offset += counts[v];
    }
    children_.assign(parent_.size() - 1, kNoNode);
    for (std::int64_t v = 1; v < n; ++v) {
        const NodeId p = parent_[v];
        const std::int32_t rank = birth_rank_[v];
        if (rank > counts[p])
            throw std::invalid_argument("PlaneTree: child rank exceeds child count (gap)");
        const std::int32_t slot = child_begin_[p] + rank - 1;
        if (children_[slot] != kNoNode)
            throw std::invalid_argument("PlaneTree: duplicate child rank");
        children_[slot] = static_cast<NodeId>(v);
        child_end_[p] = std::max(child_end_[p], slot + 1);
    }

    // Subtree sizes bottom-up. Ids need not be topologically sorted for loaded
    // trees, so order nodes by depth once; this also detects cycles.
    subtree_size_.assign(parent_.size(), 1);
    std::vector<NodeId> order(parent_.size());
    std::vector<std::int32_t> depth(parent_.size(), -1);
    depth[0] = 0;
    order[0] = 0;
    std::size_t head = 0, tail = 1;
    while (head < tail) {
        const NodeId u = order[head++];
        for (const NodeId* c = children_begin(u); c != children_end(u); ++c) {
            depth[*c] = depth[u] + 1;
            order[tail++] = *c;
        }
    }
    if (tail != parent_.size())
        throw std::invalid_argument("PlaneTree: disconnected nodes or cycle");
    for (std::size_t i = parent_.size(); i-- > 1;) {
        const NodeId v = order[i];
        subtree_size_[parent_[v]] += subtree_size_[v];
    }
}

std::int64_t PlaneTree::leaf_count() const {
    std::int64_t leaves = 0;
    for (std::int64_t v = 0; v < size(); ++v)
        if (is_leaf(static_cast<NodeId>(v))) ++leaves;
    return leaves;
}

std::vector<std::int32_t> PlaneTree::depths() const {
    std::vector<std::int32_t> depth(parent_.size(), 0);
    std::vector<NodeId> stack = {0};
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (const NodeId* c = children_begin(u); c != children_end(u); ++c) {
            depth[*c] = depth[u] + 1;
            stack.push_back(*c);
        }
    }
    return depth;
}

std::vector<std::int64_t> PlaneTree::weights() const {
    std::vector<std::int64_t> weight(parent_.size(), 0);
    std::vector<NodeId> stack = {0};
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (const NodeId* c = children_begin(u); c != children_end(u); ++c) {
            weight[*c] = weight[u] + birth_rank_[*c];
            stack.push_back(*c);
        }
    }
    return weight;
}

Word PlaneTree::word_of(NodeId v) const {
    Word w;
    while (v != 0) {
        w.push_back(static_cast<std::uint32_t>(birth_rank_[v]));
        v = parent_[v];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

NodeId PlaneTree::find_word(const Word& w) const {
    NodeId v = 0;
    for (auto letter : w) {
        if (letter < 1 || static_cast<std::int32_t>(letter) > child_count(v)) return kNoNode;
        v = child(v, static_cast<std::int32_t>(letter));
    }
    return v;
}

void PlaneTree::save(std::ostream& os) const {
    for (std::int64_t v = 0; v < size(); ++v)
        os << v << ' ' << parent_[v] << ' ' << birth_rank_[v] << '\n';
}

PlaneTree PlaneTree::load(std::istream& is) {
    std::vector<NodeId> parent;
    std::vector<std::int32_t> rank;
    std::string line;
    std::int64_t expected_id = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::int64_t id;
        std::int64_t p;
        std::int64_t r;
        if (!(row >> id >> p >> r)) throw std::runtime_error("PlaneTree::load: malformed line: " + line);
        if (id != expected_id)
            throw std::runtime_error("PlaneTree::load: ids must be consecutive from 0");
        parent.push_back(static_cast<NodeId>(p));
        rank.push_back(static_cast<std::int32_t>(r));
        ++expected_id;
    }
    if (parent.empty()) throw std::runtime_error("PlaneTree::load: empty input");
    return PlaneTree(std::move(parent), std::move(rank));
}

namespace {

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return word_lex_less(a, b);
}

}  // namespace

WordSetValidation validate_plane_tree(const std::vector<Word>& words) {
    std::vector<Word> sorted(words);
    std::sort(sorted.begin(), sorted.end(), shortlex_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    WordSetValidation result;
    auto contains = [&](const Word& w) {
        return std::binary_search(sorted.begin(), sorted.end(), w, shortlex_less);
    };

    if (sorted.empty() || !sorted.front().empty()) {
        result.valid = false;
        result.violation = TreeViolation::kMissingRoot;
        result.message = "condition (a): the empty word (root) is missing";
        return result;
    }
    for (const Word& w : sorted) {
        if (w.empty()) continue;
        if (!contains(word_parent(w))) {
            result.valid = false;
            result.violation = TreeViolation::kMissingParent;
            result.witness = w;
            result.message = "condition (b): parent of " + format_word(w) + " is missing";
            return result;
        }
        if (w.back() >= 2) {
            Word sibling(w);
            --sibling.back();
            if (!contains(sibling)) {
                result.valid = false;
                result.violation = TreeViolation::kChildGap;
                result.witness = w;
                result.message = "condition (c): " + format_word(w) + " present but older sibling " +
                                 format_word(sibling) + " is missing";
                return result;
            }
        }
    }
    return result;
}

PlaneTree tree_from_words(const std::vector<Word>& words) {
    const auto check = validate_plane_tree(words);
    if (!check.valid) throw std::invalid_argument("tree_from_words: " + check.message);

    std::vector<Word> sorted(words);
    std::sort(sorted.begin(), sorted.end(), shortlex_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<NodeId> parent(sorted.size());
    std::vector<std::int32_t> rank(sorted.size());
    parent[0] = kNoNode;
    rank[0] = 0;
    auto index_of = [&](const Word& w) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), w, shortlex_less);
        return static_cast<NodeId>(it - sorted.begin());
    };
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        parent[i] = index_of(word_parent(sorted[i]));
        rank[i] = static_cast<std::int32_t>(sorted[i].back());
    }
    return PlaneTree(std::move(parent), std::move(rank));
}

}  // namespace uaroot
