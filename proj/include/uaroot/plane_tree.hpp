#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uaroot/word.hpp"

namespace uaroot {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// Rooted ordered tree over dense node ids. Ids are assigned in creation order
// (id 0 is the root), words are derived metadata. Immutable once built; safe
// to share read-only across threads.
class PlaneTree {
public:
    // parent[0] must be kNoNode with birth_rank[0] == 0; every other node needs
    // parent[v] in range and birth_rank[v] >= 1. Throws if the arrays do not
    // describe a plane tree (gapless child ranks, single root, connected).
    PlaneTree(std::vector<NodeId> parent, std::vector<std::int32_t> birth_rank);

    std::int64_t size() const { return static_cast<std::int64_t>(parent_.size()); }
    NodeId root() const { return 0; }
    NodeId parent(NodeId v) const { return parent_[v]; }
    std::int32_t birth_rank(NodeId v) const { return birth_rank_[v]; }

    std::int32_t child_count(NodeId v) const { return child_end_[v] - child_begin_[v]; }
    // Children in birth order (rank j at position j-1).
    const NodeId* children_begin(NodeId v) const { return children_.data() + child_begin_[v]; }
    const NodeId* children_end(NodeId v) const { return children_.data() + child_end_[v]; }
    NodeId child(NodeId v, std::int32_t rank) const { return children_[child_begin_[v] + rank - 1]; }

    bool is_leaf(NodeId v) const { return child_count(v) == 0; }
    std::int64_t leaf_count() const;

    // |theta_v t| for every node.
    const std::vector<std::int32_t>& subtree_sizes() const { return subtree_size_; }
    std::int32_t subtree_size(NodeId v) const { return subtree_size_[v]; }

    std::vector<std::int32_t> depths() const;
    std::vector<std::int64_t> weights() const;

    Word word_of(NodeId v) const;
    // Looks a word up by walking child ranks; kNoNode if absent.
    NodeId find_word(const Word& w) const;

    // One line per node, "id parent_id birth_rank"; root line is "0 -1 0".
    void save(std::ostream& os) const;
    static PlaneTree load(std::istream& is);

private:
    std::vector<NodeId> parent_;
    std::vector<std::int32_t> birth_rank_;
    std::vector<std::int32_t> child_begin_;
    std::vector<std::int32_t> child_end_;
    std::vector<NodeId> children_;
    std::vector<std::int32_t> subtree_size_;
};

// Which clause of the plane-tree definition a word set violates.
enum class TreeViolation { kNone, kMissingRoot, kMissingParent, kChildGap };

struct WordSetValidation {
    bool valid = true;
    TreeViolation violation = TreeViolation::kNone;
    std::optional<Word> witness;  // offending word, when one exists
    std::string message;
};

// Checks conditions (a) root present, (b) closed under parents, (c) gapless
// child indices. Scans in breadth-first (shortlex) order so the reported first
// violation is deterministic.
WordSetValidation validate_plane_tree(const std::vector<Word>& words);

// Builds the dense representation from a valid word set; ids in shortlex order.
PlaneTree tree_from_words(const std::vector<Word>& words);

}  // namespace uaroot
