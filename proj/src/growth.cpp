#include "uaroot/growth.hpp"

#include <stdexcept>

namespace uaroot {

PlaneTree grow_ua(std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("grow_ua: n must be >= 1");
    std::vector<NodeId> parent(static_cast<std::size_t>(n));
    std::vector<std::int32_t> rank(static_cast<std::size_t>(n));
    std::vector<std::int32_t> child_count(static_cast<std::size_t>(n), 0);
    parent[0] = kNoNode;
    rank[0] = 0;
    Rng rng(seed);
    for (std::int64_t v = 1; v < n; ++v) {
        const auto target = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(v)));
        parent[v] = target;
        rank[v] = ++child_count[target];
    }
    return PlaneTree(std::move(parent), std::move(rank));
}

PlaneTree grow_ua_regular(std::int32_t d, std::int64_t n, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("grow_ua_regular: d must be >= 2");
    if (n < 1) throw std::invalid_argument("grow_ua_regular: n must be >= 1");
    const std::int64_t node_count = d * n + 2;
    std::vector<NodeId> parent(static_cast<std::size_t>(node_count));
    std::vector<std::int32_t> rank(static_cast<std::size_t>(node_count));
    parent[0] = kNoNode;
    rank[0] = 0;

    // Uniform leaf selection with a swap-remove array: O(1) per step.
    std::vector<NodeId> leaves;
    leaves.reserve(static_cast<std::size_t>((d - 1) * n + 2));
    NodeId next_id = 1;
    for (std::int32_t j = 1; j <= d + 1; ++j) {
        parent[next_id] = 0;
        rank[next_id] = j;
        leaves.push_back(next_id++);
    }
    Rng rng(seed);
    for (std::int64_t step = 1; step < n; ++step) {
        const std::size_t pick = rng.below(leaves.size());
        const NodeId chosen = leaves[pick];
        leaves[pick] = leaves.back();
        leaves.pop_back();
        for (std::int32_t j = 1; j <= d; ++j) {
            parent[next_id] = chosen;
            rank[next_id] = j;
            leaves.push_back(next_id++);
        }
    }
    return PlaneTree(std::move(parent), std::move(rank));
}

PlaneTree grow(const GrowthConfig& config) {
    if (config.model == Model::kUa) return grow_ua(config.n, config.seed);
    return grow_ua_regular(config.d, config.n, config.seed);
}

UrnState polya_urn(const std::vector<std::int64_t>& initial_counts, std::int64_t replacement,
                   std::int64_t draws, std::uint64_t seed, std::vector<UrnState>* trajectory,
                   std::int64_t record_every) {
    if (initial_counts.empty()) throw std::invalid_argument("polya_urn: need at least one colour");
    for (auto c : initial_counts)
        if (c < 1) throw std::invalid_argument("polya_urn: initial counts must be >= 1");
    if (replacement < 1) throw std::invalid_argument("polya_urn: replacement must be >= 1");
    if (draws < 0) throw std::invalid_argument("polya_urn: draws must be >= 0");

    UrnState state{initial_counts, replacement, 0};
    std::int64_t total = state.total();
    Rng rng(seed);
    for (std::int64_t step = 0; step < draws; ++step) {
        std::int64_t ticket = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
        std::size_t colour = 0;
        while (ticket >= state.counts[colour]) {
            ticket -= state.counts[colour];
            ++colour;
        }
        state.counts[colour] += replacement;
        total += replacement;
        ++state.draws_so_far;
        if (trajectory && record_every > 0 && state.draws_so_far % record_every == 0)
            trajectory->push_back(state);
    }
    if (trajectory && record_every > 0 &&
        (trajectory->empty() || trajectory->back().draws_so_far != state.draws_so_far))
        trajectory->push_back(state);
    return state;
}

}  // namespace uaroot
