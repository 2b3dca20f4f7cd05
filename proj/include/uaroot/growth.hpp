#pragma once

#include <cstdint>
#include <vector>

#include "uaroot/plane_tree.hpp"
#include "uaroot/rng.hpp"

namespace uaroot {

enum class Model { kUa, kUaRegular };

struct GrowthConfig {
    Model model = Model::kUa;
    std::int32_t d = 2;  // UA_regular only; builds the (d+1)-regular tree
    std::int64_t n = 1;  // growth steps
    std::uint64_t seed = 0;
};

// Uniform attachment: T_1 = {root}; each step attaches a new node as the next
// child of a uniformly chosen existing node. |T_n| = n.
PlaneTree grow_ua(std::int64_t n, std::uint64_t seed);

// (d+1)-regular uniform attachment: the root starts with children 1..d+1; each
// step gives children 1..d to a uniformly chosen leaf. dn+2 nodes,
// (d-1)n+2 leaves after n steps.
PlaneTree grow_ua_regular(std::int32_t d, std::int64_t n, std::uint64_t seed);

PlaneTree grow(const GrowthConfig& config);

struct UrnState {
    std::vector<std::int64_t> counts;
    std::int64_t replacement = 1;  // balls added per draw
    std::int64_t draws_so_far = 0;

    std::int64_t total() const {
        std::int64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

// Polya urn: each draw picks a colour proportionally to its count and returns
// the ball with `replacement` new balls of the same colour. If record_every
// > 0, a snapshot is stored after every record_every draws (and at the end).
UrnState polya_urn(const std::vector<std::int64_t>& initial_counts, std::int64_t replacement,
                   std::int64_t draws, std::uint64_t seed,
                   std::vector<UrnState>* trajectory = nullptr, std::int64_t record_every = 0);

}  // namespace uaroot
