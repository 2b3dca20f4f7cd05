#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "uaroot/flows.hpp"
#include "uaroot/growth.hpp"
#include "uaroot/rng.hpp"
#include "uaroot/word.hpp"

namespace uaroot {

// Symmetric Dirichlet via normalized gammas (the generic route; the
// stick-breaking construction below is the independent counterpart).
std::vector<double> sample_dirichlet_sym(std::int32_t k, double alpha, Rng& rng);

// Stick-breaking for the k-colour urn with replacement d-1: X_i ~
// Beta(d/(d-1), (k-i)/(d-1)) independently, Y_i = X_i prod_{j<i}(1-X_j),
// Y_k = prod(1-X_j). After a uniform shuffle the vector is Dir_k(1/(d-1)).
struct StickSample {
    std::vector<double> sticks;       // X_1..X_{k-1}
    std::vector<double> draw_order;   // Y_1..Y_k, size-biased order
    std::vector<double> components;   // shuffled, Dir_k(1/(d-1))
    std::vector<std::uint32_t> perm;  // components[i] = draw_order[perm[i]]
};

StickSample stick_break_urn(std::int32_t k, std::int32_t d, Rng& rng);

// The paper's case k = d: Dir_d(1/(d-1)).
inline StickSample stick_break_dirichlet(std::int32_t d, Rng& rng) {
    return stick_break_urn(d, d, rng);
}

// Rearrangement of a uniform stick sequence: K is the first index with
// u_K > 1/2, sigma = (K, 1, ..., K-1, K+1, ...), V_i = 1-u_i below the pivot
// and 1-u_{i+1}/2 from it on. The companions are i.i.d. Uniform[1/2,1] and
// P_{sigma(i)} <= (1/2) prod_{j<=i-2} V_j for 2 <= i <= horizon, which is
// asserted here exactly (dyadic arithmetic) before returning.
struct RearrangementResult {
    std::vector<std::uint32_t> sigma;  // 1-based images sigma(1..horizon)
    std::vector<double> companions;    // V_1..V_{horizon-2} (or W's, below)
    std::uint32_t pivot = 0;           // K
};

RearrangementResult rearrange_uniform(const std::vector<double>& us, std::size_t horizon);

// Dirichlet analogue: sticks are rearranged so that the sorted-out components
// decay geometrically under companions W_i in {16/17, 1}. The coupling draws
// W = 16/17 with the conditional probability that keeps P(W = 16/17) = 1/2,
// which is admissible because P(X < 1/17 | X <= 1/2) <= 1/2 on the Beta range
// involved. The inequality D_{sigma(i)} <= (1/2) prod_{j<=i-2} W_j is asserted
// per draw in exact arithmetic.
struct DirichletRearrangement {
    StickSample sample;
    RearrangementResult rearrangement;  // sigma over [d] applies to sample.components
};

class DirichletRearranger {
public:
    explicit DirichletRearranger(std::int32_t d);
    DirichletRearrangement sample(Rng& rng) const;
    std::int32_t d() const { return d_; }

private:
    std::int32_t d_;
    std::vector<double> p_admissible_below_;  // P(1-X_i <= 16/17 | X_i <= 1/2)
    std::vector<double> p_admissible_plain_;  // P(1-X_i <= 16/17)
};

inline DirichletRearrangement rearrange_dirichlet(std::int32_t d, Rng& rng) {
    return DirichletRearranger(d).sample(rng);
}

// Q_root = 1, Q_{u*1} = Q_u, Q_{u*i} = Q_u (1/2) prod_{j<=i-2} V_{u*j}.
double q_flow_value(const std::function<double(const Word&)>& v_table, const Word& w);
double q_flow_value(const std::map<Word, double>& v_table, const Word& w);

// Limit flow of the uniform attachment model: child factors at each node are
// the uniform stick-breaking P_{u*i} = P_u U_{u*i} prod_{j<i}(1-U_{u*j}).
// Factors materialize on first access from a per-node stream seeded by
// hash(sample seed, path), so the sample is one coherent infinite object.
class UaLimitFlow {
public:
    explicit UaLimitFlow(std::uint64_t seed) : seed_(seed) {}

    struct Node {
        std::uint64_t seed;
        double value;
    };
    class Cursor {
    public:
        Cursor(const Node& node) : rng_(node.seed), seed_(node.seed), remaining_(node.value) {}
        std::optional<std::pair<Node, double>> next(double threshold) {
            while (remaining_ >= threshold) {
                ++index_;
                const double u = rng_.u01();
                const double value = remaining_ * u;
                remaining_ *= (1.0 - u);
                if (value >= threshold)
                    return std::make_pair(Node{derive_seed(seed_, index_), value}, value);
            }
            return std::nullopt;
        }
        std::uint32_t index() const { return index_; }

    private:
        Rng rng_;
        std::uint64_t seed_;
        double remaining_;
        std::uint32_t index_ = 0;
    };

    Node root() const { return Node{derive_seed(seed_, 0), 1.0}; }
    Cursor children(const Node& node) const { return Cursor(node); }

private:
    std::uint64_t seed_;
};

// Limit flow P' of the (d+1)-regular model seen from inside a root subtree:
// every node splits by an independent Dir_d(1/(d-1)) vector (stick-breaking).
class RegularLimitFlow {
public:
    RegularLimitFlow(std::int32_t d, std::uint64_t seed) : d_(d), seed_(seed) {}

    struct Node {
        std::uint64_t seed;
        double value;
    };
    class Cursor {
    public:
        Cursor(const Node& node, std::int32_t d);
        std::optional<std::pair<Node, double>> next(double threshold) {
            while (index_ < components_.size() && remaining_ >= threshold) {
                const double value = parent_value_ * components_[index_];
                remaining_ -= value;
                ++index_;
                if (value >= threshold)
                    return std::make_pair(Node{derive_seed(seed_, index_), value}, value);
            }
            return std::nullopt;
        }
        std::uint32_t index() const { return index_; }

    private:
        std::vector<double> components_;
        std::uint64_t seed_;
        double parent_value_;
        double remaining_;
        std::uint32_t index_ = 0;
    };

    Node root() const { return Node{derive_seed(seed_, 0), 1.0}; }
    Cursor children(const Node& node) const { return Cursor(node, d_); }

private:
    std::int32_t d_;
    std::uint64_t seed_;
};

// Exact enumeration of E_x for one sampled limit flow. x >= 1; for x < 2 the
// result is {root} almost surely.
EnumerationResult enumerate_ex_random_flow(Model model, std::int32_t d, double x,
                                           std::uint64_t seed, std::int64_t budget = 10'000'000,
                                           bool keep_words = false);

// One draw of log X, X = prod_{i<G} (1 - V_1...V_i)^-1 with G the first time
// the running product drops to 1/2. V is Uniform[1/2,1] for the UA model; for
// the regular model it is the max component of the per-node Dirichlet (the
// root step uses the d+1 colour version).
double sample_phi_limit_bound(Model model, std::int32_t d, Rng& rng);

// One draw of the per-step maximum V itself (non-root law for the regular model).
double sample_limit_step_max(Model model, std::int32_t d, Rng& rng);

// P(X < 1/17 | X <= 1/2) for X ~ Beta(a, b), a in [1,2], b in (0,1], by
// adaptive integration of the density (the normalizer cancels).
double beta_conditional_tail(double a, double b);

// Size of generation r of a branching process with Geometric(1/2) offspring;
// distributed Geometric(2^-r).
std::int64_t geometric_branching_generation(std::int32_t r, Rng& rng);

// Explores the uniform limit flow on words with height <= max_height and
// letters <= max_index, building the per-node rearrangements and the dominating
// Q flow; every explored pair (P_{sigma(u)}, Q_u) is compared exactly.
struct QDominationOutcome {
    std::int64_t nodes_checked = 0;
    std::int64_t violations = 0;
    // companions observed at the root node, for marginal tests
    std::vector<double> root_companions;
};

QDominationOutcome check_q_domination(std::uint64_t seed, std::int32_t max_height,
                                      std::uint32_t max_index);

}  // namespace uaroot
