#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "uaroot/plane_tree.hpp"

namespace uaroot {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Shared log(k) table; immutable once built, safe to share across threads.
class LogTable {
public:
    LogTable() = default;
    explicit LogTable(std::int64_t max_value) { extend(max_value); }
    void extend(std::int64_t max_value);
    double operator()(std::int64_t k) const { return logs_[static_cast<std::size_t>(k)]; }

private:
    std::vector<double> logs_;
};

struct CentralityOptions {
    std::int64_t exact_cap = 2000;  // largest |t| for exact rational work
    double tie_tolerance = 1e-9;    // log-ratio gap that triggers exact comparison
    const LogTable* log_table = nullptr;
};

struct CentralityReport {
    // log(phi_t(u) / phi_t(root)) per node; 0 at the root.
    std::vector<double> log_ratio;
    // All nodes, ascending phi; ties resolved exactly (within the cap) then by id.
    std::vector<NodeId> ranking;
    // Path of Lemma-style halving steps from the root to a phi-minimizer.
    std::vector<NodeId> central_path;
    // log Phi(t) = log(phi_t(root)) - log(min_u phi_t(u)) >= 0.
    double log_phi = 0.0;
};

// One pass over the tree; log_ratio(u) accumulates log(n - |theta_w|) -
// log(|theta_w|) over the ancestors w of u.
std::vector<double> log_phi_profile(const PlaneTree& t, const LogTable* table = nullptr);

// phi_t(root) / phi_t(u) as an exact rational in lowest terms. Larger than 1
// means u is strictly more central than the root. Throws when |t| exceeds
// options.exact_cap (use the log-space profile instead).
Rational phi_ratio_exact(const PlaneTree& t, NodeId u,
                         const CentralityOptions& options = CentralityOptions{});

// Walks from the root along the unique child holding at least half the nodes;
// the terminal node minimizes phi and log_phi is exactly log Phi(t).
std::pair<std::vector<NodeId>, double> central_path_and_phi(const PlaneTree& t,
                                                            const LogTable* table = nullptr);

CentralityReport build_report(const PlaneTree& t,
                              const CentralityOptions& options = CentralityOptions{});

enum class RootMethod { kPhi, kMaxSubtree };

// The min(k, |t|) best root candidates: smallest phi, or smallest
// phi'(u) = max over neighbours v of the component of v when u is removed.
std::vector<NodeId> select_roots(const PlaneTree& t, std::int64_t k,
                                 RootMethod method = RootMethod::kPhi,
                                 const CentralityOptions& options = CentralityOptions{});

// phi'(u) per node (the max-subtree benchmark statistic).
std::vector<std::int64_t> max_subtree_values(const PlaneTree& t);

// 1-based position of the root in the phi ranking; root is in A_K iff
// root_rank <= K. Equivalent to locating the root in build_report().ranking
// but avoids the full sort.
std::int64_t root_rank(const PlaneTree& t, const std::vector<double>& log_ratio,
                       const CentralityOptions& options = CentralityOptions{});

struct CompetitorSet {
    std::int64_t count = 0;
    std::vector<NodeId> members;
};

// B = {v : phi_t(v) <= phi_t(root)}; near-zero log ratios are confirmed
// exactly when the tree is within the exact cap.
CompetitorSet competitor_count(const PlaneTree& t,
                               const CentralityOptions& options = CentralityOptions{});

}  // namespace uaroot
