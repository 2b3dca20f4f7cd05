#include "uaroot/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uaroot {

void LogTable::extend(std::int64_t max_value) {
    const auto want = static_cast<std::size_t>(max_value) + 1;
    if (logs_.size() >= want) return;
    const std::size_t from = logs_.empty() ? 0 : logs_.size();
    logs_.resize(want);
    for (std::size_t k = from; k < want; ++k)
        logs_[k] = k == 0 ? 0.0 : std::log(static_cast<double>(k));
}

namespace {

struct LogFn {
    const LogTable* table;
    double operator()(std::int64_t k) const {
        return table ? (*table)(k) : std::log(static_cast<double>(k));
    }
};

}  // namespace

std::vector<double> log_phi_profile(const PlaneTree& t, const LogTable* table) {
    const std::int64_t n = t.size();
    const LogFn lg{table};
    std::vector<double> lr(static_cast<std::size_t>(n), 0.0);
    std::vector<NodeId> stack = {t.root()};
    stack.reserve(64);
    const auto& sz = t.subtree_sizes();
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (const NodeId* c = t.children_begin(u); c != t.children_end(u); ++c) {
            const std::int64_t s = sz[*c];
            lr[*c] = lr[u] + (lg(n - s) - lg(s));
            stack.push_back(*c);
        }
    }
    return lr;
}

Rational phi_ratio_exact(const PlaneTree& t, NodeId u, const CentralityOptions& options) {
    if (t.size() > options.exact_cap)
        throw std::invalid_argument(
            "phi_ratio_exact: tree exceeds the exact-mode cap; use the log-space profile");
    const std::int64_t n = t.size();
    Rational ratio = 1;
    for (NodeId v = u; v != t.root(); v = t.parent(v)) {
        const std::int64_t s = t.subtree_size(v);
        ratio *= Rational(s, n - s);
    }
    return ratio;
}

std::pair<std::vector<NodeId>, double> central_path_and_phi(const PlaneTree& t,
                                                            const LogTable* table) {
    const std::int64_t n = t.size();
    const LogFn lg{table};
    std::vector<NodeId> path = {t.root()};
    double log_phi = 0.0;
    NodeId u = t.root();
    for (;;) {
        NodeId next = kNoNode;
        for (const NodeId* c = t.children_begin(u); c != t.children_end(u); ++c) {
            if (2 * static_cast<std::int64_t>(t.subtree_size(*c)) >= n) {
                next = *c;
                break;  // at most one child can hold half the nodes
            }
        }
        if (next == kNoNode) break;
        const std::int64_t s = t.subtree_size(next);
        log_phi += lg(s) - lg(n - s);
        path.push_back(next);
        u = next;
    }
    return {std::move(path), log_phi};
}

namespace {

// Sorts ids ascending by phi. Adjacent log ratios within tie_tolerance are
// chained into a group; groups are re-sorted by exact rationals when the tree
// is small enough, otherwise by id.
void rank_by_phi(const PlaneTree& t, const std::vector<double>& lr,
                 const CentralityOptions& options, std::vector<NodeId>& order) {
    const std::int64_t n = t.size();
    order.resize(static_cast<std::size_t>(n));
    for (std::int64_t v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = static_cast<NodeId>(v);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (lr[a] != lr[b]) return lr[a] < lr[b];
        return a < b;
    });

    const bool exact_ok = n <= options.exact_cap;
    std::size_t i = 0;
    while (i + 1 < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && lr[order[j + 1]] - lr[order[j]] <= options.tie_tolerance)
            ++j;
        if (j > i) {
            if (exact_ok) {
                std::vector<std::pair<Rational, NodeId>> keyed;
                keyed.reserve(j - i + 1);
                for (std::size_t p = i; p <= j; ++p)
                    keyed.emplace_back(phi_ratio_exact(t, order[p], options), order[p]);
                std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
                    if (a.first != b.first) return a.first > b.first;  // bigger ratio = smaller phi
                    return a.second < b.second;
                });
                for (std::size_t p = i; p <= j; ++p) order[p] = keyed[p - i].second;
            } else {
                std::sort(order.begin() + static_cast<std::ptrdiff_t>(i),
                          order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            }
        }
        i = j + 1;
    }
}

}  // namespace

CentralityReport build_report(const PlaneTree& t, const CentralityOptions& options) {
    CentralityReport report;
    report.log_ratio = log_phi_profile(t, options.log_table);
    rank_by_phi(t, report.log_ratio, options, report.ranking);
    auto [path, log_phi] = central_path_and_phi(t, options.log_table);
    report.central_path = std::move(path);
    report.log_phi = log_phi;
    return report;
}

std::vector<std::int64_t> max_subtree_values(const PlaneTree& t) {
    const std::int64_t n = t.size();
    std::vector<std::int64_t> value(static_cast<std::size_t>(n), 0);
    for (std::int64_t v = 0; v < n; ++v) {
        const auto u = static_cast<NodeId>(v);
        std::int64_t best = (u == t.root()) ? 0 : n - t.subtree_size(u);
        for (const NodeId* c = t.children_begin(u); c != t.children_end(u); ++c)
            best = std::max(best, static_cast<std::int64_t>(t.subtree_size(*c)));
        value[static_cast<std::size_t>(v)] = best;
    }
    return value;
}

std::vector<NodeId> select_roots(const PlaneTree& t, std::int64_t k, RootMethod method,
                                 const CentralityOptions& options) {
    if (k < 1) throw std::invalid_argument("select_roots: k must be >= 1");
    const std::int64_t take = std::min(k, t.size());
    std::vector<NodeId> order;
    if (method == RootMethod::kPhi) {
        const auto lr = log_phi_profile(t, options.log_table);
        rank_by_phi(t, lr, options, order);
    } else {
        const auto value = max_subtree_values(t);
        order.resize(static_cast<std::size_t>(t.size()));
        for (std::int64_t v = 0; v < t.size(); ++v)
            order[static_cast<std::size_t>(v)] = static_cast<NodeId>(v);
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            if (value[a] != value[b]) return value[a] < value[b];
            return a < b;
        });
    }
    order.resize(static_cast<std::size_t>(take));
    return order;
}

std::int64_t root_rank(const PlaneTree& t, const std::vector<double>& log_ratio,
                       const CentralityOptions& options) {
    const std::int64_t n = t.size();
    std::int64_t before = 0;
    std::vector<NodeId> window;
    for (std::int64_t v = 1; v < n; ++v) {
        const double lr = log_ratio[static_cast<std::size_t>(v)];
        if (lr < -options.tie_tolerance) {
            ++before;
        } else if (lr <= options.tie_tolerance) {
            window.push_back(static_cast<NodeId>(v));
        }
    }
    if (!window.empty() && n <= options.exact_cap) {
        for (const NodeId v : window)
            if (phi_ratio_exact(t, v, options) > 1) ++before;
        // exact ties keep the root first (id order)
    }
    return before + 1;
}

CompetitorSet competitor_count(const PlaneTree& t, const CentralityOptions& options) {
    const auto lr = log_phi_profile(t, options.log_table);
    const bool exact_ok = t.size() <= options.exact_cap;
    CompetitorSet result;
    for (std::int64_t v = 0; v < t.size(); ++v) {
        const double value = lr[static_cast<std::size_t>(v)];
        bool in;
        if (std::abs(value) <= options.tie_tolerance && exact_ok)
            in = phi_ratio_exact(t, static_cast<NodeId>(v), options) >= 1;
        else
            in = value <= 0.0;
        if (in) {
            ++result.count;
            result.members.push_back(static_cast<NodeId>(v));
        }
    }
    return result;
}

}  // namespace uaroot
