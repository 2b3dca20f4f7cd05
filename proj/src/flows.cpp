#include "uaroot/flows.hpp"

#include <algorithm>
#include <cmath>

namespace uaroot {

double log_gamma_value(double alpha, const Word& w) {
    if (!(alpha > 1.0) || !(alpha <= 2.0))
        throw std::invalid_argument("log_gamma_value: alpha must lie in (1, 2]");
    std::uint64_t shifted = 0;
    for (auto letter : w) shifted += letter - 1;
    return -static_cast<double>(shifted) * std::log(alpha);
}

double gamma_value(double alpha, const Word& w) { return std::exp(log_gamma_value(alpha, w)); }

EnumerationResult enumerate_gamma_set(double alpha, double x, std::int64_t budget,
                                      bool keep_words) {
    GammaFlow flow(alpha);
    return enumerate_flow_set(flow, x, budget, keep_words);
}

BigInt partition_count(std::int64_t s) {
    if (s < 0) throw std::invalid_argument("partition_count: s must be >= 0");
    std::vector<BigInt> ways(static_cast<std::size_t>(s) + 1);
    ways[0] = 1;
    for (std::int64_t part = 1; part <= s; ++part)
        for (std::int64_t total = part; total <= s; ++total)
            ways[static_cast<std::size_t>(total)] += ways[static_cast<std::size_t>(total - part)];
    return ways[static_cast<std::size_t>(s)];
}

namespace {

double log_of_bigint(const BigInt& value) {
    // Safe for arbitrarily large counts: take the top 64 bits plus the shift.
    if (value <= 0) throw std::invalid_argument("log_of_bigint: value must be positive");
    const auto bits = boost::multiprecision::msb(value);
    if (bits <= 52) return std::log(value.convert_to<double>());
    const unsigned shift = static_cast<unsigned>(bits - 52);
    const BigInt top = value >> shift;
    return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

}  // namespace

ErdosCertificate erdos_certificate(std::int64_t s) {
    if (s < 1) throw std::invalid_argument("erdos_certificate: s must be >= 1");
    ErdosCertificate cert;
    cert.s = s;
    cert.exact = partition_count(s);
    const double pi = std::acos(-1.0);
    cert.log_bound = pi * std::sqrt(2.0 * static_cast<double>(s) / 3.0);
    cert.pass = log_of_bigint(cert.exact) <= cert.log_bound;
    return cert;
}

CountCertificate certified_nx_bound(double alpha, double x, std::int64_t budget) {
    if (!(x >= 1.0)) throw std::invalid_argument("certified_nx_bound: x must be >= 1");
    CountCertificate cert;
    cert.x = x;
    cert.alpha = alpha;
    cert.exact_count = enumerate_gamma_set(alpha, x, budget, /*keep_words=*/false).count;
    const long double exponent =
        std::log2l(static_cast<long double>(x)) / std::log2l(static_cast<long double>(alpha));
    cert.n = static_cast<std::int64_t>(std::floor(static_cast<double>(exponent) + 1e-12));
    const double pi = std::acos(-1.0);
    cert.log_bound = 2.0 * std::log(static_cast<double>(cert.n + 1)) +
                     pi * std::sqrt(2.0 * static_cast<double>(cert.n) / 3.0);
    cert.pass = std::log(static_cast<double>(cert.exact_count)) <= cert.log_bound + 1e-12;
    return cert;
}

namespace {

struct DominationFrame {
    std::int64_t handle;
    double p_value;
    double log_gamma;
    std::int32_t depth;
    Word word;
};

}  // namespace

DominationResult dary_domination_check(const DaryChildrenFn& children, std::int32_t d,
                                       std::int32_t probe_depth) {
    if (d < 2) throw std::invalid_argument("dary_domination_check: d must be >= 2");
    const double log_alpha = std::log(static_cast<double>(d)) / static_cast<double>(d - 1);

    DominationResult result;
    std::vector<DominationFrame> stack;
    stack.push_back(DominationFrame{0, 1.0, 0.0, 0, Word{}});
    while (!stack.empty()) {
        DominationFrame frame = std::move(stack.back());
        stack.pop_back();
        if (frame.depth >= probe_depth) continue;
        auto kids = children(frame.handle);
        if (static_cast<std::int32_t>(kids.size()) > d)
            throw std::invalid_argument("dary_domination_check: node has more than d children");
        double mass = 0.0;
        for (const auto& [handle, ratio] : kids) {
            if (ratio < 0.0)
                throw std::invalid_argument("dary_domination_check: negative child ratio");
            mass += ratio;
        }
        if (mass > 1.0 + 1e-9)
            throw std::invalid_argument("dary_domination_check: child ratios exceed parent mass");
        std::sort(kids.begin(), kids.end(),
                  [](const auto& a, const auto& b) { return a.second > b.second; });
        for (std::size_t i = 0; i < kids.size(); ++i) {
            const auto j = static_cast<std::uint32_t>(i + 1);
            const double p_child = frame.p_value * kids[i].second;
            const double log_gamma_child = frame.log_gamma - (j - 1) * log_alpha;
            const double gamma_child = std::exp(log_gamma_child);
            if (p_child > gamma_child * (1.0 + 1e-9)) {
                Word w = frame.word;
                w.push_back(j);
                result.pass = false;
                result.witness = DominationWitness{std::move(w), p_child, gamma_child};
                return result;
            }
            DominationFrame next;
            next.handle = kids[i].first;
            next.p_value = p_child;
            next.log_gamma = log_gamma_child;
            next.depth = frame.depth + 1;
            next.word = frame.word;
            next.word.push_back(j);
            stack.push_back(std::move(next));
        }
    }
    return result;
}

DaryChildrenFn tree_dary_preflow(const PlaneTree& tree, NodeId base) {
    return [&tree, base](std::int64_t handle) {
        const NodeId node = handle == 0 ? base : static_cast<NodeId>(handle);
        std::vector<std::pair<std::int64_t, double>> out;
        const double parent_size = static_cast<double>(tree.subtree_size(node));
        for (const NodeId* c = tree.children_begin(node); c != tree.children_end(node); ++c)
            out.emplace_back(*c, static_cast<double>(tree.subtree_size(*c)) / parent_size);
        return out;
    };
}

}  // namespace uaroot
