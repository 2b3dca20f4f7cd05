#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "uaroot/centrality.hpp"
#include "uaroot/growth.hpp"

using namespace uaroot;

namespace {

PlaneTree path3() { return tree_from_words({Word{}, Word{1}, Word{1, 1}}); }
PlaneTree star4() { return tree_from_words({Word{}, Word{1}, Word{2}, Word{3}}); }

PlaneTree random_tree(std::uint64_t seed, std::int64_t max_nodes) {
    Rng rng(seed);
    if (rng.below(2) == 0) {
        const auto n = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_nodes)));
        return grow_ua(n, rng.next_u64());
    }
    const std::int32_t d = 2 + static_cast<std::int32_t>(rng.below(3));
    const auto max_steps = std::max<std::int64_t>(1, (max_nodes - 2) / d);
    const auto n = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_steps)));
    return grow_ua_regular(d, n, rng.next_u64());
}

}  // namespace

TEST_CASE("log ratio on the named shapes") {
    const auto path = path3();
    const auto lr = log_phi_profile(path);
    CHECK(lr[0] == 0.0);
    CHECK(lr[static_cast<std::size_t>(path.find_word(Word{1}))] ==
          doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    CHECK(lr[static_cast<std::size_t>(path.find_word(Word{1, 1}))] ==
          doctest::Approx(0.0).epsilon(1e-12));

    const auto star = star4();
    const auto star_lr = log_phi_profile(star);
    for (NodeId leaf = 1; leaf < 4; ++leaf)
        CHECK(star_lr[static_cast<std::size_t>(leaf)] ==
              doctest::Approx(std::log(3.0)).epsilon(1e-12));

    const auto single = tree_from_words({Word{}});
    CHECK(log_phi_profile(single) == std::vector<double>{0.0});
}

TEST_CASE("exact phi ratios") {
    const auto path = path3();
    CHECK(phi_ratio_exact(path, path.find_word(Word{1, 1})) == Rational(1));
    CHECK(phi_ratio_exact(path, path.find_word(Word{1})) == Rational(2));
    CHECK(phi_ratio_exact(path, 0) == Rational(1));

    CentralityOptions tight;
    tight.exact_cap = 10;
    const auto big = grow_ua(50, 3);
    CHECK_THROWS_AS(phi_ratio_exact(big, 5, tight), std::invalid_argument);
}

TEST_CASE("profile matches the graph-definition oracle") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto tree = random_tree(seed, 60);
        const auto lr = log_phi_profile(tree);
        const double root_log_phi = oracles::brute_log_phi(tree, 0);
        for (NodeId v = 0; v < tree.size(); ++v) {
            const double expected = oracles::brute_log_phi(tree, v) - root_log_phi;
            CHECK(lr[static_cast<std::size_t>(v)] ==
                  doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("exact ratios match the graph-definition oracle") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto tree = random_tree(seed + 100, 25);
        const auto phi_root = oracles::brute_phi_exact(tree, 0);
        for (NodeId v = 0; v < tree.size(); ++v) {
            const auto phi_v = oracles::brute_phi_exact(tree, v);
            CHECK(phi_ratio_exact(tree, v) == Rational(phi_root, phi_v));
        }
    }
}

TEST_CASE("select_roots basics") {
    const auto path = path3();
    const auto top = select_roots(path, 1);
    REQUIRE(top.size() == 1);
    CHECK(top[0] == path.find_word(Word{1}));

    const auto all = select_roots(path, 99);
    CHECK(all.size() == 3);

    const auto star = star4();
    const auto centroid = select_roots(star, 1, RootMethod::kMaxSubtree);
    REQUIRE(centroid.size() == 1);
    CHECK(centroid[0] == 0);

    CHECK_THROWS_AS(select_roots(path, 0), std::invalid_argument);
}

TEST_CASE("select_roots output for k is a prefix of k+1") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto tree = random_tree(seed + 300, 150);
        const auto full = select_roots(tree, tree.size());
        for (const std::int64_t k : {1, 2, 5, 17}) {
            if (k > tree.size()) continue;
            const auto top = select_roots(tree, k);
            REQUIRE(top.size() == static_cast<std::size_t>(k));
            for (std::int64_t i = 0; i < k; ++i)
                CHECK(top[static_cast<std::size_t>(i)] == full[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("log-space ranking equals the exact rational ranking") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto tree = random_tree(seed + 500, 120);
        const auto ranking = build_report(tree).ranking;
        std::vector<std::pair<Rational, NodeId>> keyed;
        for (NodeId v = 0; v < tree.size(); ++v) keyed.emplace_back(phi_ratio_exact(tree, v), v);
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (std::size_t i = 0; i < keyed.size(); ++i) CHECK(ranking[i] == keyed[i].second);
    }
}

TEST_CASE("central path on the named shapes") {
    const auto path = path3();
    const auto [nodes, log_phi] = central_path_and_phi(path);
    CHECK(nodes == std::vector<NodeId>{0, path.find_word(Word{1})});
    CHECK(log_phi == doctest::Approx(std::log(2.0)));

    const auto star = star4();
    const auto [star_nodes, star_log_phi] = central_path_and_phi(star);
    CHECK(star_nodes == std::vector<NodeId>{0});
    CHECK(star_log_phi == 0.0);

    const auto single = tree_from_words({Word{}});
    const auto [single_nodes, single_log_phi] = central_path_and_phi(single);
    CHECK(single_nodes == std::vector<NodeId>{0});
    CHECK(single_log_phi == 0.0);
}

TEST_CASE("central path terminal minimizes phi and log_phi matches") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto tree = random_tree(seed + 700, 200);
        const auto report = build_report(tree);
        const NodeId terminal = report.central_path.back();
        const double min_lr =
            *std::min_element(report.log_ratio.begin(), report.log_ratio.end());
        CHECK(report.log_ratio[static_cast<std::size_t>(terminal)] ==
              doctest::Approx(min_lr).epsilon(1e-12));
        CHECK(report.log_phi == doctest::Approx(-min_lr).epsilon(1e-9));
    }
}

TEST_CASE("competitor sets") {
    const auto star = star4();
    const auto star_competitors = competitor_count(star);
    CHECK(star_competitors.count == 1);
    CHECK(star_competitors.members == std::vector<NodeId>{0});

    const auto path = path3();
    CHECK(competitor_count(path).count == 3);  // equality with the far leaf counts

    const auto single = tree_from_words({Word{}});
    CHECK(competitor_count(single).count == 1);
}

TEST_CASE("root rank agrees with the full ranking") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto tree = random_tree(seed + 900, 300);
        const auto report = build_report(tree);
        const auto lr = log_phi_profile(tree);
        const auto position =
            std::find(report.ranking.begin(), report.ranking.end(), 0) - report.ranking.begin();
        CHECK(root_rank(tree, lr) == position + 1);
    }
}

TEST_CASE("max subtree values match the rerooting oracle") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto tree = random_tree(seed + 1100, 60);
        const auto values = max_subtree_values(tree);
        for (NodeId v = 0; v < tree.size(); ++v)
            CHECK(values[static_cast<std::size_t>(v)] == oracles::brute_max_subtree(tree, v));
    }
}
