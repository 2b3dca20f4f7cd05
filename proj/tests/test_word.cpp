#include <doctest.h>

#include <set>

#include "uaroot/rng.hpp"
#include "uaroot/word.hpp"

using namespace uaroot;

TEST_CASE("word weight sums letters") {
    CHECK(word_weight(Word{}) == 0);
    CHECK(word_weight(Word{2, 1, 3}) == 6);
    CHECK(word_weight(Word{1, 1}) == 2);
}

TEST_CASE("word r counts letters that are not oldest children") {
    CHECK(word_r(Word{}) == 0);
    CHECK(word_r(Word{1, 1, 1}) == 0);
    CHECK(word_r(Word{2, 1, 3}) == 2);
}

TEST_CASE("r <= height <= weight for random words") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        Word w;
        const auto len = 1 + rng.below(8);
        for (std::uint64_t i = 0; i < len; ++i)
            w.push_back(1 + static_cast<std::uint32_t>(rng.below(5)));
        CHECK(word_r(w) <= word_height(w));
        CHECK(word_height(w) <= word_weight(w));
    }
}

TEST_CASE("weight class enumeration") {
    CHECK(enumerate_weight_class(1) == std::vector<Word>{Word{1}});
    const auto m3 = enumerate_weight_class(3);
    CHECK(m3 == std::vector<Word>{Word{1, 1, 1}, Word{1, 2}, Word{2, 1}, Word{3}});
    CHECK(enumerate_weight_class(5).size() == 16);
    CHECK_THROWS_AS(enumerate_weight_class(0), std::invalid_argument);
}

TEST_CASE("weight class members are distinct with the right weight") {
    for (std::uint32_t m = 1; m <= 10; ++m) {
        const auto words = enumerate_weight_class(m);
        CHECK(words.size() == (std::size_t{1} << (m - 1)));
        std::set<Word> unique(words.begin(), words.end());
        CHECK(unique.size() == words.size());
        for (const auto& w : words) CHECK(word_weight(w) == m);
    }
}

TEST_CASE("weight class agrees with direct filtering") {
    // independent oracle: every word over letters 1..6 with height <= 6
    const std::uint32_t m = 6;
    std::set<Word> expected;
    Word w;
    auto visit = [&](auto&& self, std::uint64_t weight) -> void {
        if (weight == m) expected.insert(w);
        if (weight >= m || w.size() >= m) return;
        for (std::uint32_t letter = 1; letter <= m; ++letter) {
            w.push_back(letter);
            self(self, weight + letter);
            w.pop_back();
        }
    };
    visit(visit, 0);
    const auto words = enumerate_weight_class(m);
    CHECK(expected == std::set<Word>(words.begin(), words.end()));
}

TEST_CASE("word formatting") {
    CHECK(format_word(Word{}) == "()");
    CHECK(format_word(Word{2, 1, 3}) == "(2,1,3)");
}
