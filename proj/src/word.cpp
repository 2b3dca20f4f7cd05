#include "uaroot/word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace uaroot {

std::uint64_t word_weight(const Word& w) {
    std::uint64_t sum = 0;
    for (auto letter : w) sum += letter;
    return sum;
}

std::uint64_t word_r(const Word& w) {
    std::uint64_t count = 0;
    for (auto letter : w)
        if (letter >= 2) ++count;
    return count;
}

bool word_lex_less(const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void compositions_of(std::uint32_t m, Word& prefix, std::vector<Word>& out) {
    if (m == 0) {
        out.push_back(prefix);
        return;
    }
    for (std::uint32_t first = 1; first <= m; ++first) {
        prefix.push_back(first);
        compositions_of(m - first, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Word> enumerate_weight_class(std::uint32_t m) {
    if (m == 0) throw std::invalid_argument("enumerate_weight_class: m must be >= 1");
    std::vector<Word> out;
    out.reserve(std::size_t{1} << std::min<std::uint32_t>(m - 1, 24));
    Word prefix;
    compositions_of(m, prefix, out);
    return out;
}

std::string format_word(const Word& w) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) os << ',';
        os << w[i];
    }
    os << ')';
    return os.str();
}

}  // namespace uaroot
