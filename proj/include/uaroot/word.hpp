#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uaroot {

// Ulam-Harris address: the sequence of child indices (letters >= 1) along the
// ancestral path. The empty word is the root.
using Word = std::vector<std::uint32_t>;

inline std::size_t word_height(const Word& w) { return w.size(); }

// Sum of the letters; 0 for the root.
std::uint64_t word_weight(const Word& w);

// Number of letters >= 2, i.e. ancestors that are not oldest children.
std::uint64_t word_r(const Word& w);

inline Word word_parent(const Word& w) {
    Word p(w.begin(), w.end() - 1);
    return p;
}

inline Word word_child(const Word& w, std::uint32_t j) {
    Word c(w);
    c.push_back(j);
    return c;
}

bool word_lex_less(const Word& a, const Word& b);

// All words of weight exactly m (the compositions of m), in lexicographic
// order; there are 2^(m-1) of them. m = 0 is rejected: only the root has
// weight 0 and callers need the nonempty-letter form.
std::vector<Word> enumerate_weight_class(std::uint32_t m);

// "()" for the root, "(2,1,3)" otherwise.
std::string format_word(const Word& w);

}  // namespace uaroot
