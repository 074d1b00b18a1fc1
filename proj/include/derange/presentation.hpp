#pragma once

#include <string>
#include <vector>

#include "derange/perm.hpp"

namespace derange {

/// A finite presentation: generator names plus relator words. Words use
/// signed letters: k > 0 means generators[k-1], k < 0 its inverse.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<std::vector<int>> relators;
};

/// Parses presentation text. Grammar, with whitespace free between tokens
/// and `#` starting a comment that runs to the end of the line:
///
///   file     = "gens" ":" names ";" "rels" ":" [ relators ]
///   names    = name { "," name }
///   relators = relator { "," relator }
///   relator  = word { "=" word }
///   word     = "1" | term { ["*"] term }
///   term     = atom [ "^" ( integer | atom ) ]
///   atom     = name | "(" word ")" | "[" word "," word "]"
///
/// Names match [A-Za-z][A-Za-z0-9_]*. A bare word w abbreviates the
/// equation w = 1, and a chain a = b = c contributes a*b^-1 and b*c^-1.
/// The bracket [a,b] is the commutator a^-1*b^-1*a*b; an exponent that is
/// itself an atom conjugates, a^b = b^-1*a*b. Relators are freely reduced
/// and empty ones dropped. Errors carry line and column positions.
Presentation parse_presentation(const std::string& text);

/// Parses a single word over the presentation's generators (same grammar).
std::vector<int> parse_word(const std::string& text, const Presentation& pr);

/// Renders a word, e.g. "x^2*y^-1"; the empty word renders as "1".
std::string format_word(const std::vector<int>& word, const Presentation& pr);

/// Evaluates a word over concrete images of the generators, aligned with
/// the presentation's generator list.
Permutation evaluate_word(const std::vector<int>& word, const std::vector<Permutation>& images,
                          int degree);

}  // namespace derange
