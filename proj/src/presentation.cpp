#include "derange/presentation.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "derange/errors.hpp"

namespace derange {

namespace {

enum class TokKind { name, integer, punct, end };

struct Token {
    TokKind kind = TokKind::end;
    std::string text;
    long value = 0;  // integer tokens only
    int line = 0;
    int column = 0;
};

[[noreturn]] void fail_at(const Token& tok, const std::string& message) {
    std::ostringstream os;
    os << "line " << tok.line << ", column " << tok.column << ": " << message;
    throw input_error(os.str());
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = column;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            tok.kind = TokKind::name;
            tok.text = text.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            tok.kind = TokKind::integer;
            tok.text = text.substr(i, j - i);
            tok.value = std::strtol(tok.text.c_str(), nullptr, 10);
            advance(j - i);
        } else {
            static const std::string allowed = ",;:=^*()[]-";
            if (allowed.find(c) == std::string::npos)
                fail_at(tok, std::string("unexpected character '") + c + "'");
            tok.kind = TokKind::punct;
            tok.text = std::string(1, c);
            advance(1);
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.line = line;
    end.column = column;
    out.push_back(end);
    return out;
}

std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

void append_reduced(std::vector<int>& out, int letter) {
    if (!out.empty() && out.back() == -letter)
        out.pop_back();
    else
        out.push_back(letter);
}

std::vector<int> free_reduce(const std::vector<int>& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (int letter : w) append_reduced(out, letter);
    return out;
}

// Recursive-descent parser over the token stream. Generator names resolve
// through the map built from the gens section (or the presentation passed
// to parse_word).
class WordParser {
  public:
    WordParser(const std::vector<Token>& tokens, std::size_t pos,
               const std::unordered_map<std::string, int>& gens)
        : tokens_(tokens), pos_(pos), gens_(gens) {}

    std::size_t position() const { return pos_; }

    const Token& peek() const { return tokens_[pos_]; }

    const Token& take() { return tokens_[pos_++]; }

    bool at_punct(const char* p) const {
        return peek().kind == TokKind::punct && peek().text == p;
    }

    void expect_punct(const char* p) {
        if (!at_punct(p)) fail_at(peek(), std::string("expected '") + p + "'");
        take();
    }

    // word = "1" | term { ["*"] term }
    std::vector<int> parse_word() {
        if (peek().kind == TokKind::integer && peek().value == 1) {
            take();
            return {};
        }
        std::vector<int> word = parse_term();
        while (true) {
            if (at_punct("*")) take();
            if (!starts_atom()) break;
            for (int letter : parse_term()) word.push_back(letter);
        }
        return word;
    }

  private:
    bool starts_atom() const {
        return peek().kind == TokKind::name || at_punct("(") || at_punct("[");
    }

    // term = atom [ "^" ( ["-"] integer | atom ) ]
    std::vector<int> parse_term() {
        std::vector<int> base = parse_atom();
        if (!at_punct("^")) return base;
        take();
        if (peek().kind == TokKind::integer || at_punct("-")) {
            bool negative = false;
            if (at_punct("-")) {
                negative = true;
                take();
            }
            if (peek().kind != TokKind::integer) fail_at(peek(), "expected an exponent");
            long e = take().value;
            if (negative) e = -e;
            const std::vector<int>& block = e >= 0 ? base : inverse_word(base);
            long reps = e >= 0 ? e : -e;
            std::vector<int> out;
            out.reserve(block.size() * static_cast<std::size_t>(reps));
            for (long k = 0; k < reps; ++k)
                for (int letter : block) out.push_back(letter);
            return out;
        }
        if (starts_atom()) {
            std::vector<int> by = parse_atom();
            std::vector<int> out = inverse_word(by);
            for (int letter : base) out.push_back(letter);
            for (int letter : by) out.push_back(letter);
            return out;
        }
        fail_at(peek(), "expected an exponent");
    }

    // atom = name | "(" word ")" | "[" word "," word "]"
    std::vector<int> parse_atom() {
        if (peek().kind == TokKind::name) {
            const Token& tok = take();
            auto it = gens_.find(tok.text);
            if (it == gens_.end())
                fail_at(tok, "unknown generator '" + tok.text + "'");
            return {it->second};
        }
        if (at_punct("(")) {
            take();
            std::vector<int> inner = parse_word();
            expect_punct(")");
            return inner;
        }
        if (at_punct("[")) {
            take();
            std::vector<int> a = parse_word();
            expect_punct(",");
            std::vector<int> b = parse_word();
            expect_punct("]");
            std::vector<int> out = inverse_word(a);
            for (int letter : inverse_word(b)) out.push_back(letter);
            for (int letter : a) out.push_back(letter);
            for (int letter : b) out.push_back(letter);
            return out;
        }
        fail_at(peek(), "expected a generator, '(' or '['");
    }

    const std::vector<Token>& tokens_;
    std::size_t pos_;
    const std::unordered_map<std::string, int>& gens_;
};

std::unordered_map<std::string, int> generator_map(const std::vector<std::string>& names) {
    std::unordered_map<std::string, int> gens;
    for (std::size_t k = 0; k < names.size(); ++k)
        gens.emplace(names[k], static_cast<int>(k) + 1);
    return gens;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
    std::vector<Token> tokens = tokenize(text);
    std::size_t pos = 0;
    auto expect_keyword = [&](const char* word) {
        if (tokens[pos].kind != TokKind::name || tokens[pos].text != word)
            fail_at(tokens[pos], std::string("expected '") + word + "'");
        ++pos;
    };
    auto expect_punct = [&](const char* p) {
        if (tokens[pos].kind != TokKind::punct || tokens[pos].text != p)
            fail_at(tokens[pos], std::string("expected '") + p + "'");
        ++pos;
    };

    Presentation pr;
    expect_keyword("gens");
    expect_punct(":");
    std::unordered_map<std::string, int> gens;
    while (true) {
        if (tokens[pos].kind != TokKind::name) fail_at(tokens[pos], "expected a generator name");
        const Token& tok = tokens[pos];
        if (gens.count(tok.text)) fail_at(tok, "duplicate generator '" + tok.text + "'");
        pr.generators.push_back(tok.text);
        gens.emplace(tok.text, static_cast<int>(pr.generators.size()));
        ++pos;
        if (tokens[pos].kind == TokKind::punct && tokens[pos].text == ",") {
            ++pos;
            continue;
        }
        break;
    }
    expect_punct(";");
    expect_keyword("rels");
    expect_punct(":");

    // An empty relator list (free group) is allowed: nothing after "rels:".
    while (tokens[pos].kind != TokKind::end) {
        WordParser parser(tokens, pos, gens);
        std::vector<std::vector<int>> chain;
        chain.push_back(parser.parse_word());
        while (parser.at_punct("=")) {
            parser.take();
            chain.push_back(parser.parse_word());
        }
        pos = parser.position();
        if (chain.size() == 1) {
            std::vector<int> r = free_reduce(chain[0]);
            if (!r.empty()) pr.relators.push_back(std::move(r));
        } else {
            for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
                std::vector<int> r = chain[k];
                for (int letter : inverse_word(chain[k + 1])) r.push_back(letter);
                r = free_reduce(r);
                if (!r.empty()) pr.relators.push_back(std::move(r));
            }
        }
        if (tokens[pos].kind == TokKind::punct && tokens[pos].text == ",") {
            ++pos;
            continue;
        }
        if (tokens[pos].kind != TokKind::end) fail_at(tokens[pos], "expected ',' or end of input");
    }
    return pr;
}

std::vector<int> parse_word(const std::string& text, const Presentation& pr) {
    std::vector<Token> tokens = tokenize(text);
    std::unordered_map<std::string, int> gens = generator_map(pr.generators);
    WordParser parser(tokens, 0, gens);
    std::vector<int> word = free_reduce(parser.parse_word());
    if (tokens[parser.position()].kind != TokKind::end)
        fail_at(tokens[parser.position()], "expected end of input");
    return word;
}

std::string format_word(const std::vector<int>& word, const Presentation& pr) {
    if (word.empty()) return "1";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < word.size()) {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        long run = static_cast<long>(j - i);
        int letter = word[i];
        int index = letter > 0 ? letter - 1 : -letter - 1;
        if (index >= static_cast<int>(pr.generators.size()))
            throw input_error("word refers to a generator outside the presentation");
        if (!first) os << "*";
        os << pr.generators[static_cast<std::size_t>(index)];
        long exponent = letter > 0 ? run : -run;
        if (exponent != 1) os << "^" << exponent;
        first = false;
        i = j;
    }
    return os.str();
}

Permutation evaluate_word(const std::vector<int>& word, const std::vector<Permutation>& images,
                          int degree) {
    Permutation result = Permutation::identity(degree);
    for (int letter : word) {
        int index = letter > 0 ? letter - 1 : -letter - 1;
        if (index >= static_cast<int>(images.size()))
            throw input_error("word refers to a generator with no image");
        const Permutation& g = images[static_cast<std::size_t>(index)];
        result = letter > 0 ? compose(result, g) : compose(result, g.inverse());
    }
    return result;
}

}  // namespace derange
