#include <segre/parser.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace segre {

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
};

class Lexer {
public:
    Lexer(const std::string& s, int line) : s_(s), line_(line) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, line_); }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::End, ""};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            tok_ = {Token::Number, s_.substr(start, pos_ - start)};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Ident, s_.substr(start, pos_ - start)};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': tok_ = {Token::Plus, "+"}; return;
            case '-': tok_ = {Token::Minus, "-"}; return;
            case '*': tok_ = {Token::Star, "*"}; return;
            case '/': tok_ = {Token::Slash, "/"}; return;
            case '^': tok_ = {Token::Caret, "^"}; return;
            case '(': tok_ = {Token::LParen, "("}; return;
            case ')': tok_ = {Token::RParen, ")"}; return;
            default: throw parse_error(std::string("unexpected character '") + c + "'", line_);
        }
    }

    const std::string& s_;
    int line_;
    size_t pos_ = 0;
    Token tok_{Token::End, ""};
};

// expr := term (('+'|'-') term)*
// term := factor (('*'|'/') factor)*        division only by constants
// factor := ('+'|'-')* primary ('^' uint)?
// primary := uint | 'i' | variable | '(' expr ')'
class PolyParser {
public:
    PolyParser(const std::string& text, const std::vector<std::string>& vars, unsigned cap,
               int line)
        : lex_(text, line), vars_(vars), cap_(cap) {
        for (size_t k = 0; k < vars.size(); ++k) index_[vars[k]] = k;
    }

    TruncatedSeries parse() {
        TruncatedSeries out = expr();
        if (lex_.peek().kind != Token::End) lex_.fail("trailing input after expression");
        return out;
    }

private:
    TruncatedSeries expr() {
        TruncatedSeries acc = term();
        while (true) {
            if (lex_.peek().kind == Token::Plus) {
                lex_.take();
                acc += term();
            } else if (lex_.peek().kind == Token::Minus) {
                lex_.take();
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    TruncatedSeries term() {
        TruncatedSeries acc = factor();
        while (true) {
            if (lex_.peek().kind == Token::Star) {
                lex_.take();
                acc = acc * factor();
            } else if (lex_.peek().kind == Token::Slash) {
                lex_.take();
                TruncatedSeries d = factor();
                if (d.term_count() > 1 || d.degree() > 0)
                    lex_.fail("division is only defined by nonzero constants");
                GaussRational c = d.constant_term();
                if (c.is_zero()) lex_.fail("division by zero");
                acc = (GaussRational(1) / c) * acc;
            } else {
                break;
            }
        }
        return acc;
    }

    TruncatedSeries factor() {
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            return -factor();
        }
        if (lex_.peek().kind == Token::Plus) {
            lex_.take();
            return factor();
        }
        TruncatedSeries base = primary();
        if (lex_.peek().kind == Token::Caret) {
            lex_.take();
            if (lex_.peek().kind != Token::Number) lex_.fail("exponent must be an integer");
            unsigned long e = std::stoul(lex_.take().text);
            TruncatedSeries acc = TruncatedSeries::constant(vars_, cap_, GaussRational(1));
            for (unsigned long k = 0; k < e; ++k) acc = acc * base;
            return acc;
        }
        return base;
    }

    TruncatedSeries primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Number:
                return TruncatedSeries::constant(vars_, cap_, GaussRational(mpq_class(t.text)));
            case Token::Ident: {
                if (t.text == "i")
                    return TruncatedSeries::constant(vars_, cap_, GaussRational::i());
                auto it = index_.find(t.text);
                if (it == index_.end()) lex_.fail("unknown variable '" + t.text + "'");
                return TruncatedSeries::variable(vars_, cap_, it->second);
            }
            case Token::LParen: {
                TruncatedSeries inner = expr();
                if (lex_.peek().kind != Token::RParen) lex_.fail("expected ')'");
                lex_.take();
                return inner;
            }
            default: lex_.fail("expected a number, variable or parenthesised expression");
        }
    }

    Lexer lex_;
    const std::vector<std::string>& vars_;
    unsigned cap_;
    std::map<std::string, size_t> index_;
};

// one "key = value" line; '#' starts a comment
bool split_kv(const std::string& line, std::string& key, std::string& value) {
    std::string body = line.substr(0, line.find('#'));
    size_t eq = body.find('=');
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (eq == std::string::npos) {
        if (!trim(body).empty()) return false;
        key.clear();
        return true; // blank / comment line
    }
    key = trim(body.substr(0, eq));
    value = trim(body.substr(eq + 1));
    return true;
}

unsigned parse_uint(const std::string& s, const std::string& what, int line) {
    if (s.empty()) throw parse_error("empty value for " + what, line);
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw parse_error(what + " must be a nonnegative integer", line);
    return static_cast<unsigned>(std::stoul(s));
}

} // namespace

TruncatedSeries parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                                 unsigned cap, int line) {
    return PolyParser(text, vars, cap, line).parse();
}

ManifoldFile read_manifold_file(const std::string& text) {
    ManifoldFile out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_n = false, saw_codim = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string key, value;
        if (!split_kv(line, key, value)) throw parse_error("expected 'key = value'", lineno);
        if (key.empty()) continue;
        if (key == "n") {
            out.n = parse_uint(value, "n", lineno);
            saw_n = true;
        } else if (key == "codim") {
            out.codim = parse_uint(value, "codim", lineno);
            saw_codim = true;
        } else if (key == "vars") {
            std::istringstream vs(value);
            std::string name;
            while (vs >> name) out.display_names.push_back(name);
        } else if (key == "defining") {
            out.defining.emplace_back(value, lineno);
        } else {
            throw parse_error("unknown field '" + key + "'", lineno);
        }
    }
    if (!saw_n) throw parse_error("missing field 'n'");
    if (!saw_codim) throw parse_error("missing field 'codim'");
    if (out.n < 2) throw parse_error("need ambient dimension n >= 2");
    if (out.codim < 1 || out.codim >= out.n)
        throw parse_error("need codimension with 1 <= codim <= n-1");
    if (out.defining.size() != out.codim)
        throw parse_error("expected " + std::to_string(out.codim) + " 'defining' lines, got " +
                          std::to_string(out.defining.size()));
    if (!out.display_names.empty() && out.display_names.size() != out.n)
        throw parse_error("'vars' must list exactly n names");
    return out;
}

MapFile read_map_file(const std::string& text) {
    MapFile out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string key, value;
        if (!split_kv(line, key, value)) throw parse_error("expected 'key = value'", lineno);
        if (key.empty()) continue;
        if (key == "source") {
            out.source_ref = value;
        } else if (key == "target") {
            out.target_ref = value;
        } else if (key == "component") {
            out.components.emplace_back(value, lineno);
        } else {
            throw parse_error("unknown field '" + key + "'", lineno);
        }
    }
    if (out.components.empty()) throw parse_error("map file declares no components");
    return out;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace segre
