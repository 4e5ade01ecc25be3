#include "dimcalc/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace dimcalc {

const char* query_kind_name(QueryKind k) {
    switch (k) {
        case QueryKind::Invariants: return "invariants";
        case QueryKind::Dim: return "dim";
        case QueryKind::VDim: return "vdim";
        case QueryKind::Jaffard: return "jaffard";
        case QueryKind::TensorDim: return "tensor-dim";
        case QueryKind::TensorVDim: return "tensor-vdim";
        case QueryKind::TensorJaffard: return "tensor-jaffard";
        case QueryKind::Alphas: return "alphas";
        case QueryKind::RawThm19: return "raw-thm19";
    }
    return "?";
}

namespace {

enum class TokKind { LParen, RParen, Atom, Nat, End };

struct Token {
    TokKind kind;
    std::string text;
    int nat = 0;
    Span span;
    size_t begin = 0;
    size_t end = 0;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ';') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Span here{line, col};
        if (c == '(' || c == ')') {
            out.push_back({c == '(' ? TokKind::LParen : TokKind::RParen, std::string(1, c), 0,
                           here, i, i + 1});
            advance(1);
            continue;
        }
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
               text[i] != '(' && text[i] != ')' && text[i] != ';') {
            advance(1);
        }
        std::string word = text.substr(start, i - start);
        if (std::isdigit(static_cast<unsigned char>(word[0]))) {
            if (word.find_first_not_of("0123456789") != std::string::npos || word.size() > 6)
                throw ParseError("malformed number '" + word + "'", here);
            out.push_back({TokKind::Nat, word, std::stoi(word), here, start, i});
        } else {
            out.push_back({TokKind::Atom, word, 0, here, start, i});
        }
    }
    out.push_back({TokKind::End, "<end of input>", 0, {line, col}, i, i});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, std::vector<Token> tokens)
        : text_(text), toks_(std::move(tokens)) {}

    SourceProgram run() {
        SourceProgram program;
        // Definitions first.
        while (at_list_head("def")) {
            Span span = peek().span;
            expect(TokKind::LParen, "(");
            expect_atom("def");
            Token name = expect(TokKind::Atom, "a name");
            if (name.text[0] == ':')
                throw ParseError("'" + name.text + "' is not a valid name", name.span);
            if (reserved(name.text))
                throw ParseError("'" + name.text + "' is a reserved word", name.span);
            if (env_.count(name.text))
                throw ParseError("name '" + name.text + "' is already defined", name.span);
            ExprPtr expr = parse_expr();
            expect(TokKind::RParen, ")");
            env_[name.text] = expr;
            program.defs.push_back({name.text, expr, span});
        }
        // Then queries.
        while (peek().kind != TokKind::End) {
            if (at_list_head("def"))
                throw ParseError("definitions must precede queries", peek().span);
            program.queries.push_back(parse_query());
        }
        return program;
    }

private:
    const std::string& text_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
    std::map<std::string, ExprPtr> env_;

    static bool reserved(const std::string& w) {
        static const char* words[] = {"def", "k", "field", "af", "poly", "pullback",
                                      "invariants", "dim", "vdim", "jaffard", "tensor-dim",
                                      "tensor-vdim", "tensor-jaffard", "alphas", "raw-thm19"};
        for (const char* r : words)
            if (w == r) return true;
        return false;
    }

    const Token& peek(size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }

    bool at_list_head(const std::string& word) const {
        return peek().kind == TokKind::LParen && peek(1).kind == TokKind::Atom &&
               peek(1).text == word;
    }

    Token expect(TokKind kind, const std::string& what) {
        const Token& t = peek();
        if (t.kind != kind)
            throw ParseError("expected " + what + ", found '" + t.text + "'", t.span);
        ++pos_;
        return t;
    }

    Token expect_atom(const std::string& word) {
        const Token& t = peek();
        if (t.kind != TokKind::Atom || t.text != word)
            throw ParseError("expected '" + word + "', found '" + t.text + "'", t.span);
        ++pos_;
        return t;
    }

    int expect_nat(const std::string& what) {
        const Token& t = peek();
        if (t.kind != TokKind::Nat)
            throw ParseError("expected " + what + ", found '" + t.text + "'", t.span);
        ++pos_;
        return t.nat;
    }

    ExprPtr parse_expr() {
        const Token& t = peek();
        if (t.kind == TokKind::Atom) {
            auto it = env_.find(t.text);
            if (it == env_.end())
                throw ParseError("unbound name '" + t.text + "'", t.span);
            ++pos_;
            return it->second;
        }
        expect(TokKind::LParen, "'(' or a defined name");
        Token head = expect(TokKind::Atom,
                            "one of 'k', 'field', 'af', 'poly', 'pullback'");
        ExprPtr result;
        if (head.text == "k") {
            result = make_k();
        } else if (head.text == "field") {
            result = make_field(expect_nat("a transcendence degree"));
        } else if (head.text == "af") {
            expect_atom(":tdeg");
            int tdeg = expect_nat("a transcendence degree");
            expect_atom(":dim");
            int dim = expect_nat("a dimension");
            std::optional<MaximalIdealData> maximal;
            if (peek().kind == TokKind::Atom && peek().text == ":maximal") {
                ++pos_;
                expect(TokKind::LParen, "(");
                expect_atom(":ht");
                int ht = expect_nat("a height");
                expect_atom(":res-tdeg");
                int res = expect_nat("a residue transcendence degree");
                bool unique = false;
                if (peek().kind == TokKind::Atom && peek().text == ":unique") {
                    unique = true;
                    ++pos_;
                }
                expect(TokKind::RParen, ")");
                maximal = MaximalIdealData{ht, res, unique};
            }
            result = make_af(tdeg, dim, maximal);
        } else if (head.text == "poly") {
            ExprPtr base = parse_expr();
            const Token& nt = peek();
            int n = expect_nat("a variable count");
            if (n < 1)
                throw ParseError("polynomial extension needs at least one variable", nt.span);
            result = make_poly(base, n);
        } else if (head.text == "pullback") {
            expect_atom(":T");
            ExprPtr t_part = parse_expr();
            expect_atom(":D");
            ExprPtr d_part = parse_expr();
            result = make_pullback(t_part, d_part);
        } else {
            throw ParseError("expected one of 'k', 'field', 'af', 'poly', 'pullback', found '" +
                                 head.text + "'",
                             head.span);
        }
        expect(TokKind::RParen, ")");
        return result;
    }

    Query parse_query() {
        const Token& open = peek();
        expect(TokKind::LParen,
               "a query: one of '(invariants', '(dim', '(vdim', '(jaffard', '(tensor-dim', "
               "'(tensor-vdim', '(tensor-jaffard', '(alphas', '(raw-thm19'");
        Token head = expect(TokKind::Atom, "a query keyword");
        static const std::map<std::string, std::pair<QueryKind, int>> kinds = {
            {"invariants", {QueryKind::Invariants, 1}},
            {"dim", {QueryKind::Dim, 1}},
            {"vdim", {QueryKind::VDim, 1}},
            {"jaffard", {QueryKind::Jaffard, 1}},
            {"tensor-dim", {QueryKind::TensorDim, 2}},
            {"tensor-vdim", {QueryKind::TensorVDim, 2}},
            {"tensor-jaffard", {QueryKind::TensorJaffard, 2}},
            {"alphas", {QueryKind::Alphas, 2}},
            {"raw-thm19", {QueryKind::RawThm19, 2}},
        };
        auto it = kinds.find(head.text);
        if (it == kinds.end())
            throw ParseError("unknown query '" + head.text + "'", head.span);
        Query q;
        q.kind = it->second.first;
        q.span = open.span;
        for (int k = 0; k < it->second.second; ++k) q.args.push_back(parse_expr());
        Token close = expect(TokKind::RParen, ")");
        q.display = display_slice(open.begin, close.end);
        return q;
    }

    std::string display_slice(size_t begin, size_t end) const {
        std::string out;
        bool space = false;
        for (size_t k = begin; k < end; ++k) {
            char c = text_[k];
            if (std::isspace(static_cast<unsigned char>(c))) {
                space = true;
                continue;
            }
            if (space && !out.empty() && out.back() != '(' && c != ')') out += ' ';
            space = false;
            out += c;
        }
        return out;
    }
};

}  // namespace

SourceProgram parse(const std::string& text) {
    Parser parser(text, lex(text));
    return parser.run();
}

std::string render_program(const SourceProgram& p) {
    std::ostringstream out;
    for (const auto& def : p.defs)
        out << "(def " << def.name << " " << to_sexpr(def.expr) << ")\n";
    for (const auto& q : p.queries) {
        out << "(" << query_kind_name(q.kind);
        for (const auto& arg : q.args) out << " " << to_sexpr(arg);
        out << ")\n";
    }
    return out.str();
}

bool structurally_equal(const SourceProgram& a, const SourceProgram& b) {
    if (a.defs.size() != b.defs.size() || a.queries.size() != b.queries.size()) return false;
    for (size_t i = 0; i < a.defs.size(); ++i) {
        if (a.defs[i].name != b.defs[i].name) return false;
        if (!(*a.defs[i].expr == *b.defs[i].expr)) return false;
    }
    for (size_t i = 0; i < a.queries.size(); ++i) {
        const Query& qa = a.queries[i];
        const Query& qb = b.queries[i];
        if (qa.kind != qb.kind || qa.args.size() != qb.args.size()) return false;
        for (size_t k = 0; k < qa.args.size(); ++k)
            if (!(*qa.args[k] == *qb.args[k])) return false;
    }
    return true;
}

}  // namespace dimcalc
