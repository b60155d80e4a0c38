#pragma once

// KRSS-style s-expression reader and writer. Statement keywords are matched
// case-insensitively; names keep their case. ';' starts a line comment.

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mythos/model.hpp"
#include "mythos/rules.hpp"

namespace mythos::krss {

class ParseError : public Error {
public:
    SourceSpan span;
    ParseError(std::string message, SourceSpan at)
        : Error(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " +
                std::move(message)),
          span(at) {}
};

// A parsed file: statements loaded into a KB, DEFINE-RULE statements apart.
struct Document {
    KnowledgeBase kb;
    std::vector<Rule> rules;
};

namespace detail {

enum class TokenKind { LParen, RParen, Word, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) {}

    const Token& peek() {
        if (!lookahead_) lookahead_ = scan();
        return *lookahead_;
    }

    Token next() {
        if (lookahead_) {
            Token t = *lookahead_;
            lookahead_.reset();
            return t;
        }
        return scan();
    }

private:
    Token scan() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();

            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
        Token t;
        t.span = SourceSpan{line_, col_, 1};
        if (pos_ >= src_.size()) {
            t.kind = TokenKind::End;
            return t;
        }
        char c = src_[pos_];
        if (c == '(' || c == ')') {
            t.kind = c == '(' ? TokenKind::LParen : TokenKind::RParen;
            t.text = c;
            advance();
            return t;
        }
        t.kind = TokenKind::Word;
        while (pos_ < src_.size()) {
            char w = src_[pos_];
            if (w == '(' || w == ')' || w == ';' ||
                std::isspace(static_cast<unsigned char>(w)))
                break;
            t.text += w;
            advance();
        }
        t.span.length = static_cast<int>(t.text.size());
        return t;
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::optional<Token> lookahead_;
};

inline std::string upper(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

inline bool is_integer(const std::string& s) {
    std::size_t i = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

class Parser {
public:
    Parser(const std::string& text, Source source) : lex_(text), source_(source) {}

    Document parse_all() {
        Document doc;
        while (lex_.peek().kind != TokenKind::End) parse_statement(doc);
        name_rules(doc.rules);
        return doc;
    }

    ConceptPtr parse_single_concept() {
        ConceptPtr c = parse_concept(0);
        Token t = lex_.next();
        if (t.kind != TokenKind::End)
            throw ParseError("unexpected trailing input '" + t.text + "'", t.span);
        return c;
    }

private:
    static constexpr int kMaxDepth = 256;

    [[noreturn]] void fail(const std::string& message, const Token& t) {
        throw ParseError(message, t.span);
    }

    Token expect_word(const char* what) {
        Token t = lex_.next();
        if (t.kind != TokenKind::Word) fail(std::string("expected ") + what, t);
        return t;
    }

    void expect_rparen() {
        Token t = lex_.next();
        if (t.kind != TokenKind::RParen) fail("expected ')'", t);
    }

    long long parse_integer() {
        Token t = expect_word("an integer");
        if (!is_integer(t.text)) fail("expected an integer, got '" + t.text + "'", t);
        try {
            return std::stoll(t.text);
        } catch (const std::exception&) {
            fail("integer out of range: " + t.text, t);
        }
    }

    void parse_statement(Document& doc) {
        Token open = lex_.next();
        if (open.kind != TokenKind::LParen) fail("expected '(' starting a statement", open);
        Token kw = expect_word("a statement keyword");
        const std::string k = upper(kw.text);
        KnowledgeBase& kb = doc.kb;

        if (k == "DEFINE-PRIMITIVE-ROLE") {
            Token name = expect_word("a role name");
            RoleDecl& role = kb.ensure_role(name.text);
            role.declared = true;
            while (lex_.peek().kind == TokenKind::Word) {
                Token opt = lex_.next();
                const std::string option = upper(opt.text);
                if (option == ":PARENT") {
                    Token parent = expect_word("a parent role name");
                    kb.add_parent(name.text, parent.text);
                } else if (option == ":INVERSE") {
                    Token inv = expect_word("an inverse role name");
                    kb.set_inverse(name.text, inv.text);
                } else {
                    fail("unknown role option '" + opt.text + "'", opt);
                }
            }
            expect_rparen();
        } else if (k == "IMPLIES" || k == "EQUIVALENT" || k == "DISJOINT") {
            ConceptPtr l = parse_concept(0);
            ConceptPtr r = parse_concept(0);
            expect_rparen();
            Axiom ax;
            ax.kind = k == "IMPLIES" ? AxiomKind::GCI
                                     : (k == "EQUIVALENT" ? AxiomKind::Equiv : AxiomKind::Disjoint);
            ax.left = std::move(l);
            ax.right = std::move(r);
            ax.source = source_;
            ax.span = kw.span;
            kb.add_axiom(std::move(ax));
        } else if (k == "DEFINE-CONCEPT") {
            // sugar for (EQUIVALENT name C)
            Token name = expect_word("a concept name");
            ConceptPtr c = parse_concept(0);
            expect_rparen();
            Axiom ax = equiv(atom(name.text), std::move(c), source_);
            ax.span = kw.span;
            kb.add_axiom(std::move(ax));
        } else if (k == "INSTANCE") {
            Token ind = expect_word("an individual name");
            ConceptPtr c = parse_concept(0);
            expect_rparen();
            Assertion a = concept_assertion(ind.text, std::move(c), source_);
            a.span = kw.span;
            kb.add_assertion(std::move(a));
        } else if (k == "RELATED") {
            Token subj = expect_word("an individual name");
            Token obj = expect_word("an individual name");
            Token role = expect_word("a role name");
            expect_rparen();
            Assertion a = role_assertion(subj.text, role.text, obj.text, source_);
            a.span = kw.span;
            kb.add_assertion(std::move(a));
        } else if (k == "DATA-VALUE") {
            Token ind = expect_word("an individual name");
            Token attr = expect_word("an attribute name");
            long long v = parse_integer();
            expect_rparen();
            Assertion a = data_assertion(ind.text, attr.text, v, source_);
            a.span = kw.span;
            kb.add_assertion(std::move(a));
        } else if (k == "DEFINE-RULE") {
            Rule rule;
            rule.head = parse_rule_atom(true);
            // Body: either flat atoms or a single (AND atom*) wrapper.
            while (lex_.peek().kind == TokenKind::LParen) {
                Token open = lex_.next();
                if (lex_.peek().kind == TokenKind::Word && upper(lex_.peek().text) == "AND") {
                    lex_.next();
                    while (lex_.peek().kind == TokenKind::LParen)
                        rule.body.push_back(parse_rule_atom(false));
                    expect_rparen();
                } else {
                    rule.body.push_back(finish_rule_atom(open, false));
                }
            }
            expect_rparen();
            doc.rules.push_back(std::move(rule));
        } else {
            fail("unknown statement '" + kw.text + "'", kw);
        }
    }

    RuleAtom parse_rule_atom(bool is_head) {
        Token open = lex_.next();
        if (open.kind != TokenKind::LParen) fail("expected '(' starting a rule atom", open);
        return finish_rule_atom(open, is_head);
    }

    // `open` is the already-consumed '('.
    RuleAtom finish_rule_atom(const Token& open, bool is_head) {
        std::vector<Token> words;
        while (lex_.peek().kind == TokenKind::Word) words.push_back(lex_.next());
        expect_rparen();

        RuleAtom atom;
        if (words.size() == 2) {
            atom.kind = RuleAtom::Kind::Concept;
            atom.subject = to_term(words[0]);
            atom.predicate = words[1].text;
        } else if (words.size() == 3) {
            if (is_head)
                fail("rule heads must be concept atoms: (term ConceptName)", open);
            atom.kind = RuleAtom::Kind::Role;
            atom.subject = to_term(words[0]);
            atom.object = to_term(words[1]);
            atom.predicate = words[2].text;
        } else {
            fail("rule atoms take 2 or 3 elements", open);
        }
        if (to_term(words.back()).is_variable)
            fail("predicate position cannot be a variable", words.back());
        return atom;
    }

    static RuleTerm to_term(const Token& t) {
        if (!t.text.empty() && t.text[0] == '?') return rule_var(t.text.substr(1));
        return rule_ind(t.text);
    }

    ConceptPtr parse_concept(int depth) {
        if (depth > kMaxDepth)
            fail("concept nesting deeper than " + std::to_string(kMaxDepth), lex_.peek());
        Token t = lex_.next();
        if (t.kind == TokenKind::Word) {
            const std::string k = upper(t.text);
            if (k == "*TOP*") return top();
            if (k == "*BOTTOM*") return bottom();
            return atom(t.text);
        }
        if (t.kind != TokenKind::LParen) fail("expected a concept", t);
        Token head = expect_word("a concept constructor");
        const std::string k = upper(head.text);

        if (k == "AND" || k == "OR") {
            std::vector<ConceptPtr> parts;
            while (lex_.peek().kind != TokenKind::RParen && lex_.peek().kind != TokenKind::End)
                parts.push_back(parse_concept(depth + 1));
            expect_rparen();
            if (parts.size() < 2) fail(k + " needs at least two operands", head);
            return k == "AND" ? conj(std::move(parts)) : disj(std::move(parts));
        }
        if (k == "NOT") {
            ConceptPtr inner = parse_concept(depth + 1);
            expect_rparen();
            return negation(std::move(inner));
        }
        if (k == "SOME" || k == "ALL") {
            Token role = expect_word("a role name");
            ConceptPtr filler = parse_concept(depth + 1);
            expect_rparen();
            return k == "SOME" ? some(role.text, std::move(filler))
                               : all(role.text, std::move(filler));
        }
        if (k == "ONE-OF") {
            std::vector<std::string> inds;
            while (lex_.peek().kind == TokenKind::Word) inds.push_back(lex_.next().text);
            expect_rparen();
            if (inds.empty()) fail("ONE-OF needs at least one individual", head);
            return one_of(std::move(inds));
        }
        if (k == ">" || k == ">=" || k == "<" || k == "<=") {
            Token attr = expect_word("an attribute name");
            long long bound = parse_integer();
            expect_rparen();
            FacetOp op = k == ">" ? FacetOp::Greater
                                  : k == ">=" ? FacetOp::GreaterEqual
                                              : k == "<" ? FacetOp::Less : FacetOp::LessEqual;
            return facet(attr.text, op, bound);
        }
        fail("unknown concept constructor '" + head.text + "'", head);
    }

    // Rules carry no name in the syntax; derive one from the head concept.
    static void name_rules(std::vector<Rule>& rules) {
        std::vector<std::string> taken;
        for (auto& r : rules) {
            std::string base = "rule-";
            for (char c : r.head.predicate)
                base += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            std::string name = base;
            int n = 1;
            while (std::find(taken.begin(), taken.end(), name) != taken.end())
                name = base + "-" + std::to_string(++n);
            taken.push_back(name);
            r.name = name;
        }
    }

    Lexer lex_;
    Source source_;
};

} // namespace detail

inline Document parse_document(const std::string& text, Source source = Source::Background) {
    return detail::Parser(text, source).parse_all();
}

// Loads every statement into a KnowledgeBase. DEFINE-RULE statements are
// accepted but returned only by parse_document.
inline KnowledgeBase parse_kb(const std::string& text, Source source = Source::Background) {
    return parse_document(text, source).kb;
}

inline ConceptPtr parse_concept(const std::string& text) {
    return detail::Parser(text, Source::Background).parse_single_concept();
}

// ---------------------------------------------------------------------------
// Serialization: canonical uppercase keywords, one statement per line.
// ---------------------------------------------------------------------------

inline std::string serialize_concept(const ConceptPtr& c) { return to_string(c); }

inline std::string serialize_axiom(const Axiom& ax) {
    switch (ax.kind) {
        case AxiomKind::GCI:
            return "(IMPLIES " + to_string(ax.left) + " " + to_string(ax.right) + ")";
        case AxiomKind::Equiv:
            return "(EQUIVALENT " + to_string(ax.left) + " " + to_string(ax.right) + ")";
        case AxiomKind::Disjoint:
            return "(DISJOINT " + to_string(ax.left) + " " + to_string(ax.right) + ")";
    }
    return "";
}

inline std::string serialize_assertion(const Assertion& a) {
    switch (a.kind) {
        case AssertionKind::Concept:
            return "(INSTANCE " + a.individual + " " + to_string(a.concept_expr) + ")";
        case AssertionKind::Role:
            return "(RELATED " + a.individual + " " + a.object + " " + a.role + ")";
        case AssertionKind::Data:
            return "(DATA-VALUE " + a.individual + " " + a.role + " " + std::to_string(a.value) +
                   ")";
    }
    return "";
}

inline std::string serialize_rule(const Rule& r) {
    auto term = [](const RuleTerm& t) { return t.is_variable ? "?" + t.name : t.name; };
    std::string out = "(DEFINE-RULE (" + term(r.head.subject) + " " + r.head.predicate + ")";
    for (const auto& atom : r.body) {
        out += " (" + term(atom.subject);
        if (atom.kind == RuleAtom::Kind::Role) out += " " + term(atom.object);
        out += " " + atom.predicate + ")";
    }
    return out + ")";
}

inline std::string serialize_kb(const KnowledgeBase& kb) {
    std::string out;
    for (const auto& r : kb.rbox) {
        if (!r.declared && r.parents.empty() && !r.inverse_of) continue;
        std::string line = "(DEFINE-PRIMITIVE-ROLE " + r.name;
        for (const auto& p : r.parents) line += " :PARENT " + p;
        // one direction is enough; parsing restores the symmetric closure
        if (r.inverse_of && r.name < *r.inverse_of) line += " :INVERSE " + *r.inverse_of;
        out += line + ")\n";
    }
    for (const auto& ax : kb.tbox) out += serialize_axiom(ax) + "\n";
    for (const auto& a : kb.abox) out += serialize_assertion(a) + "\n";
    for (const auto& an : kb.annotations)
        out += "; annotation " + an.individual + " " + annotation_key_name(an.key) + " " +
               an.value + "\n";
    return out;
}

inline std::string serialize_document(const Document& doc) {
    std::string out = serialize_kb(doc.kb);
    for (const auto& r : doc.rules) out += serialize_rule(r) + "\n";
    return out;
}

} // namespace mythos::krss
