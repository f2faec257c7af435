#include "deltablock/parse.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace deltablock {

std::string format(const parse_error& e) {
    std::ostringstream out;
    out << e.pos.line << ':' << e.pos.column << ": error: " << e.message;
    return out.str();
}

namespace {

enum class token_kind {
    identifier,
    lbrace,
    rbrace,
    comma,
    colon,
    dot,
    arrow,
    and_and,
    or_or,
    bang,
    lparen,
    rparen,
    eof,
};

struct token {
    token_kind kind;
    std::string text;
    source_pos pos;
};

/// Internal throw type; the public API converts it back to a plain value.
struct parse_failure {
    parse_error err;
};

[[noreturn]] void fail(parse_error_kind kind, source_pos pos, std::string message) {
    throw parse_failure{parse_error{kind, pos, std::move(message)}};
}

bool is_keyword(std::string_view word) {
    static constexpr std::array reserved = {
        "model",  "in",     "out",  "mref",   "subsystem", "connect", "delta",
        "aoc",    "after",  "modify", "add",  "remove",    "weak",    "block",
        "replace", "with",  "as",   "product", "deltas",
    };
    for (const char* kw : reserved)
        if (word == kw) return true;
    return false;
}

std::vector<token> lex(std::string_view src) {
    std::vector<token> out;
    std::size_t i = 0;
    source_pos pos;
    auto bump = [&](char c) {
        if (c == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
        ++i;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            bump(c);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') bump(src[i]);
            continue;
        }
        source_pos start = pos;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                      src[i] == '_')) {
                word += src[i];
                bump(src[i]);
            }
            out.push_back({token_kind::identifier, std::move(word), start});
            continue;
        }
        auto single = [&](token_kind kind) {
            out.push_back({kind, std::string{c}, start});
            bump(c);
        };
        switch (c) {
        case '{': single(token_kind::lbrace); break;
        case '}': single(token_kind::rbrace); break;
        case ',': single(token_kind::comma); break;
        case ':': single(token_kind::colon); break;
        case '.': single(token_kind::dot); break;
        case '(': single(token_kind::lparen); break;
        case ')': single(token_kind::rparen); break;
        case '!': single(token_kind::bang); break;
        case '-':
            if (i + 1 < src.size() && src[i + 1] == '>') {
                bump('-');
                bump('>');
                out.push_back({token_kind::arrow, "->", start});
            } else {
                fail(parse_error_kind::syntax, start, "expected '->'");
            }
            break;
        case '&':
            if (i + 1 < src.size() && src[i + 1] == '&') {
                bump('&');
                bump('&');
                out.push_back({token_kind::and_and, "&&", start});
            } else {
                fail(parse_error_kind::syntax, start, "expected '&&'");
            }
            break;
        case '|':
            if (i + 1 < src.size() && src[i + 1] == '|') {
                bump('|');
                bump('|');
                out.push_back({token_kind::or_or, "||", start});
            } else {
                fail(parse_error_kind::syntax, start, "expected '||'");
            }
            break;
        default:
            fail(parse_error_kind::syntax, start,
                 "unexpected character '" + std::string{c} + "'");
        }
    }
    out.push_back({token_kind::eof, "", pos});
    return out;
}

std::string describe(const token& t) {
    if (t.kind == token_kind::eof) return "end of input";
    return "'" + t.text + "'";
}

class parser {
public:
    explicit parser(std::string_view text) : toks_(lex(text)) {}

    model_library library_file() {
        model_library lib;
        while (!at_end()) {
            expect_word("model");
            token name = expect_identifier("model name");
            if (lib.find(name.text))
                fail(parse_error_kind::duplicate_name, name.pos,
                     "model '" + name.text + "' is already defined");
            expect(token_kind::lbrace);
            context body = decls_until_rbrace();
            lib.models.push_back(model{name.text, std::move(body)});
        }
        return lib;
    }

    std::vector<delta> delta_file() {
        std::vector<delta> out;
        while (!at_end()) {
            delta d = delta_def();
            for (const auto& seen : out)
                if (seen.name == d.name)
                    fail(parse_error_kind::duplicate_name, last_delta_name_pos_,
                         "delta '" + d.name + "' is already defined");
            out.push_back(std::move(d));
        }
        return out;
    }

    delta single_delta() {
        delta d = delta_def();
        if (!at_end())
            fail(parse_error_kind::syntax, peek().pos,
                 "expected end of input after delta, found " + describe(peek()));
        return d;
    }

    std::vector<product_configuration> product_file() {
        std::vector<product_configuration> out;
        while (!at_end()) {
            expect_word("product");
            token name = expect_identifier("product name");
            for (const auto& seen : out)
                if (seen.name == name.text)
                    fail(parse_error_kind::duplicate_product, name.pos,
                         "product '" + name.text + "' is already defined");
            expect(token_kind::lbrace);
            expect_word("deltas");
            product_configuration config{name.text, {}};
            if (!at(token_kind::rbrace)) {
                while (true) {
                    token d = expect_identifier("delta name");
                    for (const auto& seen : config.deltas)
                        if (seen == d.text)
                            fail(parse_error_kind::duplicate_name, d.pos,
                                 "delta '" + d.text + "' is listed twice in product '" +
                                     name.text + "'");
                    config.deltas.push_back(d.text);
                    if (!at(token_kind::comma)) break;
                    advance();
                }
            }
            expect(token_kind::rbrace);
            out.push_back(std::move(config));
        }
        return out;
    }

private:
    std::vector<token> toks_;
    std::size_t i_ = 0;
    source_pos last_delta_name_pos_;

    const token& peek() const { return toks_[i_]; }
    const token& advance() { return toks_[i_++]; }
    bool at_end() const { return peek().kind == token_kind::eof; }
    bool at(token_kind k) const { return peek().kind == k; }

    bool at_word(std::string_view word) const {
        return peek().kind == token_kind::identifier && peek().text == word;
    }

    const token& expect(token_kind k) {
        if (!at(k)) {
            static const char* names[] = {"identifier", "'{'", "'}'", "','", "':'", "'.'",
                                          "'->'", "'&&'", "'||'", "'!'", "'('", "')'",
                                          "end of input"};
            fail(parse_error_kind::syntax, peek().pos,
                 std::string{"expected "} + names[static_cast<int>(k)] + ", found " +
                     describe(peek()));
        }
        return advance();
    }

    void expect_word(const char* word) {
        if (!at_word(word))
            fail(parse_error_kind::syntax, peek().pos,
                 "expected '" + std::string{word} + "', found " + describe(peek()));
        advance();
    }

    token expect_identifier(const char* what) {
        if (peek().kind != token_kind::identifier)
            fail(parse_error_kind::syntax, peek().pos,
                 "expected " + std::string{what} + ", found " + describe(peek()));
        if (is_keyword(peek().text))
            fail(parse_error_kind::syntax, peek().pos,
                 "expected " + std::string{what} + ", found reserved word '" + peek().text +
                     "'");
        return advance();
    }

    // ─── core model declarations ─────────────────────────────────────────

    void add_port_checked(context& ctx, port_direction dir, const token& name) {
        if (ctx.name_taken(name.text))
            fail(parse_error_kind::duplicate_name, name.pos,
                 "name '" + name.text + "' is already used in this context");
        (dir == port_direction::in ? ctx.in_ports : ctx.out_ports).push_back(name.text);
    }

    void add_block_checked(context& ctx, block b, const token& name) {
        if (ctx.name_taken(name.text))
            fail(parse_error_kind::duplicate_name, name.pos,
                 "name '" + name.text + "' is already used in this context");
        ctx.blocks.push_back(std::move(b));
    }

    endpoint parse_endpoint() {
        token first = expect_identifier("endpoint");
        if (at(token_kind::dot)) {
            advance();
            token port = expect_identifier("port name");
            return child_port(first.text, port.text);
        }
        return boundary(first.text);
    }

    connection parse_connection_tail() {
        endpoint source = parse_endpoint();
        expect(token_kind::arrow);
        endpoint target = parse_endpoint();
        return connection{std::move(source), std::move(target)};
    }

    context decls_until_rbrace() {
        context ctx;
        while (!at(token_kind::rbrace)) {
            if (at_word("in") || at_word("out")) {
                port_direction dir =
                    peek().text == "in" ? port_direction::in : port_direction::out;
                advance();
                while (true) {
                    token name = expect_identifier("port name");
                    add_port_checked(ctx, dir, name);
                    if (!at(token_kind::comma)) break;
                    advance();
                }
            } else if (at_word("mref")) {
                advance();
                token name = expect_identifier("block name");
                expect(token_kind::colon);
                token ref = expect_identifier("model name");
                add_block_checked(ctx, make_model_ref(name.text, ref.text), name);
            } else if (at_word("subsystem")) {
                advance();
                token name = expect_identifier("subsystem name");
                expect(token_kind::lbrace);
                context body = decls_until_rbrace();
                add_block_checked(ctx, make_subsystem(name.text, std::move(body)), name);
            } else if (at_word("connect")) {
                advance();
                ctx.connections.push_back(parse_connection_tail());
            } else {
                fail(parse_error_kind::syntax, peek().pos,
                     "expected declaration, found " + describe(peek()));
            }
        }
        advance();
        return ctx;
    }

    // ─── deltas ──────────────────────────────────────────────────────────

    aoc_expr aoc_or_expr() {
        aoc_expr left = aoc_and_expr();
        while (at(token_kind::or_or)) {
            advance();
            left = aoc_or(std::move(left), aoc_and_expr());
        }
        return left;
    }

    aoc_expr aoc_and_expr() {
        aoc_expr left = aoc_term();
        while (at(token_kind::and_and)) {
            advance();
            left = aoc_and(std::move(left), aoc_term());
        }
        return left;
    }

    aoc_expr aoc_term() {
        if (at(token_kind::bang)) {
            advance();
            return aoc_not(aoc_term());
        }
        if (at(token_kind::lparen)) {
            advance();
            aoc_expr inner = aoc_or_expr();
            expect(token_kind::rparen);
            return inner;
        }
        expect_word("after");
        token name = expect_identifier("delta name");
        return aoc_after(name.text);
    }

    delta_op parse_delta_op() {
        if (at_word("add")) {
            advance();
            if (at_word("in") || at_word("out")) {
                port_direction dir =
                    peek().text == "in" ? port_direction::in : port_direction::out;
                advance();
                token name = expect_identifier("port name");
                return delta_op{add_port{dir, name.text}};
            }
            if (at_word("mref")) {
                advance();
                token name = expect_identifier("block name");
                expect(token_kind::colon);
                token ref = expect_identifier("model name");
                return delta_op{add_model_ref{name.text, ref.text}};
            }
            if (at_word("subsystem")) {
                advance();
                token name = expect_identifier("subsystem name");
                expect(token_kind::lbrace);
                context body = decls_until_rbrace();
                return delta_op{add_subsystem{name.text, std::move(body)}};
            }
            if (at_word("connect")) {
                advance();
                return delta_op{add_connection{parse_connection_tail()}};
            }
            fail(parse_error_kind::syntax, peek().pos,
                 "expected 'in', 'out', 'mref', 'subsystem' or 'connect' after 'add', found " +
                     describe(peek()));
        }
        if (at_word("remove")) {
            advance();
            bool weak = false;
            if (at_word("weak")) {
                advance();
                weak = true;
            }
            if (at_word("in") || at_word("out")) {
                port_direction dir =
                    peek().text == "in" ? port_direction::in : port_direction::out;
                advance();
                token name = expect_identifier("port name");
                return delta_op{remove_element{port_selector{dir, name.text}, weak}};
            }
            if (at_word("block")) {
                advance();
                token name = expect_identifier("block name");
                return delta_op{remove_element{block_selector{name.text}, weak}};
            }
            if (at_word("connect")) {
                advance();
                return delta_op{
                    remove_element{connection_selector{parse_connection_tail()}, weak}};
            }
            fail(parse_error_kind::syntax, peek().pos,
                 "expected 'in', 'out', 'block' or 'connect' after 'remove', found " +
                     describe(peek()));
        }
        if (at_word("replace")) {
            advance();
            token target = expect_identifier("block name");
            expect_word("with");
            if (at_word("model")) {
                advance();
                token ref = expect_identifier("model name");
                expect_word("as");
                token name = expect_identifier("block name");
                return delta_op{replace_block{target.text, model_substitute{ref.text, name.text}}};
            }
            if (at_word("subsystem")) {
                advance();
                token name = expect_identifier("subsystem name");
                expect(token_kind::lbrace);
                context body = decls_until_rbrace();
                return delta_op{
                    replace_block{target.text, subsystem_substitute{name.text, std::move(body)}}};
            }
            fail(parse_error_kind::syntax, peek().pos,
                 "expected 'model' or 'subsystem' after 'with', found " + describe(peek()));
        }
        if (at_word("modify")) {
            advance();
            expect_word("subsystem");
            token name = expect_identifier("subsystem name");
            expect(token_kind::lbrace);
            std::vector<delta_op> ops;
            while (!at(token_kind::rbrace)) ops.push_back(parse_delta_op());
            advance();
            return delta_op{modify_subsystem{name.text, std::move(ops)}};
        }
        fail(parse_error_kind::syntax, peek().pos,
             "expected 'add', 'remove', 'replace' or 'modify', found " + describe(peek()));
    }

    delta delta_def() {
        expect_word("delta");
        token name = expect_identifier("delta name");
        last_delta_name_pos_ = name.pos;
        expect(token_kind::lbrace);
        delta d{name.text, aoc_always(), {}};
        bool has_aoc = false;
        while (at_word("aoc")) {
            advance();
            aoc_expr clause = aoc_or_expr();
            d.aoc = has_aoc ? aoc_and(std::move(d.aoc), std::move(clause)) : std::move(clause);
            has_aoc = true;
        }
        while (at_word("modify")) {
            advance();
            expect_word("model");
            token target = expect_identifier("model name");
            expect(token_kind::lbrace);
            std::vector<delta_op> ops;
            while (!at(token_kind::rbrace)) ops.push_back(parse_delta_op());
            advance();
            d.modifications.push_back(
                modify_block{context_kind::model, target.text, std::move(ops)});
        }
        expect(token_kind::rbrace);
        if (d.modifications.empty())
            fail(parse_error_kind::empty_delta, name.pos,
                 "delta '" + name.text + "' has no modify block");
        return d;
    }
};

} // namespace

result<model_library, parse_error> parse_library(std::string_view text) {
    try {
        return parser{text}.library_file();
    } catch (const parse_failure& f) {
        return f.err;
    }
}

result<delta, parse_error> parse_delta(std::string_view text) {
    try {
        return parser{text}.single_delta();
    } catch (const parse_failure& f) {
        return f.err;
    }
}

result<std::vector<delta>, parse_error> parse_deltas(std::string_view text) {
    try {
        return parser{text}.delta_file();
    } catch (const parse_failure& f) {
        return f.err;
    }
}

result<std::vector<product_configuration>, parse_error> parse_products(std::string_view text) {
    try {
        return parser{text}.product_file();
    } catch (const parse_failure& f) {
        return f.err;
    }
}

} // namespace deltablock
