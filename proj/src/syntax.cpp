#include "ltlnorm/formula.hpp"

#include <cctype>

namespace ltlnorm {

namespace {

enum class Tok { Ident, Not, And, Or, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) { advance(); }

    Formula parse_all()
    {
        Formula f = parse_or();
        if (cur_.kind != Tok::End)
            throw ParseError(cur_.pos, "unexpected '" + cur_.text + "'");
        return f;
    }

private:
    void advance()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            cur_ = {Tok::End, "end of input", start};
            return;
        }
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                ++pos_;
            cur_ = {Tok::Ident, std::string(src_.substr(start, pos_ - start)), start};
            return;
        }
        ++pos_;
        switch (c) {
        case '!': cur_ = {Tok::Not, "!", start}; return;
        case '&': cur_ = {Tok::And, "&", start}; return;
        case '|': cur_ = {Tok::Or, "|", start}; return;
        case '(': cur_ = {Tok::LParen, "(", start}; return;
        case ')': cur_ = {Tok::RParen, ")", start}; return;
        default: throw ParseError(start, std::string("unknown operator '") + c + "'");
        }
    }

    static bool is_binop(const Token& t)
    {
        return t.kind == Tok::Ident &&
               (t.text == "U" || t.text == "W" || t.text == "R" || t.text == "M");
    }

    static bool is_unop(const Token& t)
    {
        return t.kind == Tok::Ident && (t.text == "X" || t.text == "F" || t.text == "G" ||
                                        t.text == "GF" || t.text == "FG");
    }

    Formula parse_or()
    {
        Formula f = parse_and();
        while (cur_.kind == Tok::Or) {
            advance();
            f = Formula::disj(f, parse_and());
        }
        return f;
    }

    Formula parse_and()
    {
        Formula f = parse_binary();
        while (cur_.kind == Tok::And) {
            advance();
            f = Formula::conj(f, parse_binary());
        }
        return f;
    }

    Formula parse_binary()
    {
        Formula l = parse_unary();
        if (!is_binop(cur_))
            return l;
        const std::string op = cur_.text;
        advance();
        Formula r = parse_binary();
        if (op == "U")
            return Formula::until(l, r);
        if (op == "W")
            return Formula::weak_until(l, r);
        if (op == "R")
            return Formula::release(l, r);
        return Formula::strong_release(l, r);
    }

    Formula parse_unary()
    {
        if (cur_.kind == Tok::Not) {
            advance();
            return negate(parse_unary());
        }
        if (is_unop(cur_)) {
            const std::string op = cur_.text;
            advance();
            Formula f = parse_unary();
            if (op == "X")
                return Formula::next(f);
            if (op == "F")
                return Formula::eventually(f);
            if (op == "G")
                return Formula::globally(f);
            if (op == "GF")
                return Formula::gf(f);
            return Formula::fg(f);
        }
        return parse_atom();
    }

    Formula parse_atom()
    {
        const Token t = cur_;
        switch (t.kind) {
        case Tok::LParen: {
            advance();
            Formula f = parse_or();
            if (cur_.kind != Tok::RParen)
                throw ParseError(cur_.pos, "expected ')'");
            advance();
            return f;
        }
        case Tok::Ident:
            if (is_binop(t))
                throw ParseError(t.pos, "operator '" + t.text + "' lacks a left operand");
            advance();
            if (t.text == "tt")
                return Formula::tt();
            if (t.text == "ff")
                return Formula::ff();
            return Formula::lit(t.text, true);
        case Tok::End:
            throw ParseError(t.pos, "unexpected end of input");
        default:
            throw ParseError(t.pos, "unexpected '" + t.text + "'");
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token cur_{Tok::End, "", 0};
};

// Precedence levels used by the printer.
int prec(const Formula& f)
{
    switch (f.op()) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Until:
        return f.is_eventually() ? 4 : 3;
    case Op::WeakUntil:
        return f.is_globally() ? 4 : 3;
    case Op::Release:
    case Op::StrongRelease: return 3;
    case Op::Next:
    case Op::GF:
    case Op::FG: return 4;
    default: return 5;
    }
}

void print(const Formula& f, std::string& out);

void print_wrapped(const Formula& f, bool parens, std::string& out)
{
    if (parens)
        out += '(';
    print(f, out);
    if (parens)
        out += ')';
}

void print_unary(const char* op, const Formula& arg, std::string& out)
{
    out += op;
    if (prec(arg) <= 3) {
        print_wrapped(arg, true, out);
    } else {
        out += ' ';
        print(arg, out);
    }
}

void print(const Formula& f, std::string& out)
{
    switch (f.op()) {
    case Op::True: out += "tt"; return;
    case Op::False: out += "ff"; return;
    case Op::Hole: out += "[]"; return;
    case Op::Lit:
        if (!f.positive())
            out += '!';
        out += f.name();
        return;
    case Op::Or:
    case Op::And: {
        const int p = prec(f);
        print_wrapped(f.left(), prec(f.left()) < p, out);
        out += p == 1 ? " | " : " & ";
        print_wrapped(f.right(), prec(f.right()) <= p, out);
        return;
    }
    case Op::Next: print_unary("X", f.child(), out); return;
    case Op::GF: print_unary("GF", f.child(), out); return;
    case Op::FG: print_unary("FG", f.child(), out); return;
    default: break;
    }
    if (f.is_eventually()) {
        print_unary("F", f.right(), out);
        return;
    }
    if (f.is_globally()) {
        print_unary("G", f.left(), out);
        return;
    }
    const char* sym = f.op() == Op::Until       ? " U "
                      : f.op() == Op::WeakUntil ? " W "
                      : f.op() == Op::Release   ? " R "
                                                : " M ";
    print_wrapped(f.left(), prec(f.left()) <= 3, out);
    out += sym;
    print_wrapped(f.right(), prec(f.right()) <= 3, out);
}

}  // namespace

Formula parse(std::string_view text)
{
    return Parser(text).parse_all();
}

std::string to_string(const Formula& f)
{
    std::string out;
    print(f, out);
    return out;
}

}  // namespace ltlnorm
