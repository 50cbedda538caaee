#include "nstar/expression.hpp"

#include "nstar/errors.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <numbers>
#include <sstream>

namespace nstar {

namespace {

constexpr unsigned kMaxExponent = 256;

enum class Tok { Number, Ident, LParen, RParen, Comma, Plus, Minus, Star, Caret, Slash, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                t.kind = Tok::Number;
                t.text = number();
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                t.kind = Tok::Ident;
                while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) t.text += take();
            } else {
                switch (c) {
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '+': t.kind = Tok::Plus; break;
                    case '-': t.kind = Tok::Minus; break;
                    case '*': t.kind = Tok::Star; break;
                    case '^': t.kind = Tok::Caret; break;
                    case '/': t.kind = Tok::Slash; break;
                    default:
                        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
                }
                t.text = std::string(1, take());
            }
            out.push_back(std::move(t));
        }
    }

  private:
    char take() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) take();
    }

    bool digit_at(std::size_t p) const {
        return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
    }

    // digits ['.' digits] [('e'|'E') ['+'|'-'] digits]; the exponent is only
    // consumed when digits follow, so "2i" and "2e" stay separate tokens.
    std::string number() {
        std::string s;
        while (digit_at(pos_)) s += take();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            s += take();
            while (digit_at(pos_)) s += take();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (digit_at(p)) {
                while (pos_ < p) s += take();
                while (digit_at(pos_)) s += take();
            }
        }
        return s;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

class Parser {
  public:
    Parser(std::vector<Token> toks, std::size_t n) : toks_(std::move(toks)), n_(n) {}

    Expression parse() {
        Expression e = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
        return e;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        next();
        return true;
    }
    [[noreturn]] static void fail(const std::string& what, const Token& at) {
        throw ParseError(what, at.line, at.column);
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) {
            fail(std::string("expected ") + what +
                     (peek().kind == Tok::End ? std::string(" at end of input") : ", found '" + peek().text + "'"),
                 peek());
        }
        return next();
    }

    static Expression at(Expression e, const Token& t) {
        e.line = t.line;
        e.column = t.column;
        return e;
    }

    Expression expr() {
        const Token& first = peek();
        std::vector<Expression> terms;
        std::vector<bool> neg;
        const bool lead = accept(Tok::Minus);
        terms.push_back(term());
        neg.push_back(lead);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            neg.push_back(next().kind == Tok::Minus);
            terms.push_back(term());
        }
        if (terms.size() == 1 && !lead) return std::move(terms.front());
        return at(Expression::sum(std::move(terms), std::move(neg)), first);
    }

    Expression term() {
        const Token& first = peek();
        std::vector<Expression> fs;
        fs.push_back(factor());
        while (accept(Tok::Star)) fs.push_back(factor());
        if (fs.size() == 1) return std::move(fs.front());
        return at(Expression::product(std::move(fs)), first);
    }

    Expression factor() {
        const Token& first = peek();
        Expression base = atom();
        if (!accept(Tok::Caret)) return base;
        const Token& e = expect(Tok::Number, "exponent");
        if (!is_integer_text(e.text)) fail("exponent must be a non-negative integer", e);
        if (e.text.size() > 4 || std::stoul(e.text) > kMaxExponent)
            fail("exponent exceeds " + std::to_string(kMaxExponent), e);
        return at(Expression::power(std::move(base), static_cast<unsigned>(std::stoul(e.text))), first);
    }

    std::size_t index(const char* what) {
        const Token& t = expect(Tok::Number, what);
        if (!is_integer_text(t.text)) fail(std::string(what) + " must be an integer", t);
        if (t.text.size() > 6 || std::stoul(t.text) == 0 || std::stoul(t.text) > n_) {
            fail("coordinate index " + t.text + " outside 1.." + std::to_string(n_), t);
        }
        return std::stoul(t.text);
    }

    bool imaginary_suffix() {
        if (peek().kind == Tok::Ident && peek().text == "i") {
            next();
            return true;
        }
        return false;
    }

    double real() {
        const Token& first = peek();
        bool neg = false;
        if (accept(Tok::Minus)) {
            neg = true;
        } else {
            accept(Tok::Plus);
        }
        const Token& t = expect(Tok::Number, "real number");
        double v = 0;
        const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) fail("malformed number", t);
        (void)first;
        return neg ? -v : v;
    }

    Expression atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                next();
                if (!is_integer_text(t.text)) fail("decimal literals are only allowed inside wave(...)", t);
                std::string text = t.text;
                if (accept(Tok::Slash)) {
                    const Token& d = expect(Tok::Number, "denominator");
                    if (!is_integer_text(d.text)) fail("denominator must be an integer", d);
                    if (mpz_class(d.text) == 0) fail("zero denominator", d);
                    text += "/" + d.text;
                }
                Rational v(text);
                v.canonicalize();
                return at(Expression::literal(std::move(v), imaginary_suffix()), t);
            }
            case Tok::Ident: {
                next();
                if (t.text == "i") return at(Expression::literal(Rational(1), true), t);
                if (t.text == "sqrt") {
                    const Token& two = peek();
                    if (two.kind != Tok::Number || two.text != "2") fail("expected 'sqrt2'", t);
                    next();
                    return at(Expression::root2(), t);
                }
                if (t.text == "x") return at(Expression::coord(index("coordinate index")), t);
                if (t.text == "a" || t.text == "abar") {
                    expect(Tok::LParen, "'('");
                    const Token& it = peek();
                    const std::size_t i = index("coordinate index");
                    expect(Tok::Comma, "','");
                    const std::size_t j = index("coordinate index");
                    if (i == j) fail("complex coordinate needs two distinct indices", it);
                    expect(Tok::RParen, "')'");
                    return at(Expression::complex_coord(i, j, t.text == "abar"), t);
                }
                if (t.text == "wave") {
                    expect(Tok::LParen, "'('");
                    std::vector<double> freq{real()};
                    while (accept(Tok::Comma)) freq.push_back(real());
                    expect(Tok::RParen, "')'");
                    if (freq.size() != n_) {
                        fail("wave has " + std::to_string(freq.size()) + " components, expected " +
                                 std::to_string(n_),
                             t);
                    }
                    return at(Expression::wave(std::move(freq)), t);
                }
                fail("unknown identifier '" + t.text + "'", t);
            }
            case Tok::LParen: {
                next();
                Expression inner = expr();
                expect(Tok::RParen, "')'");
                if (peek().kind == Tok::Ident && peek().text == "i") {
                    const Token& it = next();
                    std::vector<Expression> fs;
                    fs.push_back(std::move(inner));
                    fs.push_back(at(Expression::literal(Rational(1), true), it));
                    return at(Expression::product(std::move(fs)), t);
                }
                return inner;
            }
            case Tok::End:
                fail("unexpected end of input", t);
            default:
                fail("unexpected '" + t.text + "'", t);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t n_;
};

std::string double_text(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void print_into(std::ostringstream& out, const Expression& e);

void print_wrapped(std::ostringstream& out, const Expression& e, bool wrap) {
    if (wrap) out << '(';
    print_into(out, e);
    if (wrap) out << ')';
}

void print_into(std::ostringstream& out, const Expression& e) {
    using K = Expression::Kind;
    switch (e.kind) {
        case K::Literal:
            if (e.imaginary && e.value == 1) {
                out << 'i';
            } else {
                out << rational_to_string(e.value) << (e.imaginary ? "i" : "");
            }
            break;
        case K::Root2:
            out << "sqrt2";
            break;
        case K::Coord:
            out << 'x' << e.index;
            break;
        case K::ComplexCoord:
            out << (e.barred ? "abar(" : "a(") << e.index << ',' << e.second << ')';
            break;
        case K::Wave:
            out << "wave(";
            for (std::size_t i = 0; i < e.freq.size(); ++i) out << (i ? "," : "") << double_text(e.freq[i]);
            out << ')';
            break;
        case K::Sum:
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i == 0) {
                    if (e.negated[i]) out << '-';
                } else {
                    out << (e.negated[i] ? " - " : " + ");
                }
                print_wrapped(out, e.children[i], e.children[i].kind == K::Sum);
            }
            break;
        case K::Product:
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out << '*';
                const K k = e.children[i].kind;
                print_wrapped(out, e.children[i], k == K::Sum || k == K::Product);
            }
            break;
        case K::Power: {
            const K k = e.children[0].kind;
            print_wrapped(out, e.children[0], k == K::Sum || k == K::Product || k == K::Power);
            out << '^' << e.exponent;
            break;
        }
    }
}

Complex literal_value(const Expression& e) {
    return e.imaginary ? Complex(Rational(0), e.value) : Complex(e.value);
}

Root2Polynomial lower_poly(const Expression& e, std::size_t n) {
    using K = Expression::Kind;
    switch (e.kind) {
        case K::Literal:
            return Root2Polynomial(Polynomial::constant(n, literal_value(e)));
        case K::Root2:
            return Root2Polynomial(Polynomial(n), Polynomial::constant(n, Complex(1)));
        case K::Coord:
            if (e.index == 0 || e.index > n) throw ParseError("coordinate index outside 1.." + std::to_string(n), e.line, e.column);
            return Root2Polynomial(Polynomial::coordinate(n, e.index));
        case K::ComplexCoord: {
            if (e.index == 0 || e.index > n || e.second == 0 || e.second > n || e.index == e.second)
                throw ParseError("invalid complex coordinate indices", e.line, e.column);
            auto [a, abar] = complex_coords(n, e.index, e.second);
            return e.barred ? abar : a;
        }
        case K::Wave:
            throw ParseError("wave terms cannot be mixed with coordinates", e.line, e.column);
        case K::Sum: {
            Root2Polynomial acc(n);
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (e.negated[i]) {
                    acc -= lower_poly(e.children[i], n);
                } else {
                    acc += lower_poly(e.children[i], n);
                }
            }
            return acc;
        }
        case K::Product: {
            Root2Polynomial acc(Polynomial::constant(n, Complex(1)));
            for (const auto& c : e.children) acc = acc * lower_poly(c, n);
            return acc;
        }
        case K::Power: {
            const Root2Polynomial base = lower_poly(e.children[0], n);
            Root2Polynomial acc(Polynomial::constant(n, Complex(1)));
            for (unsigned k = 0; k < e.exponent; ++k) acc = acc * base;
            return acc;
        }
    }
    return Root2Polynomial(n);
}

WaveSum lower_wave(const Expression& e, std::size_t n) {
    using K = Expression::Kind;
    switch (e.kind) {
        case K::Literal: {
            const double v = e.value.get_d();
            return WaveSum::constant(n, e.imaginary ? std::complex<double>(0, v) : std::complex<double>(v, 0));
        }
        case K::Root2:
            return WaveSum::constant(n, std::numbers::sqrt2);
        case K::Coord:
        case K::ComplexCoord:
            throw ParseError("coordinates cannot be mixed with wave terms", e.line, e.column);
        case K::Wave:
            if (e.freq.size() != n) throw ParseError("wave arity does not match n", e.line, e.column);
            return WaveSum::plane_wave(e.freq);
        case K::Sum: {
            WaveSum acc(n);
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                const WaveSum c = lower_wave(e.children[i], n);
                acc += e.negated[i] ? c.scaled(-1.0) : c;
            }
            return acc;
        }
        case K::Product: {
            WaveSum acc = WaveSum::constant(n, 1.0);
            for (const auto& c : e.children) acc = acc * lower_wave(c, n);
            return acc;
        }
        case K::Power: {
            const WaveSum base = lower_wave(e.children[0], n);
            WaveSum acc = WaveSum::constant(n, 1.0);
            for (unsigned k = 0; k < e.exponent; ++k) acc = acc * base;
            return acc;
        }
    }
    return WaveSum(n);
}

}  // namespace

Expression Expression::root2() {
    Expression e;
    e.kind = Kind::Root2;
    return e;
}

Expression Expression::literal(Rational v, bool imag) {
    Expression e;
    e.kind = Kind::Literal;
    e.value = std::move(v);
    e.imaginary = imag;
    return e;
}

Expression Expression::coord(std::size_t k) {
    Expression e;
    e.kind = Kind::Coord;
    e.index = k;
    return e;
}

Expression Expression::complex_coord(std::size_t i, std::size_t j, bool barred) {
    Expression e;
    e.kind = Kind::ComplexCoord;
    e.index = i;
    e.second = j;
    e.barred = barred;
    return e;
}

Expression Expression::wave(std::vector<double> freq) {
    Expression e;
    e.kind = Kind::Wave;
    e.freq = std::move(freq);
    return e;
}

Expression Expression::sum(std::vector<Expression> terms, std::vector<bool> negated) {
    if (terms.size() != negated.size()) throw DomainError("sum needs one sign per term");
    Expression e;
    e.kind = Kind::Sum;
    e.children = std::move(terms);
    e.negated = std::move(negated);
    return e;
}

Expression Expression::product(std::vector<Expression> factors) {
    Expression e;
    e.kind = Kind::Product;
    e.children = std::move(factors);
    return e;
}

Expression Expression::power(Expression base, unsigned exponent) {
    Expression e;
    e.kind = Kind::Power;
    e.children.push_back(std::move(base));
    e.exponent = exponent;
    return e;
}

bool Expression::contains_wave() const {
    if (kind == Kind::Wave) return true;
    for (const auto& c : children)
        if (c.contains_wave()) return true;
    return false;
}

bool Expression::contains_coordinate() const {
    if (kind == Kind::Coord || kind == Kind::ComplexCoord) return true;
    for (const auto& c : children)
        if (c.contains_coordinate()) return true;
    return false;
}

bool operator==(const Expression& a, const Expression& b) {
    using K = Expression::Kind;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case K::Literal: return a.value == b.value && a.imaginary == b.imaginary;
        case K::Root2: return true;
        case K::Coord: return a.index == b.index;
        case K::ComplexCoord: return a.index == b.index && a.second == b.second && a.barred == b.barred;
        case K::Wave: return a.freq == b.freq;
        case K::Sum: return a.negated == b.negated && a.children == b.children;
        case K::Product: return a.children == b.children;
        case K::Power: return a.exponent == b.exponent && a.children == b.children;
    }
    return false;
}

Expression parse_expression(std::string_view text, std::size_t n) {
    return Parser(Lexer(text).run(), n).parse();
}

std::string print(const Expression& e) {
    std::ostringstream out;
    print_into(out, e);
    return out.str();
}

LoweredValue lower(const Expression& e, std::size_t n) {
    LoweredValue v;
    if (e.contains_wave()) {
        v.is_wave = true;
        v.wave = lower_wave(e, n);
    } else {
        v.poly = lower_poly(e, n);
    }
    return v;
}

LoweredValue evaluate_expression(std::string_view text, std::size_t n) {
    return lower(parse_expression(text, n), n);
}

}  // namespace nstar
