#pragma once

// Expression language for the command line:
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := rational ['i'] | 'i' | 'sqrt2' | 'x' uint
//           | 'a(' uint ',' uint ')' | 'abar(' uint ',' uint ')'
//           | 'wave(' real (',' real)* ')' | '(' expr ')' ['i']
//   rational := uint ['/' uint]
//
// Whitespace is insignificant. '(e)i' is shorthand for (e)*i so the canonical
// polynomial text ("(1/2)i*x1") parses back.

#include "nstar/root2.hpp"
#include "nstar/scalar.hpp"
#include "nstar/wave.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nstar {

struct Expression {
    enum class Kind { Literal, Root2, Coord, ComplexCoord, Wave, Sum, Product, Power };

    Kind kind = Kind::Literal;
    Rational value;                 // Literal (non-negative)
    bool imaginary = false;         // Literal: value * i
    std::size_t index = 0;          // Coord axis; ComplexCoord first axis
    std::size_t second = 0;         // ComplexCoord second axis
    bool barred = false;            // ComplexCoord: abar
    std::vector<double> freq;       // Wave
    std::vector<Expression> children;
    std::vector<bool> negated;      // Sum: sign of each child
    unsigned exponent = 0;          // Power: children[0] ^ exponent

    // source position of the node's first token (not part of equality)
    std::size_t line = 0;
    std::size_t column = 0;

    static Expression literal(Rational v, bool imag = false);
    static Expression root2();
    static Expression coord(std::size_t k);
    static Expression complex_coord(std::size_t i, std::size_t j, bool barred);
    static Expression wave(std::vector<double> freq);
    static Expression sum(std::vector<Expression> terms, std::vector<bool> negated);
    static Expression product(std::vector<Expression> factors);
    static Expression power(Expression base, unsigned exponent);

    bool contains_wave() const;
    bool contains_coordinate() const;
};

bool operator==(const Expression& a, const Expression& b);
inline bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

/// Throws ParseError (with line/column) on syntax errors, coordinate indices
/// outside 1..n, a(i,i), and wave arity != n.
Expression parse_expression(std::string_view text, std::size_t n);

/// Minimal-parenthesis rendering; parse_expression(print(e), n) == e.
std::string print(const Expression& e);

struct LoweredValue {
    bool is_wave = false;
    Root2Polynomial poly;
    WaveSum wave;
};

/// Polynomial expressions lower to Q(i, sqrt2) polynomials, wave expressions to
/// wave sums; mixing coordinates and waves throws ParseError.
LoweredValue lower(const Expression& e, std::size_t n);

/// parse + lower.
LoweredValue evaluate_expression(std::string_view text, std::size_t n);

}  // namespace nstar
