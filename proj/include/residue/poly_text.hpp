#pragma once

// Text form of polynomials: expanded terms c*x0^e0*x1^e1*... joined by + and
// -, rational coefficients p/q, whitespace ignored.

#include <stdexcept>
#include <string>

#include "residue/polynomial.hpp"

namespace residue {

class PolySyntaxError : public std::invalid_argument {
public:
    PolySyntaxError(std::size_t position, const std::string& what)
        : std::invalid_argument("syntax error at position " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// n_vars < 0 infers the variable count from the largest index used.
/// Throws PolySyntaxError or InhomogeneousPolynomial.
HomogPoly parse_poly(const std::string& text, int n_vars = -1);

std::string render_poly(const HomogPoly& p);

}  // namespace residue
