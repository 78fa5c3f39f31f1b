#pragma once

// Named polynomials used by the suites and the tests.

namespace residue::fixtures {

inline constexpr const char* fermat_cubic = "x0^3 + x1^3 + x2^3";
inline constexpr const char* fermat_quartic = "x0^4 + x1^4 + x2^4";
inline constexpr const char* fermat_quintic = "x0^5 + x1^5 + x2^5";
inline constexpr const char* klein_quartic = "x0^3*x1 + x1^3*x2 + x2^3*x0";
inline constexpr const char* k3_quartic = "x0^4 + x1^4 + x2^4 + x3^4";
inline constexpr const char* nodal_cubic = "x1^2*x2 - x0^3 - x0^2*x2";
inline constexpr const char* cuspidal_cubic = "x1^2*x2 - x0^3";
inline constexpr const char* nodal_quartic = "x0*x1*x2^2 + x0^4 + x1^4";
inline constexpr const char* trinodal_quartic =
    "x0^2*x1^2 + x1^2*x2^2 + x0^2*x2^2 + x0^2*x1*x2 + x0*x1^2*x2 + x0*x1*x2^2";
inline constexpr const char* double_line_cubic = "x0^2*x1 + x0^2*x2";

}  // namespace residue::fixtures
