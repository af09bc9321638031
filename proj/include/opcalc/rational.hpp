#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace opcalc {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) after arithmetic; raw constructions go through
// make_scalar so canonicalization is never skipped.
using Scalar = mpq_class;

inline Scalar make_scalar(long num, long den = 1) {
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

inline std::string scalar_to_string(const Scalar& s) {
    return s.get_str();
}

// Parses "p" or "p/q". Returns nothing unless the string is the canonical
// form (lowest terms, q > 0, no leading '+' or zeros).
inline std::optional<Scalar> scalar_from_string(const std::string& text) {
    if (text.empty()) return std::nullopt;
    Scalar s;
    if (s.set_str(text, 10) != 0) return std::nullopt;
    Scalar canonical = s;
    canonical.canonicalize();
    if (canonical.get_str() != text) return std::nullopt;
    return canonical;
}

}  // namespace opcalc
