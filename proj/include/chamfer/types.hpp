#pragma once

#include <cmath>
#include <string>

#include "chamfer/errors.hpp"

namespace chamfer {

// Integer lattice vector.
struct Vec2i {
    int x = 0;
    int y = 0;

    friend bool operator==(const Vec2i&, const Vec2i&) = default;
};

inline double norm(Vec2i v) { return std::hypot(double(v.x), double(v.y)); }

// The three optimization regimes for mask weights:
//   B - axis steps are forced to their exact Euclidean length (W(x,0) = |x|),
//   C - no constraint at all,
//   D - the induced length must dominate the Euclidean one (W(v) >= |v|).
enum class ConstraintMode { B, C, D };

inline char to_char(ConstraintMode m) {
    switch (m) {
        case ConstraintMode::B: return 'B';
        case ConstraintMode::C: return 'C';
        case ConstraintMode::D: return 'D';
    }
    return '?';
}

inline ConstraintMode mode_from_string(const std::string& s) {
    if (s == "B" || s == "b") return ConstraintMode::B;
    if (s == "C" || s == "c") return ConstraintMode::C;
    if (s == "D" || s == "d") return ConstraintMode::D;
    throw BadRange("unknown constraint mode '" + s + "' (expected B, C or D)");
}

} // namespace chamfer
