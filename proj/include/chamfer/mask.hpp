#pragma once

// Chamfer masks: a (2p+1)x(2p+1) table of positive step weights with full
// dihedral symmetry.  Only the half octant 0 <= k <= n <= p is stored; lookup
// folds an arbitrary nonzero vector of the mask into that octant.  Classical
// integer masks keep their integer entries verbatim together with a scale
// divisor, so their tables stay bit-exact.

#include <cmath>
#include <istream>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chamfer/closed_forms.hpp"
#include "chamfer/errors.hpp"
#include "chamfer/types.hpp"

namespace chamfer {

using WeightTable = std::map<std::pair<int, int>, double>;

class Mask {
public:
    struct Entry {
        int n = 0;
        int k = 0;
        double raw = 0.0; // stored value, before division by scale
    };

    // Validates and stores a complete half-octant table.  The table must
    // contain exactly the pairs (n,k) with 0 <= k <= n <= p, (n,k) != (0,0).
    Mask(int p, const WeightTable& table, double scale = 1.0) : p_(p), scale_(scale) {
        if (p < 1) throw BadRange("mask half-width p must be >= 1");
        if (!(scale > 0.0) || !std::isfinite(scale))
            throw BadScale("scale must be positive and finite");
        weights_.assign(slot_count(p), 0.0);
        std::vector<bool> seen(weights_.size(), false);
        for (const auto& [nk, w] : table) {
            const auto [n, k] = nk;
            if (n < 1 || n > p || k < 0 || k > n)
                throw IncompleteTable("entry (" + std::to_string(n) + "," + std::to_string(k) +
                                      ") is outside the half octant of M_" + std::to_string(p));
            if (!(w > 0.0) || !std::isfinite(w))
                throw NonpositiveWeight("weight at (" + std::to_string(n) + "," +
                                        std::to_string(k) + ") must be positive and finite");
            weights_[slot(n, k)] = w;
            seen[slot(n, k)] = true;
        }
        for (int n = 1; n <= p; ++n)
            for (int k = 0; k <= n; ++k)
                if (!seen[slot(n, k)])
                    throw IncompleteTable("missing entry (" + std::to_string(n) + "," +
                                          std::to_string(k) + ")");
    }

    int p() const { return p_; }
    double scale() const { return scale_; }

    // Stored (unscaled) value at a half-octant position.
    double raw(int n, int k) const {
        if (n < 1 || n > p_ || k < 0 || k > n) throw OutOfMask("no entry at that position");
        return weights_[slot(n, k)];
    }

    // Scaled weight of an arbitrary mask vector; symmetric in sign changes
    // and coordinate swaps.
    double lookup(int x, int y) const {
        const int ax = std::abs(x), ay = std::abs(y);
        const int n = std::max(ax, ay), k = std::min(ax, ay);
        if (n == 0) throw Origin("the zero vector has no weight");
        if (n > p_)
            throw OutOfMask("(" + std::to_string(x) + "," + std::to_string(y) +
                            ") lies outside M_" + std::to_string(p_));
        return weights_[slot(n, k)] / scale_;
    }
    double lookup(Vec2i v) const { return lookup(v.x, v.y); }

    std::vector<Entry> entries() const {
        std::vector<Entry> out;
        out.reserve(weights_.size());
        for (int n = 1; n <= p_; ++n)
            for (int k = 0; k <= n; ++k) out.push_back({n, k, weights_[slot(n, k)]});
        return out;
    }

private:
    static std::size_t slot_count(int p) { return std::size_t(p) * (p + 3) / 2; }
    static std::size_t slot(int n, int k) { return std::size_t(n - 1) * (n + 2) / 2 + k; }

    int p_;
    double scale_;
    std::vector<double> weights_;
};

// The three classical integer masks.  The stored tables reproduce the full
// printed neighborhoods: generator entries plus the composite positions
// (e.g. the 5x5 mask carries 10 at (2,0) and 14 at (2,2)).
inline Mask classical_mask(std::string_view name) {
    if (name == "borgefors3")
        return Mask(1, {{{1, 0}, 3}, {{1, 1}, 4}}, 3.0);
    if (name == "borgefors5")
        return Mask(2,
                    {{{1, 0}, 5}, {{1, 1}, 7}, {{2, 0}, 10}, {{2, 1}, 11}, {{2, 2}, 14}},
                    5.0);
    if (name == "borgefors7")
        return Mask(3,
                    {{{1, 0}, 12},
                     {{1, 1}, 17},
                     {{2, 0}, 24},
                     {{2, 1}, 27},
                     {{2, 2}, 34},
                     {{3, 0}, 36},
                     {{3, 1}, 38},
                     {{3, 2}, 43},
                     {{3, 3}, 51}},
                    12.0);
    throw UnknownName("unknown classical mask '" + std::string(name) + "'");
}

// Real-weight masks minimizing the maximum relative error under each mode:
//   D: w(n,k) = sqrt(n^2+k^2)
//   B: w(n,0) = n, off-axis scaled by optimal_c(p)
//   C: everything scaled by 1 - error_c(p)
inline Mask optimal_mask(int p, ConstraintMode mode) {
    if (p < 1) throw BadRange("p must be >= 1");
    WeightTable table;
    const double cb = (mode == ConstraintMode::B) ? optimal_c(p) : 0.0;
    const double shrink = (mode == ConstraintMode::C) ? 1.0 - error_c(p) : 1.0;
    for (int n = 1; n <= p; ++n)
        for (int k = 0; k <= n; ++k) {
            const double len = std::hypot(double(n), double(k));
            double w = 0.0;
            switch (mode) {
                case ConstraintMode::D: w = len; break;
                case ConstraintMode::C: w = shrink * len; break;
                case ConstraintMode::B: w = (k == 0) ? double(n) : cb * len; break;
            }
            table[{n, k}] = w;
        }
    return Mask(p, table, 1.0);
}

// Plain-text mask file:
//   line 1:   p <int> scale <real>
//   then one line per half-octant entry: n k w
// '#' starts a comment; blank lines are skipped.
inline Mask read_mask(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream probe(line);
        std::string tok;
        if (probe >> tok) lines.push_back(line);
    }
    if (lines.empty()) throw ParseError("empty mask file");

    std::istringstream head(lines.front());
    std::string kw_p, kw_scale;
    int p = 0;
    double scale = 0.0;
    if (!(head >> kw_p >> p >> kw_scale >> scale) || kw_p != "p" || kw_scale != "scale")
        throw ParseError("mask header must read 'p <int> scale <real>'");

    WeightTable table;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        int n = 0, k = 0;
        double w = 0.0;
        if (!(row >> n >> k >> w)) throw ParseError("bad mask entry line: '" + lines[i] + "'");
        std::string extra;
        if (row >> extra) throw ParseError("trailing tokens on mask entry line: '" + lines[i] + "'");
        if (table.count({n, k}))
            throw ParseError("duplicate mask entry (" + std::to_string(n) + "," +
                             std::to_string(k) + ")");
        table[{n, k}] = w;
    }
    try {
        return Mask(p, table, scale);
    } catch (const Error& e) {
        throw ParseError(std::string("invalid mask file: ") + e.what());
    }
}

inline Mask read_mask_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mask file '" + path + "'");
    return read_mask(in);
}

inline void write_mask(const Mask& m, std::ostream& out) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", m.scale());
    out << "p " << m.p() << " scale " << buf << "\n";
    for (const auto& e : m.entries()) {
        std::snprintf(buf, sizeof buf, "%.17g", e.raw);
        out << e.n << " " << e.k << " " << buf << "\n";
    }
}

inline void write_mask_file(const Mask& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write mask file '" + path + "'");
    write_mask(m, out);
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace chamfer
