#pragma once

// Grid distance transforms: the classic two-pass raster chamfer DT, an exact
// multi-source shortest-path reference, a naive exact Euclidean baseline and
// field comparison statistics.  Paths are confined to the grid; offsets that
// would leave it are skipped.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "chamfer/errors.hpp"
#include "chamfer/length_oracle.hpp"
#include "chamfer/mask.hpp"

namespace chamfer {

struct BinaryGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> seed; // 1 = seed pixel (distance zero)

    BinaryGrid() = default;
    BinaryGrid(int w, int h) : width(w), height(h), seed(std::size_t(w) * h, 0) {
        if (w < 1 || h < 1) throw BadRange("grid dimensions must be positive");
    }

    bool is_seed(int r, int c) const { return seed[std::size_t(r) * width + c] != 0; }
    void set_seed(int r, int c, bool on = true) {
        seed[std::size_t(r) * width + c] = on ? 1 : 0;
    }
    std::int64_t seed_count() const {
        std::int64_t n = 0;
        for (auto s : seed) n += s;
        return n;
    }
};

struct DistanceField {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    DistanceField() = default;
    DistanceField(int w, int h, double fill = 0.0)
        : width(w), height(h), values(std::size_t(w) * h, fill) {}

    double at(int r, int c) const { return values[std::size_t(r) * width + c]; }
    double& at(int r, int c) { return values[std::size_t(r) * width + c]; }
};

namespace detail {

inline std::vector<std::int64_t> seed_indices(const BinaryGrid& g) {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < g.seed.size(); ++i)
        if (g.seed[i]) out.push_back(std::int64_t(i));
    if (out.empty()) throw NoSeeds("grid has no seed pixels");
    return out;
}

} // namespace detail

// Exact chamfer distance from the nearest seed, by multi-source Dijkstra
// over the mask steps.
inline DistanceField dt_reference(const BinaryGrid& g, const Mask& m) {
    const auto sources = detail::seed_indices(g);
    DistanceField f(g.width, g.height);
    f.values = detail::grid_shortest_paths(g.width, g.height, sources, detail::mask_offsets(m));
    return f;
}

// Two-pass raster chamfer DT.  The forward pass relaxes each pixel over the
// mask offsets lying strictly above its row or left of it on the same row;
// the backward pass uses the mirrored half.  Agreement with dt_reference is
// asserted in the tests, not assumed.
inline DistanceField dt_two_pass(const BinaryGrid& g, const Mask& m) {
    if (g.seed_count() == 0) throw NoSeeds("grid has no seed pixels");
    const int w = g.width, h = g.height;
    DistanceField f(w, h, std::numeric_limits<double>::max());
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (g.is_seed(r, c)) f.at(r, c) = 0.0;

    std::vector<detail::WeightedOffset> fwd, bwd;
    for (const auto& o : detail::mask_offsets(m))
        (o.dr < 0 || (o.dr == 0 && o.dc < 0) ? fwd : bwd).push_back(o);

    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double v = f.at(r, c);
            for (const auto& o : fwd) {
                const int rr = r + o.dr, cc = c + o.dc;
                if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                v = std::min(v, f.at(rr, cc) + o.w);
            }
            f.at(r, c) = v;
        }
    for (int r = h - 1; r >= 0; --r)
        for (int c = w - 1; c >= 0; --c) {
            double v = f.at(r, c);
            for (const auto& o : bwd) {
                const int rr = r + o.dr, cc = c + o.dc;
                if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                v = std::min(v, f.at(rr, cc) + o.w);
            }
            f.at(r, c) = v;
        }
    return f;
}

// Exact Euclidean distance to the nearest seed.  Seeds are bucketed by row
// with sorted columns; the scan widens outward and stops as soon as the row
// offset alone rules out an improvement, which keeps dense grids fast while
// staying exact in all cases.
inline DistanceField edt_exact(const BinaryGrid& g) {
    if (g.seed_count() == 0) throw NoSeeds("grid has no seed pixels");
    const int w = g.width, h = g.height;
    std::vector<std::vector<int>> cols_by_row(h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (g.is_seed(r, c)) cols_by_row[r].push_back(c);

    const auto row_best = [&](int row, int c, double bound2) {
        // Smallest squared column offset to a seed in `row`, capped at bound2.
        const auto& cols = cols_by_row[std::size_t(row)];
        double best2 = bound2;
        if (cols.empty()) return best2;
        const auto it = std::lower_bound(cols.begin(), cols.end(), c);
        for (auto r_it = it; r_it != cols.end(); ++r_it) {
            const double dc = double(*r_it - c);
            if (dc * dc >= best2) break;
            best2 = dc * dc;
        }
        for (auto l_it = it; l_it != cols.begin();) {
            --l_it;
            const double dc = double(c - *l_it);
            if (dc * dc >= best2) break;
            best2 = dc * dc;
        }
        return best2;
    };

    DistanceField f(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double best2 = std::numeric_limits<double>::infinity();
            for (int dr = 0; dr < h; ++dr) {
                const double dr2 = double(dr) * dr;
                if (dr2 >= best2) break;
                if (r - dr >= 0) {
                    const double cand = row_best(r - dr, c, best2 - dr2);
                    best2 = std::min(best2, dr2 + cand);
                }
                if (dr > 0 && r + dr < h) {
                    const double cand = row_best(r + dr, c, best2 - dr2);
                    best2 = std::min(best2, dr2 + cand);
                }
            }
            f.at(r, c) = std::sqrt(best2);
        }
    return f;
}

struct DiffStats {
    double max_abs = 0.0;
    double max_rel = 0.0; // over pixels where the reference is nonzero
    double mean_abs = 0.0;
    int argmax_row = 0; // location of the largest relative difference
    int argmax_col = 0;
};

// Element-wise difference statistics of a against reference b; relative
// differences use b as the denominator and skip pixels where b == 0.
inline DiffStats compare_fields(const DistanceField& a, const DistanceField& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatch("fields have different dimensions");
    DiffStats st;
    double sum_abs = 0.0;
    bool have_rel = false;
    for (int r = 0; r < a.height; ++r)
        for (int c = 0; c < a.width; ++c) {
            const double diff = std::abs(a.at(r, c) - b.at(r, c));
            sum_abs += diff;
            st.max_abs = std::max(st.max_abs, diff);
            if (b.at(r, c) != 0.0) {
                const double rel = diff / b.at(r, c);
                if (!have_rel || rel > st.max_rel) {
                    st.max_rel = rel;
                    st.argmax_row = r;
                    st.argmax_col = c;
                    have_rel = true;
                }
            }
        }
    st.mean_abs = sum_abs / (double(a.width) * a.height);
    return st;
}

} // namespace chamfer
