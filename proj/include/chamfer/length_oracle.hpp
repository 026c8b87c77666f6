#pragma once

// Induced length functions measured the hard way: explicit shortest-path
// search over mask steps on the integer lattice.  This is the verification
// side of the library; every closed-form constant can be checked against the
// estimates produced here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "chamfer/closed_forms.hpp"
#include "chamfer/errors.hpp"
#include "chamfer/mask.hpp"
#include "chamfer/types.hpp"

namespace chamfer {

namespace detail {

struct WeightedOffset {
    int dr = 0;
    int dc = 0;
    double w = 0.0;
};

inline std::vector<WeightedOffset> mask_offsets(const Mask& m) {
    std::vector<WeightedOffset> out;
    const int p = m.p();
    out.reserve(std::size_t(2 * p + 1) * (2 * p + 1) - 1);
    for (int dr = -p; dr <= p; ++dr)
        for (int dc = -p; dc <= p; ++dc) {
            if (dr == 0 && dc == 0) continue;
            out.push_back({dr, dc, m.lookup(dc, dr)});
        }
    return out;
}

// Multi-source Dijkstra on a width x height lattice.  Weights are positive,
// so the search is exact; ties in the queue break on the smaller node index
// for determinism.  Stops early once `target` (if >= 0) is settled.
inline std::vector<double> grid_shortest_paths(int width, int height,
                                               const std::vector<std::int64_t>& sources,
                                               const std::vector<WeightedOffset>& offsets,
                                               std::int64_t target = -1) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(std::size_t(width) * height, inf);
    using Item = std::pair<double, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    for (std::int64_t s : sources) {
        dist[std::size_t(s)] = 0.0;
        queue.push({0.0, s});
    }
    while (!queue.empty()) {
        const auto [d, idx] = queue.top();
        queue.pop();
        if (d > dist[std::size_t(idx)]) continue; // stale entry
        if (idx == target) break;
        const int r = int(idx / width), c = int(idx % width);
        for (const auto& o : offsets) {
            const int rr = r + o.dr, cc = c + o.dc;
            if (rr < 0 || rr >= height || cc < 0 || cc >= width) continue;
            const double nd = d + o.w;
            const std::int64_t nidx = std::int64_t(rr) * width + cc;
            if (nd < dist[std::size_t(nidx)]) {
                dist[std::size_t(nidx)] = nd;
                queue.push({nd, nidx});
            }
        }
    }
    return dist;
}

} // namespace detail

// Induced lengths of every vector with Chebyshev norm <= radius, from one
// shortest-path sweep out of the origin.  The sweep itself runs on the
// larger ball of radius `radius + p`, so values inside the stated radius are
// not clipped by the search boundary.
class LengthField {
public:
    LengthField(const Mask& m, int radius) : radius_(radius) {
        if (radius < 1) throw BadRange("radius must be >= 1");
        extent_ = radius + m.p();
        width_ = 2 * extent_ + 1;
        const std::int64_t origin = std::int64_t(extent_) * width_ + extent_;
        dist_ = detail::grid_shortest_paths(width_, width_, {origin}, detail::mask_offsets(m));
    }

    int radius() const { return radius_; }

    double at(int x, int y) const {
        if (std::max(std::abs(x), std::abs(y)) > radius_)
            throw BadRange("vector outside the computed radius");
        return dist_[std::size_t(y + extent_) * width_ + (x + extent_)];
    }
    double at(Vec2i v) const { return at(v.x, v.y); }

private:
    int radius_;
    int extent_;
    int width_;
    std::vector<double> dist_;
};

// Minimal total step weight over all mask-step paths from the origin to v.
// The search region is the Chebyshev ball of radius max(|v|_inf + p, 2p);
// a minimal path has no reason to leave it (checked against wider searches
// in the tests).
inline double path_length(const Mask& m, Vec2i v) {
    if (v.x == 0 && v.y == 0) return 0.0;
    const int p = m.p();
    const int radius = std::max(std::max(std::abs(v.x), std::abs(v.y)) + p, 2 * p);
    const int width = 2 * radius + 1;
    const std::int64_t origin = std::int64_t(radius) * width + radius;
    const std::int64_t target = std::int64_t(v.y + radius) * width + (v.x + radius);
    const auto dist =
        detail::grid_shortest_paths(width, width, {origin}, detail::mask_offsets(m), target);
    return dist[std::size_t(target)];
}

// Restricted-family length of the point (m*p, k): with k = m*q + r the
// minimal path mixes m-r steps (p,q) and r steps (p,q+1), so the total is
// r*W_{q+1} + (m-r)*W_q where W_0 = p and W_i = c*sqrt(p^2+i^2).
inline double restricted_length(int p, double c, int m, int k) {
    detail::check_p(p);
    detail::check_c(p, c);
    if (m < 1) throw BadRange("step count m must be >= 1");
    if (k < 0 || k > m * p)
        throw BadK("k = " + std::to_string(k) + " outside [0, m*p]");
    const int q = k / m, r = k % m;
    const auto weight = [&](int i) {
        return i == 0 ? double(p) : c * std::hypot(double(p), double(i));
    };
    double total = double(m - r) * weight(q);
    if (r > 0) total += double(r) * weight(q + 1);
    return total;
}

// The two step kinds of a minimal restricted path to (m*p, k).
struct RestrictedPlan {
    Vec2i low_step;  // (p, q)
    int low_count = 0;
    Vec2i high_step; // (p, q+1)
    int high_count = 0;
};

inline RestrictedPlan two_step_plan(int p, double c, int m, int k) {
    detail::check_p(p);
    detail::check_c(p, c);
    if (m < 1) throw BadRange("step count m must be >= 1");
    if (k < 0 || k > m * p)
        throw BadK("k = " + std::to_string(k) + " outside [0, m*p]");
    const int q = k / m, r = k % m;
    return {{p, q}, m - r, {p, q + 1}, r};
}

// Exhaustive check of the plan above: minimum total weight over *all*
// multisets of m restricted steps (p,0)..(p,p) whose vertical displacements
// sum to k.  Enumeration is combinatorial, hence the cap m <= 8.
inline double restricted_min_exhaustive(int p, double c, int m, int k) {
    detail::check_p(p);
    detail::check_c(p, c);
    if (m < 1 || m > 8) throw BadRange("exhaustive enumeration supports 1 <= m <= 8");
    if (k < 0 || k > m * p)
        throw BadK("k = " + std::to_string(k) + " outside [0, m*p]");
    std::vector<double> weight(std::size_t(p) + 1);
    weight[0] = double(p);
    for (int i = 1; i <= p; ++i) weight[std::size_t(i)] = c * std::hypot(double(p), double(i));

    double best = std::numeric_limits<double>::infinity();
    // Choose counts for step kinds (p,p), (p,p-1), ..., (p,0).
    const auto recurse = [&](auto&& self, int kind, int steps_left, int k_left,
                             double acc) -> void {
        if (kind == 0) {
            if (k_left == 0) best = std::min(best, acc + steps_left * weight[0]);
            return;
        }
        const int max_count = std::min(steps_left, k_left / kind);
        for (int count = 0; count <= max_count; ++count)
            self(self, kind - 1, steps_left - count, k_left - count * kind,
                 acc + count * weight[std::size_t(kind)]);
    };
    recurse(recurse, p, m, k, 0.0);
    return best;
}

// Finite-radius estimate of the limiting ratio extremes of W(v)/|v|.
struct ErrorEstimate {
    int radius = 0;
    double liminf = 0.0; // smallest observed ratio
    double limsup = 0.0; // largest observed ratio
    double mre = 0.0;    // max(|liminf-1|, |limsup-1|)
    Vec2i argmin;
    Vec2i argmax;
};

// Sweeps the half octant 0 <= k <= n <= radius in one search and evaluates
// ratios only on the outer shell n >= radius/2, where finite-size transients
// have died off.
inline ErrorEstimate estimate_error(const Mask& m, int radius) {
    if (radius < m.p())
        throw RadiusTooSmall("radius must be at least the mask half-width");
    const LengthField field(m, radius);
    ErrorEstimate est;
    est.radius = radius;
    est.liminf = std::numeric_limits<double>::infinity();
    est.limsup = -std::numeric_limits<double>::infinity();
    for (int n = (radius + 1) / 2; n <= radius; ++n)
        for (int k = 0; k <= n; ++k) {
            const double ratio = field.at(n, k) / std::hypot(double(n), double(k));
            if (ratio < est.liminf) {
                est.liminf = ratio;
                est.argmin = {n, k};
            }
            if (ratio > est.limsup) {
                est.limsup = ratio;
                est.argmax = {n, k};
            }
        }
    est.mre = std::max(std::abs(est.liminf - 1.0), std::abs(est.limsup - 1.0));
    return est;
}

// Exact lower bound on all ratios: min over mask vectors of w(v)/|v|.
inline double min_mask_ratio(const Mask& m) {
    double best = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= m.p(); ++n)
        for (int k = 0; k <= n; ++k)
            best = std::min(best, m.lookup(n, k) / std::hypot(double(n), double(k)));
    return best;
}

// True iff no mask entry is beaten by a composite path, i.e. the induced
// length agrees with the stored weight on every mask vector.
inline bool self_consistent(const Mask& m) {
    const LengthField field(m, m.p());
    for (int n = 1; n <= m.p(); ++n)
        for (int k = 0; k <= n; ++k)
            if (field.at(n, k) < m.lookup(n, k) - 1e-12) return false;
    return true;
}

} // namespace chamfer
