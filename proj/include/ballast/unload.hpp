#ifndef BALLAST_UNLOAD_HPP
#define BALLAST_UNLOAD_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "ballast/core.hpp"
#include "ballast/error.hpp"
#include "ballast/rational.hpp"

namespace ballast {

/// A multiset of unit-weight points on the line.
class DiscreteInstance {
public:
    explicit DiscreteInstance(std::vector<Rational> points) : points_(std::move(points)) {
        if (points_.empty()) throw InputError("instance has no points");
    }

    const std::vector<Rational>& points() const { return points_; }
    const Rational& operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const { return points_.size(); }

    Rational sum() const {
        Rational s = 0;
        for (const auto& x : points_) s += x;
        return s;
    }
    Rational mean() const { return sum() / static_cast<long long>(points_.size()); }

    friend bool operator==(const DiscreteInstance&, const DiscreteInstance&) = default;

private:
    std::vector<Rational> points_;
};

/// Result of sequencing an instance.
///
/// `order` is the loading sequence (input indices); the unloading sequence is
/// its reverse. `trajectory[k]` is the center of the first k+1 points loaded,
/// which is the center of the points still present before the (n-k)-th removal.
struct OrderReport {
    std::vector<std::size_t> order;
    Trajectory trajectory;
    Rational lo;
    Rational hi;
    Rational span;
};

namespace detail {

inline void require_permutation(std::span<const std::size_t> order, std::size_t n) {
    if (order.size() != n) throw InputError("order has " + std::to_string(order.size()) + " entries, expected " + std::to_string(n));
    std::vector<bool> seen(n, false);
    for (std::size_t i : order) {
        if (i >= n || seen[i]) throw InputError("order is not a permutation of 0.." + std::to_string(n - 1));
        seen[i] = true;
    }
}

inline OrderReport summarize(std::vector<std::size_t> order, Trajectory trajectory) {
    OrderReport r{std::move(order), std::move(trajectory), 0, 0, 0};
    if (!r.trajectory.empty()) {
        auto [lo, hi] = std::minmax_element(r.trajectory.begin(), r.trajectory.end());
        r.lo = *lo;
        r.hi = *hi;
        r.span = r.hi - r.lo;
    }
    return r;
}

} // namespace detail

/// Prefix centers C_k = (x_{o_1} + ... + x_{o_k}) / k of a loading order, with L, R and R - L.
inline OrderReport evaluate_order(const DiscreteInstance& x, std::span<const std::size_t> order) {
    detail::require_permutation(order, x.size());
    Trajectory t;
    t.reserve(order.size());
    Rational sum = 0;
    long long k = 0;
    for (std::size_t i : order) {
        sum += x[i];
        t.push_back(sum / ++k);
    }
    return detail::summarize({order.begin(), order.end()}, std::move(t));
}

/// Suffix centers C_j = cog(x_{r_j}, ..., x_{r_n}) of a removal order r, j = 1..n.
/// The report's `order` is the removal order as given.
inline OrderReport evaluate_unloading_order(const DiscreteInstance& x, std::span<const std::size_t> removal) {
    detail::require_permutation(removal, x.size());
    Trajectory t(removal.size());
    Rational sum = 0;
    long long k = 0;
    for (std::size_t j = removal.size(); j-- > 0;) {
        sum += x[removal[j]];
        t[j] = sum / ++k;
    }
    return detail::summarize({removal.begin(), removal.end()}, std::move(t));
}

/// Intervals -> points: x_i = m_i. Centers, and hence spans, are unchanged.
inline DiscreteInstance reduce_unload_to_discrete(std::span<const PlacedInterval> items) {
    std::vector<Rational> pts;
    pts.reserve(items.size());
    for (const auto& iv : items) pts.push_back(iv.midpoint);
    return DiscreteInstance(std::move(pts));
}

struct UnitReduction {
    std::vector<PlacedInterval> items;
    Rational min_gap; ///< d; every center (and span) of the image is the original divided by d
};

/// Points -> unit intervals at m_i = x_i / d, d the smallest positive pairwise
/// distance. Coincident points become a stack (layers 1, 2, ...) at one midpoint.
inline UnitReduction reduce_discrete_to_unload(const DiscreteInstance& x) {
    std::vector<Rational> sorted = x.points();
    std::sort(sorted.begin(), sorted.end());
    std::optional<Rational> gap;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        Rational d = sorted[i] - sorted[i - 1];
        if (d > 0 && (!gap || d < *gap)) gap = d;
    }
    if (!gap) throw InputError("reduction needs at least two distinct points");

    UnitReduction out{{}, *gap};
    std::map<Rational, int> height;
    for (const auto& p : x.points()) {
        int layer = ++height[p];
        out.items.push_back(PlacedInterval{p / *gap, Rational(1), layer});
    }
    return out;
}

struct Normalized {
    DiscreteInstance instance;
    Rational shift; ///< the subtracted mean
};

/// Translates the instance so its points sum to 0. Spans are translation invariant.
inline Normalized normalize(const DiscreteInstance& x) {
    Rational mean = x.mean();
    std::vector<Rational> pts;
    pts.reserve(x.size());
    for (const auto& p : x.points()) pts.push_back(p - mean);
    return {DiscreteInstance(std::move(pts)), mean};
}

/// Index pools of a normalized instance. `positive` by increasing value,
/// `negative` by increasing magnitude, ties by input index; `zeros` ascending.
struct SignedPools {
    std::vector<std::size_t> positive;
    std::vector<std::size_t> negative;
    std::vector<std::size_t> zeros;
};

inline SignedPools split_pools(const DiscreteInstance& normalized) {
    SignedPools pools;
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const Rational& v = normalized[i];
        if (v > 0)
            pools.positive.push_back(i);
        else if (v < 0)
            pools.negative.push_back(i);
        else
            pools.zeros.push_back(i);
    }
    auto by_magnitude = [&](std::size_t a, std::size_t b) {
        Rational ma = abs(normalized[a]), mb = abs(normalized[b]);
        if (ma != mb) return ma < mb;
        return a < b;
    };
    std::sort(pools.positive.begin(), pools.positive.end(), by_magnitude);
    std::sort(pools.negative.begin(), pools.negative.end(), by_magnitude);
    return pools;
}

/// max_i |u_i| / i over the normalized points sorted by magnitude. Any order's
/// span is at least this.
inline Rational naive_lower_bound(const DiscreteInstance& x) {
    const DiscreteInstance v = normalize(x).instance;
    std::vector<Rational> mags;
    mags.reserve(v.size());
    for (const auto& p : v.points()) mags.push_back(abs(p));
    std::sort(mags.begin(), mags.end());
    Rational best = 0;
    for (std::size_t i = 0; i < mags.size(); ++i) best = std::max(best, Rational(mags[i] / static_cast<long long>(i + 1)));
    return best;
}

/// The H-permutation of an instance, reported in original coordinates.
///
/// Works on the normalized points. Zeros go first. While the partial sum S is
/// zero the smallest-magnitude point is placed (a cross-sign magnitude tie goes
/// to the positive point for the very first nonzero placement, to the negative
/// one afterwards). Otherwise, with a the smallest remaining point of S's sign
/// and b the smallest of the opposite sign, b is placed unless S + a + b has
/// the opposite sign of S; S + a + b = 0 places the negative point. Once a pool
/// runs dry the other is emptied in increasing magnitude.
inline OrderReport h_permutation(const DiscreteInstance& x) {
    const DiscreteInstance v = normalize(x).instance;
    const SignedPools pools = split_pools(v);

    std::vector<std::size_t> order(pools.zeros.begin(), pools.zeros.end());
    order.reserve(v.size());
    Rational s = 0;
    std::size_t pi = 0, ni = 0;
    bool first_nonzero = true;
    const auto& pos = pools.positive;
    const auto& neg = pools.negative;

    while (pi < pos.size() || ni < neg.size()) {
        bool take_positive;
        if (pi == pos.size()) {
            take_positive = false;
        } else if (ni == neg.size()) {
            take_positive = true;
        } else {
            const Rational& p = v[pos[pi]];
            const Rational& n = v[neg[ni]];
            if (s == 0) {
                const Rational mag_n = -n;
                take_positive = p < mag_n || (p == mag_n && first_nonzero);
            } else {
                take_positive = s + p + n < 0;
            }
        }
        const std::size_t idx = take_positive ? pos[pi++] : neg[ni++];
        s += v[idx];
        order.push_back(idx);
        first_nonzero = false;
    }
    return evaluate_order(x, order);
}

/// 1-based positions of P_j and N_j in the H-permutation from the prefix-sum
/// formulas (shifted by the number of zeros, which lead the order):
///   pi+_j = j + max{k : |N_1| + ... + |N_k| <= P_1 + ... + P_j}
///   pi-_j = j + max{k : P_1 + ... + P_k < |N_1| + ... + |N_j|}
struct HPositions {
    SignedPools pools;
    std::vector<std::size_t> positive;
    std::vector<std::size_t> negative;
};

inline HPositions closed_form_positions(const DiscreteInstance& x) {
    const DiscreteInstance v = normalize(x).instance;
    HPositions out{split_pools(v), {}, {}};
    const auto& pos = out.pools.positive;
    const auto& neg = out.pools.negative;
    const std::size_t z = out.pools.zeros.size();

    std::vector<Rational> psum(pos.size() + 1, Rational(0)), nsum(neg.size() + 1, Rational(0));
    for (std::size_t j = 0; j < pos.size(); ++j) psum[j + 1] = psum[j] + v[pos[j]];
    for (std::size_t j = 0; j < neg.size(); ++j) nsum[j + 1] = nsum[j] - v[neg[j]];

    std::size_t k = 0;
    for (std::size_t j = 1; j <= pos.size(); ++j) {
        while (k < neg.size() && nsum[k + 1] <= psum[j]) ++k;
        out.positive.push_back(z + j + k);
    }
    k = 0;
    for (std::size_t j = 1; j <= neg.size(); ++j) {
        while (k < pos.size() && psum[k + 1] < nsum[j]) ++k;
        out.negative.push_back(z + j + k);
    }
    return out;
}

/// max over the H-permutation of |x| / position (normalized coordinates):
/// the certified lower bound on the optimal span.
inline Rational h_lower_bound(const DiscreteInstance& x) {
    const DiscreteInstance v = normalize(x).instance;
    const OrderReport h = h_permutation(x);
    Rational best = 0;
    for (std::size_t k = 0; k < h.order.size(); ++k)
        best = std::max(best, Rational(abs(v[h.order[k]]) / static_cast<long long>(k + 1)));
    return best;
}

} // namespace ballast

#endif // BALLAST_UNLOAD_HPP
