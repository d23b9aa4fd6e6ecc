#ifndef BALLAST_CORE_HPP
#define BALLAST_CORE_HPP

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ballast/error.hpp"
#include "ballast/rational.hpp"

namespace ballast {

/// An item of length `length` placed with its midpoint at `midpoint` in layer `layer`.
/// Covers the closed interval [midpoint - length/2, midpoint + length/2].
struct PlacedInterval {
    Rational midpoint;
    Rational length{1};
    int layer = 1;

    Rational left() const { return midpoint - length / 2; }
    Rational right() const { return midpoint + length / 2; }

    friend bool operator==(const PlacedInterval&, const PlacedInterval&) = default;
};

/// Centers of gravity over time. For loading plans entry 0 is the empty state.
using Trajectory = std::vector<Rational>;

/// First rule broken by a state. `index` (and `other`, for overlaps) refer to
/// positions in the checked sequence.
struct Violation {
    enum class Kind { NonPositiveLength, BadLayer, Overlap, Unsupported };

    Kind kind;
    std::size_t index = 0;
    std::size_t other = 0;

    std::string describe() const {
        switch (kind) {
        case Kind::NonPositiveLength:
            return "interval " + std::to_string(index) + " has non-positive length";
        case Kind::BadLayer:
            return "interval " + std::to_string(index) + " has layer < 1";
        case Kind::Overlap:
            return "intervals " + std::to_string(other) + " and " + std::to_string(index) + " overlap in the same layer";
        case Kind::Unsupported:
            return "interval " + std::to_string(index) + " is not covered by the layer below";
        }
        return "unknown violation";
    }
};

/// Checks the two layering rules: intervals sharing a layer have disjoint
/// interiors (touching endpoints are fine), and every interval in layer j >= 2
/// lies inside the union of layer j-1. O(n log n).
inline std::optional<Violation> validate_state(std::span<const PlacedInterval> state) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i].length <= 0) return Violation{Violation::Kind::NonPositiveLength, i, i};
        if (state[i].layer < 1) return Violation{Violation::Kind::BadLayer, i, i};
    }

    std::vector<std::size_t> idx(state.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<Rational> lefts(state.size()), rights(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        lefts[i] = state[i].left();
        rights[i] = state[i].right();
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (state[a].layer != state[b].layer) return state[a].layer < state[b].layer;
        if (lefts[a] != lefts[b]) return lefts[a] < lefts[b];
        return a < b;
    });

    struct Segment {
        Rational lo, hi;
    };
    std::vector<Segment> below; // merged union of the previous layer
    int below_layer = 0;

    std::size_t pos = 0;
    while (pos < idx.size()) {
        const int layer = state[idx[pos]].layer;
        std::size_t end = pos;
        while (end < idx.size() && state[idx[end]].layer == layer) ++end;

        // disjoint interiors within the layer
        std::size_t reach = idx[pos];
        for (std::size_t k = pos + 1; k < end; ++k) {
            const std::size_t cur = idx[k];
            if (rights[reach] > lefts[cur]) return Violation{Violation::Kind::Overlap, std::max(reach, cur), std::min(reach, cur)};
            if (rights[cur] > rights[reach]) reach = cur;
        }

        if (layer >= 2) {
            const bool have_below = below_layer == layer - 1;
            for (std::size_t k = pos; k < end; ++k) {
                const std::size_t cur = idx[k];
                bool covered = false;
                if (have_below) {
                    auto it = std::upper_bound(below.begin(), below.end(), lefts[cur],
                                               [](const Rational& v, const Segment& s) { return v < s.lo; });
                    if (it != below.begin()) {
                        --it;
                        covered = rights[cur] <= it->hi;
                    }
                }
                if (!covered) return Violation{Violation::Kind::Unsupported, cur, cur};
            }
        }

        below.clear();
        for (std::size_t k = pos; k < end; ++k) {
            const std::size_t cur = idx[k];
            if (!below.empty() && lefts[cur] <= below.back().hi) {
                if (rights[cur] > below.back().hi) below.back().hi = rights[cur];
            } else {
                below.push_back({lefts[cur], rights[cur]});
            }
        }
        below_layer = layer;
        pos = end;
    }
    return std::nullopt;
}

/// Length-weighted mean of the midpoints. The empty state has no center;
/// callers that need cog(s_0) = 0 apply that convention themselves.
inline Rational center_of_gravity(std::span<const PlacedInterval> state) {
    if (state.empty()) throw InputError("center of gravity of an empty state is undefined");
    Rational moment = 0, mass = 0;
    for (const auto& iv : state) {
        moment += iv.length * iv.midpoint;
        mass += iv.length;
    }
    return moment / mass;
}

/// Center after adding an interval to a state with center `prev_cog` and total length `prev_mass`.
inline Rational cog_update(const Rational& prev_cog, const Rational& prev_mass, const Rational& new_midpoint,
                           const Rational& new_length) {
    return (prev_cog * prev_mass + new_midpoint * new_length) / (prev_mass + new_length);
}

/// The unique midpoint that moves the center from `prev_cog` to `target_cog`.
inline Rational required_midpoint(const Rational& prev_cog, const Rational& prev_mass, const Rational& target_cog,
                                  const Rational& new_length) {
    return (target_cog * (prev_mass + new_length) - prev_cog * prev_mass) / new_length;
}

/// An ordered loading plan. `steps[k]` is the interval placed at step k+1 and
/// `item_ids[k]` the input index of the item it came from.
struct Placement {
    std::vector<PlacedInterval> steps;
    std::vector<std::size_t> item_ids;

    std::size_t size() const { return steps.size(); }

    void push(PlacedInterval iv, std::size_t item_id) {
        steps.push_back(std::move(iv));
        item_ids.push_back(item_id);
    }

    /// Inverse of item_ids: the step at which each input item is placed.
    std::vector<std::size_t> step_of_item() const {
        std::vector<std::size_t> inv(item_ids.size());
        for (std::size_t k = 0; k < item_ids.size(); ++k) inv.at(item_ids[k]) = k;
        return inv;
    }
};

/// cog(s_0), ..., cog(s_n) with cog(s_0) = 0.
inline Trajectory centers(const Placement& p) {
    Trajectory out;
    out.reserve(p.size() + 1);
    out.emplace_back(0);
    Rational cog = 0, mass = 0;
    for (const auto& iv : p.steps) {
        cog = cog_update(cog, mass, iv.midpoint, iv.length);
        mass += iv.length;
        out.push_back(cog);
    }
    return out;
}

/// max_j |cog(s_j)| over all n+1 states.
inline Rational deviation(const Placement& p) {
    Rational best = 0;
    for (const auto& c : centers(p)) best = std::max(best, abs(c));
    return best;
}

/// Step (1-based) of the first prefix that is not a valid state, with the reason.
struct PlacementViolation {
    std::size_t step;
    Violation violation;
};

namespace detail {

// Per-layer interval sets grown one interval at a time. Adding to layer j
// never breaks support for layer j+1, so a valid prefix only needs the new
// interval checked against its own layer and the one below.
class LayeredIndex {
public:
    // false if `iv` overlaps its layer or is not covered by the layer below
    bool admits(const PlacedInterval& iv) const {
        if (iv.length <= 0 || iv.layer < 1) return false;
        const Rational lo = iv.left(), hi = iv.right();
        if (auto layer = items_.find(iv.layer); layer != items_.end()) {
            const auto& m = layer->second;
            auto next = m.lower_bound(lo);
            if (next != m.end() && next->first < hi) return false;
            if (next != m.begin() && std::prev(next)->second > lo) return false;
        }
        if (iv.layer == 1) return true;
        auto below = cover_.find(iv.layer - 1);
        if (below == cover_.end()) return false;
        auto seg = below->second.upper_bound(lo);
        if (seg == below->second.begin()) return false;
        return hi <= std::prev(seg)->second;
    }

    void add(const PlacedInterval& iv) {
        Rational lo = iv.left(), hi = iv.right();
        items_[iv.layer].emplace(lo, hi);
        auto& c = cover_[iv.layer];
        auto it = c.upper_bound(lo);
        if (it != c.begin() && std::prev(it)->second >= lo) {
            --it;
            lo = it->first;
            hi = std::max(hi, it->second);
        }
        while (it != c.end() && it->first <= hi) {
            hi = std::max(hi, it->second);
            it = c.erase(it);
        }
        c[lo] = hi;
    }

private:
    std::map<int, std::map<Rational, Rational>> items_;
    std::map<int, std::map<Rational, Rational>> cover_;
};

} // namespace detail

/// O(n log n): each prefix is checked incrementally, and only the failing
/// prefix goes through validate_state for the report.
inline std::optional<PlacementViolation> validate_placement(const Placement& p) {
    detail::LayeredIndex index;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!index.admits(p.steps[k])) {
            std::span<const PlacedInterval> prefix(p.steps.data(), k + 1);
            if (auto v = validate_state(prefix)) return PlacementViolation{k + 1, *v};
        }
        index.add(p.steps[k]);
    }
    return std::nullopt;
}

/// Reflection m -> -m of every interval.
inline Placement mirrored(const Placement& p) {
    Placement out = p;
    for (auto& iv : out.steps) iv.midpoint = -iv.midpoint;
    return out;
}

} // namespace ballast

#endif // BALLAST_CORE_HPP
