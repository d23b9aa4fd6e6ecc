#ifndef BALLAST_LOAD_CONNECTED_HPP
#define BALLAST_LOAD_CONNECTED_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "ballast/core.hpp"
#include "ballast/error.hpp"
#include "ballast/rational.hpp"

namespace ballast {

namespace detail {

inline void require_lengths(std::span<const Rational> lengths) {
    if (lengths.empty()) throw InputError("no lengths given");
    for (const auto& l : lengths)
        if (l <= 0) throw InputError("lengths must be positive");
}

/// Input indices by decreasing length, ties by input index.
inline std::vector<std::size_t> by_decreasing_length(std::span<const Rational> lengths) {
    std::vector<std::size_t> idx(lengths.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return lengths[a] > lengths[b]; });
    return idx;
}

} // namespace detail

/// Optimal gap-free plane loading. Items go in decreasing length; the longest
/// is centered at -l2/4, the second is attached on its right, and the rest
/// are attached alternately left and right of the growing block. The loaded
/// union is one interval at every step, so each center is that interval's
/// midpoint and the deviation is exactly l2/4.
inline Placement plan_connected(std::span<const Rational> lengths) {
    detail::require_lengths(lengths);
    const std::vector<std::size_t> order = detail::by_decreasing_length(lengths);
    Placement p;

    if (order.size() == 1) {
        p.push({Rational(0), lengths[order[0]], 1}, order[0]);
        return p;
    }

    const Rational& first = lengths[order[0]];
    const Rational mid = -lengths[order[1]] / 4;
    p.push({mid, first, 1}, order[0]);
    Rational lo = mid - first / 2, hi = mid + first / 2;

    for (std::size_t k = 1; k < order.size(); ++k) {
        const Rational& len = lengths[order[k]];
        // step k+1: even steps attach right, odd steps left
        if (k % 2 == 1) {
            p.push({hi + len / 2, len, 1}, order[k]);
            hi += len;
        } else {
            p.push({lo - len / 2, len, 1}, order[k]);
            lo -= len;
        }
    }
    return p;
}

/// l2/4 for the second-largest length l2, or 0 for a single item.
inline Rational connected_optimum(std::span<const Rational> lengths) {
    detail::require_lengths(lengths);
    if (lengths.size() == 1) return 0;
    const std::vector<std::size_t> order = detail::by_decreasing_length(lengths);
    return lengths[order[1]] / 4;
}

} // namespace ballast

#endif // BALLAST_LOAD_CONNECTED_HPP
