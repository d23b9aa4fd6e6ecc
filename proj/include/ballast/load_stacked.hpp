#ifndef BALLAST_LOAD_STACKED_HPP
#define BALLAST_LOAD_STACKED_HPP

#include <cstddef>

#include "ballast/core.hpp"
#include "ballast/error.hpp"
#include "ballast/rational.hpp"

namespace ballast {

/// n identical items of length `length`, stackable up to `max_height` layers.
struct StackPlanParams {
    std::size_t count = 1;
    std::size_t max_height = 1;
    Rational length{1};
};

namespace detail {
inline void require_valid(const StackPlanParams& p) {
    if (p.count < 1) throw InputError("stacked plan needs at least one item");
    if (p.max_height < 1) throw InputError("maximum stack height must be at least 1");
    if (p.length <= 0) throw InputError("item length must be positive");
}
} // namespace detail

/// Optimal stacked loading. The first mu items form a stack at l/(1+mu); the
/// rest fill stacks pairwise on both sides at unit-length offsets, left item
/// then right item, until both stacks of a pair reach height mu. Every prefix
/// center stays in [0, l/(1+mu)]. With n <= mu one stack at 0 suffices.
inline Placement plan_stacked(const StackPlanParams& params) {
    detail::require_valid(params);
    const auto mu = static_cast<long long>(params.max_height);
    const Rational& len = params.length;
    Placement p;

    if (params.count <= params.max_height) {
        for (std::size_t i = 0; i < params.count; ++i) p.push({Rational(0), len, static_cast<int>(i + 1)}, i);
        return p;
    }

    const Rational base = Rational(1, 1 + mu);
    for (long long h = 1; h <= mu; ++h) p.push({base * len, len, static_cast<int>(h)}, p.size());

    for (std::size_t k = 0; k + params.max_height < params.count; ++k) {
        const auto pair = static_cast<long long>(k / (2 * params.max_height)) + 1;
        const std::size_t within = k % (2 * params.max_height);
        const bool left = within % 2 == 0;
        const int height = static_cast<int>(within / 2) + 1;
        const Rational offset = left ? Rational(base - pair) : Rational(base + pair);
        p.push({offset * len, len, height}, p.size());
    }
    return p;
}

/// Smallest achievable deviation: l/(1+mu) when more than one stack is needed, else 0.
inline Rational stacked_optimum(const StackPlanParams& params) {
    detail::require_valid(params);
    if (params.count <= params.max_height) return 0;
    return params.length / (1 + static_cast<long long>(params.max_height));
}

} // namespace ballast

#endif // BALLAST_LOAD_STACKED_HPP
