#ifndef BALLAST_INSTANCES_HPP
#define BALLAST_INSTANCES_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ballast/error.hpp"
#include "ballast/rational.hpp"
#include "ballast/unload.hpp"

namespace ballast {

// ---------------------------------------------------------------------------
// 3-Partition construction

/// Y holds 3m positive integers summing to m*B with B/4 < y < B/2.
/// `origin_count` is M, the number of points at 0; it defaults to 4mB + 1.
struct ThreePartitionSpec {
    std::vector<long long> y;
    std::optional<long long> origin_count;
};

/// M zeros, the points of Y, and m copies of -B, in that index order.
/// Loading the zeros first, a 3-partition of Y exists iff the remaining
/// points can follow with every center inside [0, B/M].
struct ThreePartitionInstance {
    DiscreteInstance instance;
    Rational lo;
    Rational hi;
    std::size_t origin_count;
    std::size_t triples;
    long long bound; ///< B

    std::size_t zero_index(std::size_t i) const { return i; }
    std::size_t y_index(std::size_t j) const { return origin_count + j; }
    std::size_t sink_index(std::size_t t) const { return origin_count + 3 * triples + t; }
};

inline constexpr long long kMaxOriginCount = 10'000'000;

inline ThreePartitionInstance gen_3partition_instance(const ThreePartitionSpec& spec) {
    const auto& y = spec.y;
    if (y.empty() || y.size() % 3 != 0) throw InputError("|Y| must be a positive multiple of 3, got " + std::to_string(y.size()));
    const auto m = static_cast<long long>(y.size() / 3);
    long long sum = 0;
    for (long long v : y) {
        if (v <= 0) throw InputError("Y must hold positive integers");
        sum += v;
    }
    if (sum % m != 0) throw InputError("sum of Y is not divisible by m, so B is not integral");
    const long long b = sum / m;
    for (long long v : y)
        if (!(4 * v > b && 2 * v < b))
            throw InputError("B/4 < y < B/2 fails for y = " + std::to_string(v) + " (B = " + std::to_string(b) + ")");

    const long long min_origin = 4 * m * b + 1;
    const long long origin = spec.origin_count.value_or(min_origin);
    if (origin < min_origin)
        throw InputError("M must exceed 4mB = " + std::to_string(min_origin - 1) + ", got " + std::to_string(origin));
    if (origin > kMaxOriginCount) throw PreconditionError("M = " + std::to_string(origin) + " is too large to materialize");

    std::vector<Rational> pts(static_cast<std::size_t>(origin), Rational(0));
    for (long long v : y) pts.emplace_back(v);
    for (long long t = 0; t < m; ++t) pts.emplace_back(-b);
    return {DiscreteInstance(std::move(pts)), Rational(0), Rational(b, origin), static_cast<std::size_t>(origin),
            static_cast<std::size_t>(m), b};
}

/// The order proving the "if" direction: all zeros, then for each triple
/// its three points followed by one -B. Triples index into Y.
inline std::vector<std::size_t> witness_order(const ThreePartitionInstance& inst,
                                              std::span<const std::array<std::size_t, 3>> triples) {
    if (triples.size() != inst.triples) throw InputError("expected " + std::to_string(inst.triples) + " triples");
    std::vector<bool> used(3 * inst.triples, false);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < inst.origin_count; ++i) order.push_back(inst.zero_index(i));
    for (std::size_t t = 0; t < triples.size(); ++t) {
        Rational sum = 0;
        for (std::size_t j : triples[t]) {
            if (j >= used.size() || used[j]) throw InputError("triples must partition the indices of Y");
            used[j] = true;
            sum += inst.instance[inst.y_index(j)];
            order.push_back(inst.y_index(j));
        }
        if (sum != inst.bound) throw InputError("triple " + std::to_string(t) + " does not sum to B");
        order.push_back(inst.sink_index(t));
    }
    return order;
}

/// Coincident points pulled apart and rescaled to a minimum gap of 1.
///
/// The k-th repeat of a value (k = 0 for the first occurrence) moves by
/// k * epsilon with epsilon = 1/(n^2 (max|x| + 1)); the result is then divided
/// by its minimum gap. Every center moves by at most `max_shift` before the
/// division, so a window [lo, hi] of the original maps to [lo, hi] / gap
/// (kept fixed) and, conservatively, to [lo - max_shift, hi + max_shift] / gap.
struct Perturbed {
    DiscreteInstance instance;
    Rational epsilon;
    Rational max_shift;
    Rational gap; ///< the divisor applied after shifting

    std::array<Rational, 2> fixed_window(const Rational& lo, const Rational& hi) const { return {lo / gap, hi / gap}; }
    std::array<Rational, 2> widened_window(const Rational& lo, const Rational& hi) const {
        return {(lo - max_shift) / gap, (hi + max_shift) / gap};
    }
};

inline Perturbed perturb_distinct(const DiscreteInstance& x) {
    const auto n = static_cast<long long>(x.size());
    Rational largest = 0;
    for (const auto& p : x.points()) largest = std::max(largest, abs(p));
    const Rational eps = 1 / (Rational(n * n) * (largest + 1));

    std::map<Rational, long long> seen;
    std::vector<Rational> shifted;
    Rational max_shift = 0;
    for (const auto& p : x.points()) {
        const long long k = seen[p]++;
        const Rational shift = eps * k;
        max_shift = std::max(max_shift, shift);
        shifted.push_back(p + shift);
    }

    std::vector<Rational> sorted = shifted;
    std::sort(sorted.begin(), sorted.end());
    Rational gap = 1;
    bool have_gap = false;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const Rational d = sorted[i] - sorted[i - 1];
        if (!have_gap || d < gap) gap = d;
        have_gap = true;
    }
    for (auto& p : shifted) p /= gap;
    return {DiscreteInstance(std::move(shifted)), eps, max_shift, gap};
}

// ---------------------------------------------------------------------------
// Window verification

struct WindowVerdict {
    bool ok = true;
    std::optional<std::size_t> first_violation; ///< 1-based step
    OrderReport report;
};

/// Checks every prefix center of a loading order against the closed window [lo, hi].
inline WindowVerdict verify_window(const DiscreteInstance& x, std::span<const std::size_t> order, const Rational& lo,
                                   const Rational& hi) {
    WindowVerdict v{true, std::nullopt, evaluate_order(x, order)};
    for (std::size_t k = 0; k < v.report.trajectory.size(); ++k) {
        const Rational& c = v.report.trajectory[k];
        if (c < lo || c > hi) {
            v.ok = false;
            v.first_violation = k + 1;
            break;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Random families

enum class Family { Uniform, TwoSided, ExponentialLengths, PaperExample };
enum class InstanceKind { Unload, Load };

inline Family parse_family(std::string_view name) {
    if (name == "uniform") return Family::Uniform;
    if (name == "two-sided") return Family::TwoSided;
    if (name == "exponential-lengths") return Family::ExponentialLengths;
    if (name == "paper-example") return Family::PaperExample;
    throw InputError("unknown family '" + std::string(name) + "'");
}

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::Uniform: return "uniform";
    case Family::TwoSided: return "two-sided";
    case Family::ExponentialLengths: return "exponential-lengths";
    case Family::PaperExample: return "paper-example";
    }
    return "unknown";
}

struct RandomParams {
    std::size_t n = 10;
    long long range = 10; ///< magnitude bound for point families
    Rational ell{1};      ///< smallest length, exponential-lengths
    Rational ratio{2};    ///< growth factor, exponential-lengths
};

struct GeneratedInstance {
    InstanceKind kind;
    std::vector<Rational> values; ///< points or lengths
};

/// The 11-point sequence 1, ..., 7, -7, -7, -7, -7.
inline std::vector<Rational> paper_example_points() {
    std::vector<Rational> pts;
    for (int i = 1; i <= 7; ++i) pts.emplace_back(i);
    for (int i = 0; i < 4; ++i) pts.emplace_back(-7);
    return pts;
}

/// Deterministic per seed (mt19937_64, reduced by modulo so the stream is
/// the same on every platform).
///   uniform:   n integers in [-range, range]
///   two-sided: n points p/q, |p| in [1, range], q in [1, 4], alternating sign
///   exponential-lengths: ell, ell*x, ..., ell*x^(n-1)
///   paper-example: the fixed 11-point instance
inline GeneratedInstance gen_random(Family family, const RandomParams& params, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&](long long lo, long long hi) {
        const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(rng() % width);
    };

    switch (family) {
    case Family::PaperExample:
        return {InstanceKind::Unload, paper_example_points()};
    case Family::ExponentialLengths: {
        if (params.ell <= 0) throw InputError("ell must be positive");
        std::vector<Rational> lengths;
        Rational l = params.ell;
        for (std::size_t i = 0; i < params.n; ++i, l *= params.ratio) lengths.push_back(l);
        return {InstanceKind::Load, std::move(lengths)};
    }
    case Family::Uniform:
    case Family::TwoSided:
        break;
    }

    if (params.n < 1) throw InputError("n must be at least 1");
    if (params.range < 1) throw InputError("range must be at least 1");
    std::vector<Rational> pts;
    for (std::size_t i = 0; i < params.n; ++i) {
        if (family == Family::Uniform) {
            pts.emplace_back(draw(-params.range, params.range));
        } else {
            const long long mag = draw(1, params.range);
            const long long den = draw(1, 4);
            pts.emplace_back(i % 2 == 0 ? mag : -mag, den);
        }
    }
    return {InstanceKind::Unload, std::move(pts)};
}

// ---------------------------------------------------------------------------
// Unit item sets

/// Two unit items whose midpoints are neither equal nor at least 1 apart.
struct UnitSetViolation {
    std::size_t first;
    std::size_t second;
};

/// Midpoints of unit items are valid when every pair coincides (a stack) or
/// is at distance >= 1.
inline std::optional<UnitSetViolation> validate_unit_item_set(std::span<const Rational> midpoints) {
    std::vector<std::size_t> idx(midpoints.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return midpoints[a] < midpoints[b]; });
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const Rational d = midpoints[idx[k]] - midpoints[idx[k - 1]];
        if (d != 0 && d < 1) return UnitSetViolation{std::min(idx[k - 1], idx[k]), std::max(idx[k - 1], idx[k])};
    }
    return std::nullopt;
}

} // namespace ballast

#endif // BALLAST_INSTANCES_HPP
