#ifndef BALLAST_UNLOAD_EXACT_HPP
#define BALLAST_UNLOAD_EXACT_HPP

// Exact minimum-span sequencing for desk-scale instances.
//
// The center of a loaded prefix depends only on which points it contains,
// C(T) = sum(T) / |T|, so orders are chains of subsets and the solvers work
// over bitmasks. Points are scaled by the lcm of their denominators to
// integers; comparisons of centers are cross-multiplications. Small inputs use
// __int128, anything larger falls back to cpp_int.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <vector>

#include "ballast/error.hpp"
#include "ballast/rational.hpp"
#include "ballast/unload.hpp"

namespace ballast {

inline constexpr std::size_t kDefaultExactLimit = 20;
inline constexpr std::size_t kHardExactLimit = 26;
inline constexpr std::size_t kExhaustiveLimit = 10;

namespace detail::exact {

__extension__ typedef __int128 int128;

inline BigInt to_big(const BigInt& v) { return v; }
inline BigInt to_big(int128 v) {
    const bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return negative ? BigInt(-r) : r;
}

template <class W> W from_big(const BigInt& v) {
    if constexpr (std::is_same_v<W, BigInt>)
        return v;
    else
        return static_cast<W>(v.convert_to<long long>());
}

/// num / den with den > 0.
template <class W> struct Frac {
    W num;
    W den;
};

template <class W> bool less(const Frac<W>& a, const Frac<W>& b) { return a.num * b.den < b.num * a.den; }
template <class W> bool equal(const Frac<W>& a, const Frac<W>& b) { return a.num * b.den == b.num * a.den; }
template <class W> Frac<W> minus(const Frac<W>& a, const Frac<W>& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}

/// Points scaled to integers a_i = x_i * D.
struct Scaling {
    BigInt denominator;
    std::vector<BigInt> values;
    bool fits_fast = true;
};

inline const BigInt& fast_limit() {
    static const BigInt limit = BigInt(1) << 40;
    return limit;
}

inline Scaling scale(const DiscreteInstance& x) {
    Scaling s;
    s.denominator = 1;
    for (const auto& p : x.points()) s.denominator = boost::multiprecision::lcm(s.denominator, boost::multiprecision::denominator(p));
    for (const auto& p : x.points()) {
        BigInt v = boost::multiprecision::numerator(p) * (s.denominator / boost::multiprecision::denominator(p));
        if (boost::multiprecision::abs(v) >= fast_limit()) s.fits_fast = false;
        s.values.push_back(std::move(v));
    }
    return s;
}

template <class W> class SubsetTable {
public:
    SubsetTable(const Scaling& s) : n_(s.values.size()), denominator_(s.denominator) {
        const std::size_t size = std::size_t{1} << n_;
        sum_.assign(size, W(0));
        count_.assign(size, 0);
        for (std::size_t i = 0; i < n_; ++i) point_.push_back(from_big<W>(s.values[i]));
        for (std::size_t t = 1; t < size; ++t) {
            const std::size_t low = static_cast<std::size_t>(std::countr_zero(t));
            sum_[t] = sum_[t & (t - 1)] + point_[low];
            count_[t] = static_cast<std::uint8_t>(count_[t & (t - 1)] + 1);
        }
    }

    std::size_t n() const { return n_; }
    std::uint32_t full() const { return static_cast<std::uint32_t>((std::size_t{1} << n_) - 1); }
    Frac<W> center(std::uint32_t t) const { return {sum_[t], W(static_cast<long long>(count_[t]))}; }
    const W& point(std::size_t i) const { return point_[i]; }
    W total() const { return sum_[full()]; }

    Rational to_rational(const Frac<W>& f) const { return Rational(to_big(f.num), to_big(f.den) * denominator_); }
    Frac<W> from_rational(const Rational& r) const {
        Rational scaled = r * denominator_;
        return {from_big<W>(boost::multiprecision::numerator(scaled)), from_big<W>(boost::multiprecision::denominator(scaled))};
    }

    bool inside(std::uint32_t t, const Frac<W>& lo, const Frac<W>& hi) const {
        const Frac<W> c = center(t);
        return !less(c, lo) && !less(hi, c);
    }

    /// Lexicographically smallest loading order whose every prefix center lies in [lo, hi].
    std::optional<std::vector<std::size_t>> window_order(const Frac<W>& lo, const Frac<W>& hi) const {
        const std::size_t size = std::size_t{1} << n_;
        std::vector<char> good(size, 0);
        for (std::size_t t = size - 1; t > 0; --t) {
            const auto mask = static_cast<std::uint32_t>(t);
            if (!inside(mask, lo, hi)) continue;
            if (mask == full()) {
                good[t] = 1;
                continue;
            }
            for (std::size_t b = 0; b < n_; ++b)
                if (!(t >> b & 1) && good[t | (std::size_t{1} << b)]) {
                    good[t] = 1;
                    break;
                }
        }
        std::vector<std::size_t> order;
        std::size_t t = 0;
        while (order.size() < n_) {
            bool advanced = false;
            for (std::size_t b = 0; b < n_; ++b)
                if (!(t >> b & 1) && good[t | (std::size_t{1} << b)]) {
                    t |= std::size_t{1} << b;
                    order.push_back(b);
                    advanced = true;
                    break;
                }
            if (!advanced) return std::nullopt;
        }
        return order;
    }

private:
    std::size_t n_;
    BigInt denominator_;
    std::vector<W> point_;
    std::vector<W> sum_;
    std::vector<std::uint8_t> count_;
};

/// A chain's extreme centers, as the subsets attaining them.
struct Extremes {
    std::uint32_t lo;
    std::uint32_t hi;
};

template <class W> Frac<W> span_of(const SubsetTable<W>& tab, const Extremes& e) {
    return minus(tab.center(e.hi), tab.center(e.lo));
}

/// Pareto-front DP over subsets: for each T the nondominated (L, R) pairs over
/// all chains ending in T. Entries wider than `bound` are dropped; a chain
/// never narrows as it grows. Returns the optimal windows at the full set.
template <class W> std::vector<Extremes> optimal_windows(const SubsetTable<W>& tab, const Frac<W>& bound) {
    const std::size_t n = tab.n();
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::vector<std::uint32_t>> layers(n + 1);
    for (std::size_t t = 1; t < size; ++t) layers[static_cast<std::size_t>(std::popcount(t))].push_back(static_cast<std::uint32_t>(t));

    std::vector<std::vector<Extremes>> front(size);
    for (std::uint32_t t : layers[1]) front[t].push_back({t, t});

    std::vector<Extremes> cand;
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::uint32_t t : layers[k]) {
            const Frac<W> c = tab.center(t);
            cand.clear();
            for (std::size_t b = 0; b < n; ++b) {
                if (!(t >> b & 1)) continue;
                for (const Extremes& e : front[t ^ (std::uint32_t{1} << b)]) {
                    Extremes grown{less(c, tab.center(e.lo)) ? t : e.lo, less(tab.center(e.hi), c) ? t : e.hi};
                    if (!less(bound, span_of(tab, grown))) cand.push_back(grown);
                }
            }
            std::sort(cand.begin(), cand.end(), [&](const Extremes& a, const Extremes& b) {
                const Frac<W> la = tab.center(a.lo), lb = tab.center(b.lo);
                if (!equal(la, lb)) return less(lb, la); // larger L first
                return less(tab.center(a.hi), tab.center(b.hi));
            });
            auto& out = front[t];
            for (const Extremes& e : cand)
                if (out.empty() || less(tab.center(e.hi), tab.center(out.back().hi))) out.push_back(e);
        }
        for (std::uint32_t t : layers[k - 1]) std::vector<Extremes>().swap(front[t]);
    }

    const auto& last = front[tab.full()];
    std::vector<Extremes> best;
    for (const Extremes& e : last) {
        if (best.empty() || less(span_of(tab, e), span_of(tab, best.front()))) {
            best.assign(1, e);
        } else if (equal(span_of(tab, e), span_of(tab, best.front()))) {
            best.push_back(e);
        }
    }
    return best;
}

template <class F> decltype(auto) dispatch(const Scaling& s, F&& f) {
    if (s.fits_fast) return f(std::type_identity<int128>{});
    return f(std::type_identity<BigInt>{});
}

inline void require_size(const DiscreteInstance& x, std::size_t n_limit) {
    const std::size_t cap = std::min(n_limit, kHardExactLimit);
    if (x.size() > cap)
        throw PreconditionError("instance has " + std::to_string(x.size()) + " points; the exact solver is limited to " +
                                std::to_string(cap) + " (use the H heuristic)");
}

template <class W> struct Search {
    std::vector<W> point;
    std::vector<std::size_t> current;
    std::vector<char> used;
    std::optional<Frac<W>> best_span;
    std::vector<std::size_t> best_order;

    void run(W sum, const Frac<W>& lo, const Frac<W>& hi) {
        const std::size_t n = point.size();
        if (current.size() == n) {
            const Frac<W> s = minus(hi, lo);
            if (!best_span || less(s, *best_span)) {
                best_span = s;
                best_order = current;
            }
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            const W next_sum = sum + point[i];
            const Frac<W> c{next_sum, W(static_cast<long long>(current.size() + 1))};
            const Frac<W> nlo = current.empty() || less(c, lo) ? c : lo;
            const Frac<W> nhi = current.empty() || less(hi, c) ? c : hi;
            if (best_span && !less(minus(nhi, nlo), *best_span)) continue;
            used[i] = 1;
            current.push_back(i);
            run(next_sum, nlo, nhi);
            current.pop_back();
            used[i] = 0;
        }
    }
};

} // namespace detail::exact

/// Minimum-span loading order (reverse it for unloading) with its trajectory.
/// Ties between optimal orders go to the lexicographically smallest index sequence.
inline OrderReport optimal_span(const DiscreteInstance& x, std::size_t n_limit = kDefaultExactLimit) {
    using namespace detail::exact;
    require_size(x, n_limit);
    const Scaling scaling = scale(x);
    const OrderReport heuristic = h_permutation(x);

    std::vector<std::size_t> order = dispatch(scaling, [&](auto tag) {
        using W = typename decltype(tag)::type;
        const SubsetTable<W> tab(scaling);
        const Frac<W> bound = tab.from_rational(heuristic.span);
        std::vector<std::vector<std::size_t>> candidates;
        for (const Extremes& e : optimal_windows(tab, bound))
            if (auto o = tab.window_order(tab.center(e.lo), tab.center(e.hi))) candidates.push_back(std::move(*o));
        if (candidates.empty()) throw std::logic_error("exact solver found no order within the heuristic's span");
        return *std::min_element(candidates.begin(), candidates.end());
    });
    return evaluate_order(x, order);
}

/// Depth-first search over all permutations in lexicographic order, pruning
/// prefixes already as wide as the best complete order. Cross-check for
/// optimal_span on tiny instances.
inline OrderReport exhaustive_optimal_span(const DiscreteInstance& x, std::size_t n_limit = kExhaustiveLimit) {
    using namespace detail::exact;
    if (x.size() > n_limit)
        throw PreconditionError("exhaustive search is limited to " + std::to_string(n_limit) + " points");
    const Scaling scaling = scale(x);
    std::vector<std::size_t> order = dispatch(scaling, [&](auto tag) {
        using W = typename decltype(tag)::type;
        Search<W> search;
        for (const auto& v : scaling.values) search.point.push_back(from_big<W>(v));
        search.used.assign(x.size(), 0);
        const Frac<W> zero{W(0), W(1)};
        search.run(W(0), zero, zero);
        return search.best_order;
    });
    return evaluate_order(x, order);
}

/// Lexicographically smallest loading order keeping every prefix center in
/// [lo, hi], or nullopt when no order does.
inline std::optional<std::vector<std::size_t>> window_order(const DiscreteInstance& x, const Rational& lo, const Rational& hi,
                                                            std::size_t n_limit = kDefaultExactLimit) {
    using namespace detail::exact;
    require_size(x, n_limit);
    Scaling scaling = scale(x);
    for (const Rational* r : {&lo, &hi}) {
        const Rational scaled = *r * scaling.denominator;
        if (boost::multiprecision::abs(boost::multiprecision::numerator(scaled)) >= fast_limit() ||
            boost::multiprecision::denominator(scaled) >= fast_limit())
            scaling.fits_fast = false;
    }
    return dispatch(scaling, [&](auto tag) {
        using W = typename decltype(tag)::type;
        const SubsetTable<W> tab(scaling);
        return tab.window_order(tab.from_rational(lo), tab.from_rational(hi));
    });
}

struct FixedPositionReport {
    OrderReport report;
    Rational deviation; ///< max_k |C_k - C_n|
};

/// Loading order minimizing the largest excursion of the prefix center from
/// the final center C_n, via f(T) = max(|C(T) - C_n|, min_{x in T} f(T \ {x})).
inline FixedPositionReport optimal_deviation_loading_fixed_positions(const DiscreteInstance& x,
                                                                     std::size_t n_limit = kDefaultExactLimit) {
    using namespace detail::exact;
    require_size(x, n_limit);
    const Scaling scaling = scale(x);
    std::vector<std::size_t> order = dispatch(scaling, [&](auto tag) {
        using W = typename decltype(tag)::type;
        const SubsetTable<W> tab(scaling);
        const std::size_t n = tab.n();
        const std::size_t size = std::size_t{1} << n;
        const W count = W(static_cast<long long>(n));
        const W total = tab.total();

        auto dev = [&](std::uint32_t t) {
            const Frac<W> c = tab.center(t);
            W num = c.num * count - total * c.den;
            if (num < 0) num = -num;
            return Frac<W>{num, c.den * count};
        };

        // bottleneck[t]: subset whose deviation is f(t)
        std::vector<std::uint32_t> bottleneck(size, 0);
        for (std::size_t t = 1; t < size; ++t) {
            const auto mask = static_cast<std::uint32_t>(t);
            std::optional<std::uint32_t> best_prev;
            if (std::popcount(t) > 1) {
                for (std::size_t b = 0; b < n; ++b) {
                    if (!(t >> b & 1)) continue;
                    const std::uint32_t prev = bottleneck[t ^ (std::size_t{1} << b)];
                    if (!best_prev || less(dev(prev), dev(*best_prev))) best_prev = prev;
                }
            }
            bottleneck[t] = best_prev && less(dev(mask), dev(*best_prev)) ? *best_prev : mask;
        }

        const Frac<W> v = dev(bottleneck[tab.full()]);
        const Frac<W> mean{total, count};
        const Frac<W> lo = minus(mean, v);
        const Frac<W> hi = Frac<W>{mean.num * v.den + v.num * mean.den, mean.den * v.den};
        auto o = tab.window_order(lo, hi);
        if (!o) throw std::logic_error("fixed-position solver could not rebuild an optimal order");
        return *o;
    });

    OrderReport report = evaluate_order(x, order);
    const Rational final_center = report.trajectory.back();
    Rational worst = 0;
    for (const auto& c : report.trajectory) worst = std::max(worst, Rational(abs(c - final_center)));
    return {std::move(report), worst};
}

} // namespace ballast

#endif // BALLAST_UNLOAD_EXACT_HPP
