#ifndef BALLAST_LOAD_EXPONENTIAL_HPP
#define BALLAST_LOAD_EXPONENTIAL_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "ballast/core.hpp"
#include "ballast/error.hpp"
#include "ballast/rational.hpp"

namespace ballast {

/// x^e for any integer e (x != 0 when e < 0).
inline Rational power(const Rational& x, long long e) {
    if (e < 0) return 1 / power(x, -e);
    Rational result = 1, base = x;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

/// Lengths l, l*x, ..., l*x^(n-1) with x >= 2 and n >= 4.
class ExpSystem {
public:
    ExpSystem(Rational smallest, Rational ratio, std::size_t count)
        : ell_(std::move(smallest)), x_(std::move(ratio)), n_(count), input_(count) {
        if (ell_ <= 0) throw PreconditionError("smallest length must be positive");
        if (x_ < 2) throw PreconditionError("growth factor must be at least 2, got " + to_string(x_));
        if (n_ < 4) throw PreconditionError("unsupported: the exponential construction needs n >= 4, got " + std::to_string(n_));
        std::iota(input_.begin(), input_.end(), std::size_t{0});
    }

    /// Accepts the lengths in any order; item i of the system (length l*x^i)
    /// remembers which input position it came from.
    static ExpSystem from_lengths(std::span<const Rational> lengths) {
        if (lengths.size() < 4)
            throw PreconditionError("unsupported: the exponential construction needs n >= 4, got " + std::to_string(lengths.size()));
        for (const auto& l : lengths)
            if (l <= 0) throw InputError("lengths must be positive");
        std::vector<std::size_t> idx(lengths.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return lengths[a] < lengths[b]; });

        const Rational ratio = lengths[idx[1]] / lengths[idx[0]];
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (lengths[idx[i]] != lengths[idx[i - 1]] * ratio)
                throw PreconditionError("lengths do not grow by a constant factor");
        ExpSystem s(lengths[idx[0]], ratio, lengths.size());
        s.input_ = std::move(idx);
        return s;
    }

    const Rational& smallest() const { return ell_; }
    const Rational& ratio() const { return x_; }
    std::size_t size() const { return n_; }

    /// l * x^i, i = 0 .. n-1.
    Rational length(std::size_t i) const { return ell_ * power(x_, static_cast<long long>(i)); }
    std::size_t input_index(std::size_t i) const { return input_[i]; }

    Rational total() const {
        Rational s = 0;
        for (std::size_t i = 0; i < n_; ++i) s += length(i);
        return s;
    }

private:
    Rational ell_;
    Rational x_;
    std::size_t n_;
    std::vector<std::size_t> input_;
};

/// (l' + l'') l'' / (4 * sum), l' and l'' the largest and second-largest of any
/// two or more lengths.
inline Rational tau_from_lengths(std::span<const Rational> lengths) {
    if (lengths.size() < 2) throw InputError("tau needs at least two lengths");
    std::vector<Rational> sorted(lengths.begin(), lengths.end());
    std::sort(sorted.begin(), sorted.end());
    Rational sum = 0;
    for (const auto& l : sorted) sum += l;
    const Rational& largest = sorted[sorted.size() - 1];
    const Rational& second = sorted[sorted.size() - 2];
    return (largest + second) * second / (4 * sum);
}

/// l x^(2n-4) (x^2 - 1) / (4 (x^n - 1)), the geometric sum folded in.
inline Rational tau_closed_form(const ExpSystem& s) {
    const auto n = static_cast<long long>(s.size());
    return s.smallest() * power(s.ratio(), 2 * n - 4) * (s.ratio() * s.ratio() - 1) /
           (4 * (power(s.ratio(), n) - 1));
}

inline Rational tau(const ExpSystem& s) {
    std::vector<Rational> lengths;
    for (std::size_t i = 0; i < s.size(); ++i) lengths.push_back(s.length(i));
    Rational direct = tau_from_lengths(lengths);
    if (direct != tau_closed_form(s)) throw std::logic_error("tau formulas disagree");
    return direct;
}

/// No loading of the system keeps every center strictly inside (-tau, tau).
inline Rational exponential_lower_bound(const ExpSystem& s) { return tau(s); }

/// Places the largest item first at -tau, then the rest by increasing length,
/// each at the unique midpoint that puts the center on the opposite bound.
/// For odd n the second and third items go together as one block right of the
/// first (shorter one inside), moving the center from -tau straight to tau;
/// alternation resumes from the fourth item. Deviation is exactly tau and the
/// intervals are pairwise disjoint.
inline Placement plan_exponential(const ExpSystem& s) {
    const std::size_t n = s.size();
    const Rational t = tau(s);

    std::vector<std::size_t> sequence{n - 1};
    for (std::size_t i = 0; i + 1 < n; ++i) sequence.push_back(i);

    Placement p;
    Rational mass = s.length(n - 1);
    Rational cog = -t;
    p.push({-t, mass, 1}, s.input_index(n - 1));

    std::size_t step = 2;
    if (n % 2 == 1) {
        const Rational l2 = s.length(sequence[1]), l3 = s.length(sequence[2]);
        const Rational block = l2 + l3;
        const Rational q = required_midpoint(cog, mass, t, block);
        const Rational m2 = q - block / 2 + l2 / 2;
        p.push({m2, l2, 1}, s.input_index(sequence[1]));
        p.push({m2 + l2 / 2 + l3 / 2, l3, 1}, s.input_index(sequence[2]));
        mass += block;
        cog = t;
        step = 4;
    }

    for (; step <= n; ++step) {
        const Rational len = s.length(sequence[step - 1]);
        // even n: even steps land on +tau; odd n: from step 4 on, odd steps do
        const bool positive = (n % 2 == 0) == (step % 2 == 0);
        const Rational target = positive ? t : Rational(-t);
        p.push({required_midpoint(cog, mass, target, len), len, 1}, s.input_index(sequence[step - 1]));
        mass += len;
        cog = target;
    }
    return p;
}

/// One polynomial condition sufficient for disjointness of the construction.
struct ConditionCheck {
    bool applicable = false;
    bool holds = false;
    Rational lhs;
    Rational rhs;
};

struct DisjointnessReport {
    std::array<ConditionCheck, 4> conditions; ///< S1.1 .. S1.4

    bool all_hold() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const ConditionCheck& c) { return !c.applicable || c.holds; });
    }
};

/// Exact evaluation of S1.1 - S1.4 at (x, n). Which conditions apply depends
/// on n: 4 -> S1.2, S1.3; even >= 6 -> S1.1 - S1.3; 5 -> S1.2 - S1.4;
/// odd >= 7 -> all four. Inapplicable conditions are still evaluated.
inline DisjointnessReport verify_disjointness_conditions(const Rational& x, long long n) {
    if (x <= 0) throw PreconditionError("x must be positive");
    if (n < 4) throw PreconditionError("conditions are stated for n >= 4");
    auto p = [&](long long e) { return power(x, e); };

    DisjointnessReport r;
    auto& c = r.conditions;
    c[0].lhs = p(n + 7) + p(n + 3) + p(5) + p(4) + p(2) + 1;
    c[0].rhs = 2 * p(n + 5) + p(n + 2) + p(n) + p(7) + p(6);
    c[1].lhs = p(n + 5) + p(n + 2) + p(n + 1) + p(4) + p(2);
    c[1].rhs = 2 * p(n + 4) + p(n) + p(5) + x;
    c[2].lhs = p(n + 5) + p(n + 1) + p(3) + 2 * p(2) + 1;
    c[2].rhs = 2 * p(n + 3) + p(n + 2) + p(n) + p(5) + p(4);
    c[3].lhs = p(2 * n) * (p(-2) - p(-4)) * (p(n + 2) - p(n) - p(n - 1) - p(3) - 2 * p(2) - 2 * x - 1);
    c[3].rhs = (p(3) + x + 1) * (p(n) - 1) * (p(3) + p(4));

    const bool odd = n % 2 == 1;
    c[0].applicable = n >= 6;
    c[1].applicable = true;
    c[2].applicable = true;
    c[3].applicable = odd;
    for (auto& cond : c) cond.holds = cond.lhs >= cond.rhs;
    return r;
}

} // namespace ballast

#endif // BALLAST_LOAD_EXPONENTIAL_HPP
