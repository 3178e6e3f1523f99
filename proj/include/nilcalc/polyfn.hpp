#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nilcalc/weil.hpp"

namespace nilcalc {

/// Polynomial in positional coordinates x_1..x_k with scalar coefficients.
/// This is pure map data (test maps, kernel entries, vector fields); it gets
/// evaluated by substituting ambient-algebra points, so it is usable at
/// nilpotent and formal arguments alike.
template <Scalar S>
class PolyFn {
public:
    using Term = std::pair<std::vector<std::uint32_t>, S>;  // exponent vector, coefficient

    PolyFn() : arity_(0) {}
    explicit PolyFn(int arity) : arity_(arity) {}

    static PolyFn constant(int arity, S c) {
        PolyFn f(arity);
        f.add_term(std::vector<std::uint32_t>(static_cast<std::size_t>(arity), 0), std::move(c));
        return f;
    }

    static PolyFn coordinate(int arity, int i) {
        PolyFn f(arity);
        std::vector<std::uint32_t> e(static_cast<std::size_t>(arity), 0);
        e[static_cast<std::size_t>(i)] = 1;
        f.add_term(std::move(e), ScalarTraits<S>::one());
        return f;
    }

    int arity() const { return arity_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::vector<std::uint32_t> exps, S c) {
        if (ScalarTraits<S>::is_zero(c)) return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                                   [](const Term& t, const std::vector<std::uint32_t>& key) {
                                       return t.first < key;
                                   });
        if (it != terms_.end() && it->first == exps) {
            it->second = it->second + c;
            if (ScalarTraits<S>::is_zero(it->second)) terms_.erase(it);
        } else {
            terms_.insert(it, Term{std::move(exps), std::move(c)});
        }
    }

    friend PolyFn operator+(const PolyFn& a, const PolyFn& b) {
        PolyFn out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }

    friend PolyFn operator-(const PolyFn& a, const PolyFn& b) {
        PolyFn out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
        return out;
    }

    PolyFn operator-() const {
        PolyFn out(arity_);
        for (const auto& [e, c] : terms_) out.terms_.emplace_back(e, -c);
        return out;
    }

    friend PolyFn operator*(const PolyFn& a, const PolyFn& b) {
        PolyFn out(a.arity_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                std::vector<std::uint32_t> e = ea;
                for (std::size_t i = 0; i < e.size() && i < eb.size(); ++i) e[i] += eb[i];
                out.add_term(std::move(e), ca * cb);
            }
        }
        return out;
    }

    PolyFn scaled(const S& c) const {
        PolyFn out(arity_);
        for (const auto& [e, v] : terms_) {
            S prod = v * c;
            if (!ScalarTraits<S>::is_zero(prod)) out.terms_.emplace_back(e, std::move(prod));
        }
        return out;
    }

    friend bool operator==(const PolyFn& a, const PolyFn& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    PolyFn derivative(int i) const {
        PolyFn out(arity_);
        const auto idx = static_cast<std::size_t>(i);
        for (const auto& [e, c] : terms_) {
            if (e[idx] == 0) continue;
            std::vector<std::uint32_t> d = e;
            d[idx] -= 1;
            out.add_term(std::move(d), c * ScalarTraits<S>::from_long(static_cast<long>(e[idx])));
        }
        return out;
    }

    int total_degree() const {
        int best = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (auto x : e) d += static_cast<int>(x);
            best = std::max(best, d);
        }
        return best;
    }

    WeilPoly<S> eval(std::span<const WeilPoly<S>> point) const {
        // Power tables per coordinate, shared across terms.
        std::vector<std::vector<WeilPoly<S>>> powers(static_cast<std::size_t>(arity_));
        auto power = [&](std::size_t i, std::uint32_t e) -> const WeilPoly<S>& {
            auto& tab = powers[i];
            if (tab.empty()) tab.push_back(WeilPoly<S>::constant(ScalarTraits<S>::one()));
            while (tab.size() <= e) tab.push_back(tab.back() * point[i]);
            return tab[e];
        };
        WeilPoly<S> acc;
        for (const auto& [e, c] : terms_) {
            WeilPoly<S> term = WeilPoly<S>::constant(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) term *= power(i, e[i]);
            acc += term;
        }
        return acc;
    }

    S eval_scalar(std::span<const S> point) const {
        S acc = ScalarTraits<S>::zero();
        for (const auto& [e, c] : terms_) {
            S term = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) term = term * point[i];
            acc = acc + term;
        }
        return acc;
    }

private:
    int arity_;
    std::vector<Term> terms_;  // sorted by exponent vector, no zero coefficients
};

/// Polynomial map R^arity -> R^m.
template <Scalar S>
struct PolyMap {
    int arity = 0;
    std::vector<PolyFn<S>> components;

    static PolyMap identity(int n) {
        PolyMap f;
        f.arity = n;
        for (int i = 0; i < n; ++i) f.components.push_back(PolyFn<S>::coordinate(n, i));
        return f;
    }

    int target() const { return static_cast<int>(components.size()); }

    Point<S> eval(std::span<const WeilPoly<S>> point) const {
        Point<S> out;
        out.reserve(components.size());
        for (const auto& f : components) out.push_back(f.eval(point));
        return out;
    }

    /// components[i].derivative(j), the (i,j) entry of the Jacobian.
    PolyFn<S> jacobian_entry(int i, int j) const {
        return components[static_cast<std::size_t>(i)].derivative(j);
    }
};

/// J(g)·f - J(f)·g, computed symbolically. Used as the independent check
/// against the bracket evaluated through double-dual convolutions.
template <Scalar S>
PolyMap<S> classical_field_bracket(const PolyMap<S>& f, const PolyMap<S>& g) {
    PolyMap<S> out;
    out.arity = f.arity;
    const int m = f.target();
    for (int i = 0; i < m; ++i) {
        PolyFn<S> acc(f.arity);
        for (int j = 0; j < m; ++j) {
            acc = acc + g.jacobian_entry(i, j) * f.components[static_cast<std::size_t>(j)];
            acc = acc - f.jacobian_entry(i, j) * g.components[static_cast<std::size_t>(j)];
        }
        out.components.push_back(std::move(acc));
    }
    return out;
}

}  // namespace nilcalc
