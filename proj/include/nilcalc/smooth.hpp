#pragma once

#include <cmath>
#include <string>

#include "nilcalc/polyfn.hpp"
#include "nilcalc/weil.hpp"

namespace nilcalc {

/// Elementary primitives with hard-coded derivative towers. Only available
/// over double; exact-rational mode is closed under polynomials and rejects
/// these.
enum class SmoothFn { exponential, sine, cosine, logarithm };

inline const char* smooth_fn_name(SmoothFn f) {
    switch (f) {
        case SmoothFn::exponential: return "exp";
        case SmoothFn::sine: return "sin";
        case SmoothFn::cosine: return "cos";
        case SmoothFn::logarithm: return "log";
    }
    return "?";
}

/// k-th derivative of the primitive at base point x0.
inline double smooth_fn_derivative(SmoothFn f, unsigned k, double x0) {
    switch (f) {
        case SmoothFn::exponential:
            return std::exp(x0);
        case SmoothFn::sine:
            switch (k % 4) {
                case 0: return std::sin(x0);
                case 1: return std::cos(x0);
                case 2: return -std::sin(x0);
                default: return -std::cos(x0);
            }
        case SmoothFn::cosine:
            switch (k % 4) {
                case 0: return std::cos(x0);
                case 1: return -std::sin(x0);
                case 2: return -std::cos(x0);
                default: return std::sin(x0);
            }
        case SmoothFn::logarithm: {
            if (k == 0) return std::log(x0);
            // (d/dx)^k log = (-1)^(k-1) (k-1)! / x^k
            double v = (k % 2 == 1) ? 1.0 : -1.0;
            for (unsigned i = 2; i <= k - 1; ++i) v *= static_cast<double>(i);
            return v / std::pow(x0, static_cast<double>(k));
        }
    }
    return 0.0;
}

/// Polynomial primitives lift by plain evaluation in the ambient algebra;
/// this is total and agrees with the Taylor form by ring arithmetic.
template <Scalar S>
WeilPoly<S> smooth_lift(const PolyFn<S>& unary, const WeilPoly<S>& a) {
    if (unary.arity() != 1) throw Error("smooth_lift: polynomial primitive must be unary");
    const WeilPoly<S> pt[1] = {a};
    return unary.eval(std::span<const WeilPoly<S>>(pt, 1));
}

template <Scalar S>
WeilPoly<S> smooth_lift(SmoothFn, const WeilPoly<S>&) {
    static_assert(ScalarTraits<S>::exact,
                  "unexpected scalar");  // overload below handles double
    throw Error(std::string("smooth_lift: elementary primitive requires float mode"));
}

/// Taylor expansion around the scalar part, truncated when the nilpotent
/// part's power vanishes. Requires the non-nilpotent part to be an actual
/// number (no formal indeterminates).
inline WeilPoly<double> smooth_lift(SmoothFn f, const WeilPoly<double>& a) {
    WeilPoly<double> nil_part;
    double base = 0.0;
    for (const auto& [m, c] : a.terms()) {
        if (m.contains_any_nilpotent()) {
            nil_part += WeilPoly<double>::constant(c) * [&] {
                WeilPoly<double> mono = WeilPoly<double>::constant(1.0);
                for (const auto& [id, e] : m.factors) mono *= WeilPoly<double>::var(id).pow(e);
                return mono;
            }();
        } else if (m.is_unit()) {
            base = c;
        } else {
            throw Error(std::string("smooth_lift: ") + smooth_fn_name(f) +
                        " needs a numeric base point, found formal variable");
        }
    }
    WeilPoly<double> acc = WeilPoly<double>::constant(smooth_fn_derivative(f, 0, base));
    WeilPoly<double> nu_pow = WeilPoly<double>::constant(1.0);
    double factorial = 1.0;
    for (unsigned k = 1; k <= 64; ++k) {
        nu_pow *= nil_part;
        if (nu_pow.is_zero()) break;
        factorial *= static_cast<double>(k);
        acc += nu_pow.scaled(smooth_fn_derivative(f, k, base) / factorial);
    }
    return acc;
}

}  // namespace nilcalc
