#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nilcalc/context.hpp"
#include "nilcalc/scalar.hpp"

namespace nilcalc {

/// Power product of registered variables, sorted by id. Nilpotent variables
/// only ever appear with exponent 1; any product that would square one
/// vanishes outright.
struct Monomial {
    std::vector<std::pair<VarId, std::uint32_t>> factors;

    static Monomial unit() { return {}; }

    static Monomial var(VarId v, std::uint32_t exp = 1) {
        Monomial m;
        if (exp > 0) m.factors.emplace_back(v, exp);
        return m;
    }

    bool is_unit() const { return factors.empty(); }

    std::uint32_t degree_of(VarId v) const {
        for (const auto& [id, e] : factors)
            if (id == v) return e;
        return 0;
    }

    bool contains(VarId v) const { return degree_of(v) > 0; }

    bool contains_any_nilpotent() const {
        for (const auto& [id, e] : factors)
            if (is_nilpotent_var(id)) return true;
        return false;
    }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Merged product; returns false when a nilpotent generator squares.
inline bool mul(const Monomial& a, const Monomial& b, Monomial& out) {
    out.factors.clear();
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const auto& fa = a.factors[i];
        const auto& fb = b.factors[j];
        if (fa.first < fb.first) {
            out.factors.push_back(fa);
            ++i;
        } else if (fb.first < fa.first) {
            out.factors.push_back(fb);
            ++j;
        } else {
            if (is_nilpotent_var(fa.first)) return false;
            out.factors.emplace_back(fa.first, fa.second + fb.second);
            ++i;
            ++j;
        }
    }
    for (; i < a.factors.size(); ++i) out.factors.push_back(a.factors[i]);
    for (; j < b.factors.size(); ++j) out.factors.push_back(b.factors[j]);
    return true;
}

/// Element of S[x...][e...]/(e_i^2): a sparse polynomial over free
/// indeterminates extended by square-zero generators. Terms are kept sorted
/// with no zero coefficients, so equality is structural and serialization is
/// canonical.
template <Scalar S>
class WeilPoly {
public:
    using Term = std::pair<Monomial, S>;

    WeilPoly() = default;

    static WeilPoly constant(S c) {
        WeilPoly p;
        if (!ScalarTraits<S>::is_zero(c)) p.terms_.emplace_back(Monomial::unit(), std::move(c));
        return p;
    }

    static WeilPoly var(VarId v) {
        WeilPoly p;
        p.terms_.emplace_back(Monomial::var(v), ScalarTraits<S>::one());
        return p;
    }

    static WeilPoly zero() { return {}; }

    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_unit());
    }

    /// True when every term carries at least one nilpotent generator, i.e.
    /// the element squares to zero and is a legitimate point of D^n.
    bool is_nilpotent() const {
        for (const auto& [m, c] : terms_)
            if (!m.contains_any_nilpotent()) return false;
        return true;
    }

    S constant_coefficient() const {
        if (!terms_.empty() && terms_[0].first.is_unit()) return terms_[0].second;
        return ScalarTraits<S>::zero();
    }

    S coefficient(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& key) { return t.first < key; });
        if (it != terms_.end() && it->first == m) return it->second;
        return ScalarTraits<S>::zero();
    }

    bool has_var(VarId v) const {
        for (const auto& [m, c] : terms_)
            if (m.contains(v)) return true;
        return false;
    }

    friend bool operator==(const WeilPoly& a, const WeilPoly& b) { return a.terms_ == b.terms_; }

    WeilPoly operator-() const {
        WeilPoly out;
        out.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) out.terms_.emplace_back(m, -c);
        return out;
    }

    friend WeilPoly operator+(const WeilPoly& a, const WeilPoly& b) {
        WeilPoly out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            const auto& ta = a.terms_[i];
            const auto& tb = b.terms_[j];
            if (ta.first < tb.first) {
                out.terms_.push_back(ta);
                ++i;
            } else if (tb.first < ta.first) {
                out.terms_.push_back(tb);
                ++j;
            } else {
                S c = ta.second + tb.second;
                if (!ScalarTraits<S>::is_zero(c)) out.terms_.emplace_back(ta.first, std::move(c));
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) out.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) out.terms_.push_back(b.terms_[j]);
        return out;
    }

    friend WeilPoly operator-(const WeilPoly& a, const WeilPoly& b) { return a + (-b); }

    WeilPoly& operator+=(const WeilPoly& o) {
        *this = *this + o;
        return *this;
    }
    WeilPoly& operator-=(const WeilPoly& o) {
        *this = *this - o;
        return *this;
    }

    friend WeilPoly operator*(const WeilPoly& a, const WeilPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Term> buf;
        buf.reserve(a.terms_.size() * b.terms_.size());
        Monomial prod;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                if (!mul(ma, mb, prod)) continue;
                buf.emplace_back(prod, ca * cb);
            }
        }
        std::sort(buf.begin(), buf.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        WeilPoly out;
        out.terms_.reserve(buf.size());
        for (auto& t : buf) {
            if (!out.terms_.empty() && out.terms_.back().first == t.first) {
                out.terms_.back().second += t.second;
                if (ScalarTraits<S>::is_zero(out.terms_.back().second)) out.terms_.pop_back();
            } else {
                out.terms_.push_back(std::move(t));
            }
        }
        return out;
    }

    WeilPoly& operator*=(const WeilPoly& o) {
        *this = *this * o;
        return *this;
    }

    WeilPoly scaled(const S& c) const {
        if (ScalarTraits<S>::is_zero(c)) return {};
        WeilPoly out;
        out.terms_.reserve(terms_.size());
        for (const auto& [m, v] : terms_) {
            S prod = v * c;
            if (!ScalarTraits<S>::is_zero(prod)) out.terms_.emplace_back(m, std::move(prod));
        }
        return out;
    }

    WeilPoly divided(const S& c) const { return scaled(ScalarTraits<S>::div(ScalarTraits<S>::one(), c)); }

    WeilPoly pow(std::uint32_t k) const {
        WeilPoly out = constant(ScalarTraits<S>::one());
        WeilPoly base = *this;
        while (k > 0) {
            if (k & 1u) out *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return out;
    }

    /// Terms free of every listed variable.
    WeilPoly without_vars(std::span<const VarId> vars) const {
        WeilPoly out;
        for (const auto& t : terms_) {
            bool hit = false;
            for (VarId v : vars)
                if (t.first.contains(v)) {
                    hit = true;
                    break;
                }
            if (!hit) out.terms_.push_back(t);
        }
        return out;
    }

    /// The cofactor of v: sum of terms divisible by v, with one power of v
    /// removed. For nilpotent v this is the full v-directional component.
    WeilPoly cofactor(VarId v) const {
        WeilPoly out;
        for (const auto& [m, c] : terms_) {
            auto deg = m.degree_of(v);
            if (deg == 0) continue;
            Monomial stripped = m;
            for (auto& f : stripped.factors) {
                if (f.first == v) {
                    f.second -= 1;
                    break;
                }
            }
            std::erase_if(stripped.factors, [](const auto& f) { return f.second == 0; });
            out.terms_.emplace_back(std::move(stripped), c);
        }
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return out;
    }

    /// Splits into 2^n buckets by which of the given generators divide each
    /// term; bucket[mask] has those generators stripped. Inverse of
    /// multiplying bucket k by its generator product.
    std::vector<WeilPoly> split_by(std::span<const VarId> gens) const {
        std::vector<WeilPoly> buckets(std::size_t{1} << gens.size());
        for (const auto& [m, c] : terms_) {
            std::uint32_t mask = 0;
            Monomial stripped;
            stripped.factors.reserve(m.factors.size());
            for (const auto& f : m.factors) {
                bool matched = false;
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    if (f.first == gens[i]) {
                        mask |= (1u << i);
                        matched = true;
                        break;
                    }
                }
                if (!matched) stripped.factors.push_back(f);
            }
            buckets[mask].terms_.emplace_back(std::move(stripped), c);
        }
        // Each bucket inherits sorted order: stripping shared generators
        // preserves the relative order of the remaining monomials only per
        // bucket, so re-sort to stay canonical.
        for (auto& b : buckets)
            std::sort(b.terms_.begin(), b.terms_.end(),
                      [](const Term& x, const Term& y) { return x.first < y.first; });
        return buckets;
    }

    /// Substitutes values for variables (used for scalar specialization of
    /// formal identities). Unlisted variables stay formal.
    WeilPoly substituted(std::span<const VarId> vars, std::span<const WeilPoly> values) const {
        WeilPoly out;
        for (const auto& [m, c] : terms_) {
            WeilPoly term = constant(c);
            for (const auto& [id, e] : m.factors) {
                bool hit = false;
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    if (vars[i] == id) {
                        term *= values[i].pow(e);
                        hit = true;
                        break;
                    }
                }
                if (!hit) term *= var(id).pow(e);
            }
            out += term;
        }
        return out;
    }

    void append_key(std::string& out) const {
        for (const auto& [m, c] : terms_) {
            out += '{';
            for (const auto& [id, e] : m.factors) {
                out += std::to_string(id);
                out += '^';
                out += std::to_string(e);
                out += ',';
            }
            out += ':';
            out += ScalarTraits<S>::str(c);
            out += '}';
        }
    }

    std::string key() const {
        std::string out;
        append_key(out);
        return out;
    }

    std::string str(const Context* ctx = nullptr) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            out += ScalarTraits<S>::str(c);
            for (const auto& [id, e] : m.factors) {
                out += "*";
                out += ctx ? ctx->name(id) : ("v" + std::to_string(id & ~kNilpotentBit) +
                                              (is_nilpotent_var(id) ? "~" : ""));
                if (e > 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

    /// Largest absolute coefficient, for residual reporting.
    S max_abs_coefficient() const {
        S best = ScalarTraits<S>::zero();
        for (const auto& [m, c] : terms_) {
            S a = ScalarTraits<S>::abs(c);
            if (ScalarTraits<S>::less(best, a)) best = a;
        }
        return best;
    }

    /// Drops terms whose absolute coefficient is at most tol (float-mode
    /// comparisons; exact mode never calls this).
    WeilPoly chopped(double tol) const {
        WeilPoly out;
        for (const auto& t : terms_)
            if (!ScalarTraits<S>::eq(t.second, ScalarTraits<S>::zero(), tol)) out.terms_.push_back(t);
        return out;
    }

private:
    std::vector<Term> terms_;
};

template <Scalar S>
using Point = std::vector<WeilPoly<S>>;

/// Evaluable map into R^m over the ambient algebra. The uniform currency of
/// all functional evaluation.
template <Scalar S>
using VecFn = std::function<Point<S>(std::span<const WeilPoly<S>>)>;

}  // namespace nilcalc
