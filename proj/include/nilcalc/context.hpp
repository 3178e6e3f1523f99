#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nilcalc {

/// Variable handle. The high bit encodes nilpotency so that algebra
/// operations never need to consult the registry.
using VarId = std::uint32_t;

inline constexpr VarId kNilpotentBit = 0x8000'0000u;

inline bool is_nilpotent_var(VarId v) { return (v & kNilpotentBit) != 0; }

/// Registry of formal variables for one evaluation scope (typically one
/// trial). Two kinds exist: ordinary polynomial indeterminates and
/// square-zero nilpotent generators. Values only store ids, so they stay
/// freely shareable; minting fresh generators is the single serialized step.
class Context {
public:
    VarId make_free(std::string name) {
        std::scoped_lock lock(mu_);
        free_names_.push_back(std::move(name));
        return static_cast<VarId>(free_names_.size() - 1);
    }

    VarId make_nilpotent(std::string name) {
        std::scoped_lock lock(mu_);
        nil_names_.push_back(std::move(name));
        return static_cast<VarId>(nil_names_.size() - 1) | kNilpotentBit;
    }

    /// Fresh generators carry a scope tag so nested bracket evaluations are
    /// recognizable in diagnostics; uniqueness is by id, not name.
    VarId fresh_nilpotent(std::string_view tag = "e") {
        std::scoped_lock lock(mu_);
        nil_names_.push_back(std::string(tag) + "." + std::to_string(nil_names_.size()));
        return static_cast<VarId>(nil_names_.size() - 1) | kNilpotentBit;
    }

    std::vector<VarId> fresh_nilpotents(int count, std::string_view tag = "e") {
        std::vector<VarId> out;
        out.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) out.push_back(fresh_nilpotent(tag));
        return out;
    }

    std::vector<VarId> make_frees(int count, std::string_view stem) {
        std::vector<VarId> out;
        out.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            out.push_back(make_free(std::string(stem) + std::to_string(i + 1)));
        return out;
    }

    std::string name(VarId v) const {
        std::scoped_lock lock(mu_);
        const auto idx = static_cast<std::size_t>(v & ~kNilpotentBit);
        const auto& pool = is_nilpotent_var(v) ? nil_names_ : free_names_;
        if (idx < pool.size()) return pool[idx];
        return (is_nilpotent_var(v) ? "e#" : "x#") + std::to_string(idx);
    }

    std::size_t nilpotent_count() const {
        std::scoped_lock lock(mu_);
        return nil_names_.size();
    }

private:
    mutable std::mutex mu_;
    std::vector<std::string> free_names_;
    std::vector<std::string> nil_names_;
};

}  // namespace nilcalc
