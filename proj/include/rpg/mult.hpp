#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rpg {

// A count that is either a finite natural number or omega (countably
// infinite). Class multiplicities are >= 1; component tables may hold 0.
class Mult {
public:
    constexpr Mult() : raw_(1) {}

    static constexpr Mult omega() { return Mult(kOmega, 0); }
    static Mult finite(std::uint64_t n) {
        if (n == kOmega) throw std::invalid_argument("finite multiplicity too large");
        return Mult(n, 0);
    }

    bool is_omega() const { return raw_ == kOmega; }
    bool is_zero() const { return raw_ == 0; }

    std::uint64_t count() const {
        if (is_omega()) throw std::logic_error("count() on omega");
        return raw_;
    }

    // Cardinal arithmetic: omega absorbs.
    Mult plus(Mult o) const {
        if (is_omega() || o.is_omega()) return omega();
        return finite(raw_ + o.raw_);
    }
    Mult times(Mult o) const {
        if (raw_ == 0 || o.raw_ == 0) return finite(0);
        if (is_omega() || o.is_omega()) return omega();
        return finite(raw_ * o.raw_);
    }
    // Partial: removing k from a finite m requires k < m; omega - finite = omega.
    Mult minus_finite(std::uint64_t k) const {
        if (is_omega()) return omega();
        if (k >= raw_) throw std::invalid_argument("removal exceeds finite multiplicity");
        return finite(raw_ - k);
    }

    bool operator==(const Mult& o) const { return raw_ == o.raw_; }
    bool operator!=(const Mult& o) const { return raw_ != o.raw_; }
    // Order with omega on top.
    bool operator<(const Mult& o) const { return raw_ < o.raw_; }
    bool operator>(const Mult& o) const { return raw_ > o.raw_; }
    bool operator<=(const Mult& o) const { return raw_ <= o.raw_; }

    std::string str() const { return is_omega() ? "w" : std::to_string(raw_); }

private:
    static constexpr std::uint64_t kOmega = UINT64_MAX;
    constexpr Mult(std::uint64_t raw, int) : raw_(raw) {}
    std::uint64_t raw_;
};

} // namespace rpg
