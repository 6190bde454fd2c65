#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace mnv {

/// The three real coordinates: plane (x, y) and shifted time s = C - t.
enum class Var : std::uint8_t { x, y, s };

/// x^ex * y^ey * s^es packed into one 64-bit key.
///
/// Layout (high to low, 16 bits each): total degree, ex, ey, es. Comparing
/// keys as integers is graded lexicographic order with x > y > s, and adding
/// keys multiplies monomials as long as no field overflows.
class Monomial {
public:
    static constexpr unsigned max_degree = 0xFFFF;

    constexpr Monomial() = default;
    constexpr Monomial(unsigned ex, unsigned ey, unsigned es) {
        if (ex + ey + es > max_degree) throw std::overflow_error("Monomial: degree overflow");
        key_ = (std::uint64_t{ex + ey + es} << 48) | (std::uint64_t{ex} << 32) |
               (std::uint64_t{ey} << 16) | std::uint64_t{es};
    }

    static constexpr Monomial from_key(std::uint64_t key) {
        Monomial m;
        m.key_ = key;
        return m;
    }

    constexpr std::uint64_t key() const noexcept { return key_; }
    constexpr unsigned degree() const noexcept { return static_cast<unsigned>(key_ >> 48); }
    constexpr unsigned ex() const noexcept { return static_cast<unsigned>((key_ >> 32) & 0xFFFF); }
    constexpr unsigned ey() const noexcept { return static_cast<unsigned>((key_ >> 16) & 0xFFFF); }
    constexpr unsigned es() const noexcept { return static_cast<unsigned>(key_ & 0xFFFF); }

    constexpr unsigned exponent(Var v) const noexcept {
        switch (v) {
            case Var::x: return ex();
            case Var::y: return ey();
            case Var::s: return es();
        }
        return 0;
    }

    /// Caller guarantees the product degree stays within max_degree.
    constexpr Monomial operator*(Monomial o) const noexcept { return from_key(key_ + o.key_); }

    friend constexpr auto operator<=>(Monomial a, Monomial b) noexcept { return a.key_ <=> b.key_; }
    friend constexpr bool operator==(Monomial a, Monomial b) noexcept { return a.key_ == b.key_; }

private:
    std::uint64_t key_ = 0;
};

}  // namespace mnv
