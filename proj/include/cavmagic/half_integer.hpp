#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

namespace cavmagic {

/// Angular momentum quantum number stored as twice its value, so that
/// half-integers (1/2, 3/2, ...) are represented exactly.
class HalfInteger {
public:
    constexpr HalfInteger() = default;

    static constexpr HalfInteger from_twice(int twice_value) {
        HalfInteger h;
        h.twice_ = twice_value;
        return h;
    }

    static constexpr HalfInteger from_int(int value) { return from_twice(2 * value); }

    /// Accepts values on the half-integer lattice only (2v must be integral).
    static HalfInteger from_double(double value) {
        const double twice = 2.0 * value;
        const double rounded = std::round(twice);
        if (std::abs(twice - rounded) > 1e-9) {
            throw std::domain_error("HalfInteger: " + std::to_string(value) +
                                    " is not an integer or half-integer");
        }
        return from_twice(static_cast<int>(rounded));
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * static_cast<double>(twice_); }

    /// Integer value; only valid when is_integer().
    constexpr int as_int() const { return twice_ / 2; }

    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
        return from_twice(a.twice_ + b.twice_);
    }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) {
        return from_twice(a.twice_ - b.twice_);
    }
    constexpr HalfInteger operator-() const { return from_twice(-twice_); }

    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    int twice_ = 0;
};

inline constexpr HalfInteger abs(HalfInteger h) {
    return HalfInteger::from_twice(h.twice() < 0 ? -h.twice() : h.twice());
}

/// True when m is a valid projection of j: same parity and |m| <= j.
inline constexpr bool valid_projection(HalfInteger j, HalfInteger m) {
    if ((j.twice() - m.twice()) % 2 != 0) return false;
    return abs(m).twice() <= j.twice();
}

}  // namespace cavmagic
