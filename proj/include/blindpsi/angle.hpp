#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace blindpsi {

// Angle on the pi/4 grid. The stored value v in {0..7} stands for v*pi/4
// radians; all protocol-level angle arithmetic happens mod 8 in integers,
// floating point only appears once an angle is turned into an amplitude.
struct Angle8 {
    uint8_t v = 0;

    constexpr Angle8() = default;
    constexpr explicit Angle8(int units) : v(static_cast<uint8_t>(((units % 8) + 8) % 8)) {}

    constexpr Angle8 operator+(Angle8 o) const { return Angle8(int(v) + int(o.v)); }
    constexpr Angle8 operator-(Angle8 o) const { return Angle8(int(v) - int(o.v)); }
    constexpr Angle8 operator-() const { return Angle8(-int(v)); }
    constexpr bool operator==(const Angle8&) const = default;

    // multiplication by +1 or -1, as in (-1)^b * angle
    constexpr Angle8 times_sign(int sign) const { return sign >= 0 ? *this : -*this; }

    double radians() const { return double(v) * M_PI / 4.0; }

    // e^{i * v*pi/4}
    std::complex<double> phase() const
    {
        return std::polar(1.0, radians());
    }
};

// pi = 4 units; used for the pi*r and pi*s^Z terms.
inline constexpr Angle8 kPiAngle{4};

inline Angle8 angle_times_bit(int bit, Angle8 a) { return bit ? a : Angle8{0}; }

}  // namespace blindpsi
