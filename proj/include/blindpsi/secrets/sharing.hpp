#pragma once

#include <optional>
#include <utility>

#include "blindpsi/angle.hpp"
#include "blindpsi/rng.hpp"

namespace blindpsi::secrets {

// Additive two-party share of an angle: value1 + value2 == secret (mod 8).
struct AngleShare {
    int owner = 0;  // 1 or 2
    Angle8 value{};
};

// share1 uniform, share2 = secret - share1.
std::pair<AngleShare, AngleShare> share_angle(Angle8 secret, Rng& rng);
Angle8 reconstruct(const AngleShare& s1, const AngleShare& s2);

// Same scheme mod 2 for bits.
std::pair<int, int> share_bit(int bit, Rng& rng);
inline int reconstruct_bit(int s1, int s2) { return (s1 ^ s2) & 1; }

// s_i = m_i xor r_i
inline int s_value(int m, int r) { return (m ^ r) & 1; }

// delta for one qubit, all secrets already reassembled:
//   phi' = (-1)^(c + sX) * phi + pi*sZ + pi*c_pred
//   delta = phi' + pi*r + theta
// Everything lives on the pi/4 grid, so pi is 4 units and the bit terms are
// 4*bit. Undefined inputs (c on non-input qubits, c_pred off the second
// layer) are passed as zero.
Angle8 delta_formula(Angle8 phi, int c, int s_x, int s_z, int c_pred, int r, Angle8 theta);

}  // namespace blindpsi::secrets
