#include "blindpsi/secrets/sharing.hpp"

#include <stdexcept>

namespace blindpsi::secrets {

std::pair<AngleShare, AngleShare> share_angle(Angle8 secret, Rng& rng)
{
    const Angle8 s1 = rng.angle();
    return {AngleShare{1, s1}, AngleShare{2, secret - s1}};
}

Angle8 reconstruct(const AngleShare& s1, const AngleShare& s2)
{
    if (s1.owner == s2.owner) throw std::invalid_argument("shares from the same party");
    return s1.value + s2.value;
}

std::pair<int, int> share_bit(int bit, Rng& rng)
{
    const int s1 = rng.bit();
    return {s1, (bit ^ s1) & 1};
}

Angle8 delta_formula(Angle8 phi, int c, int s_x, int s_z, int c_pred, int r, Angle8 theta)
{
    const Angle8 phi_adapted = phi.times_sign(((c + s_x) % 2) ? -1 : +1) +
                               angle_times_bit(s_z, kPiAngle) +
                               angle_times_bit(c_pred, kPiAngle);
    return phi_adapted + angle_times_bit(r, kPiAngle) + theta;
}

}  // namespace blindpsi::secrets
