#include "relcorr/pair_states.hpp"

#include <algorithm>
#include <cmath>

namespace relcorr
{

namespace
{
using cd = std::complex<double>;

void check_equal_mass(Momentum const& k, Momentum const& p)
{
    if (std::abs(k.mass() - p.mass()) > 1e-12 * std::max(k.mass(), p.mass()))
    {
        throw InvalidArgument("pair-state momenta must share the same mass");
    }
}
} // namespace

PairState spin_half_pair_state(Momentum const& k, Momentum const& p)
{
    check_equal_mass(k, p);
    double const m = k.mass();
    double const k0 = k.energy();
    double const p0 = p.energy();
    Vec3 const cross = k.spatial().cross(p.spatial());

    auto const& S = spin_matrices(Spin::Half);
    // sigma_i = 2 S_i
    CMatrix const cross_dot_sigma = 2.0 * (cross.x() * S[0] + cross.y() * S[1] + cross.z() * S[2]);
    CMatrix const sigma2 = 2.0 * S[1];

    double const scalar = 1 + (k0 + p0) / m + minkowski_dot(k.four(), p.four()) / (m * m);
    CMatrix bracket = scalar * CMatrix::Identity(2, 2) - cd(0, 1) * cross_dot_sigma / (m * m);

    cd const prefactor = cd(0, -1) / (std::sqrt(2.0) * std::sqrt((1 + k0 / m) * (1 + p0 / m)));
    return PairState{Spin::Half, {k, p}, prefactor * bracket * sigma2};
}

std::array<ComplexFourVector, 3> polarization_vectors(Momentum const& k)
{
    double const r = 1 / std::sqrt(2.0);
    std::array<ComplexFourVector, 3> rest;
    rest[0] << 0, -r, cd(0, -r), 0;
    rest[1] << 0, 0, 0, 1;
    rest[2] << 0, r, cd(0, -r), 0;

    Eigen::Matrix4cd const boost = standard_boost(k).cast<cd>();
    std::array<ComplexFourVector, 3> result;
    for (std::size_t i = 0; i < rest.size(); ++i)
    {
        result[i] = boost * rest[i];
    }
    return result;
}

PairState spin_one_pair_state(Momentum const& k, Momentum const& p)
{
    check_equal_mass(k, p);
    auto const ek = polarization_vectors(k);
    auto const ep = polarization_vectors(p);

    CMatrix psi(3, 3);
    for (int s = 0; s < 3; ++s)
    {
        for (int l = 0; l < 3; ++l)
        {
            psi(s, l) = minkowski_dot(ComplexFourVector(ek[s].conjugate()),
                                      ComplexFourVector(ep[l].conjugate()));
        }
    }
    return PairState{Spin::One, {k, p}, psi};
}

PairState make_pair_state(Spin s, Momentum const& k, Momentum const& p)
{
    return s == Spin::Half ? spin_half_pair_state(k, p) : spin_one_pair_state(k, p);
}

} // namespace relcorr
