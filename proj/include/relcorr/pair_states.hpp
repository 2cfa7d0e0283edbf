// Two-particle states with sharp momenta, stored as the spin coefficient
// matrix psi(sigma, lambda): rows index Alice's spin (momentum k), columns
// Bob's spin (momentum p). Covariant normalization factors of the basis kets
// are dropped; they cancel in every normalized correlation.
#pragma once

#include <array>

#include "relcorr/kinematics.hpp"

namespace relcorr
{

struct PairState
{
    Spin spin;
    MomentumPair momenta;
    CMatrix coeffs;

    double squared_norm() const { return coeffs.squaredNorm(); }
};

/// Pseudoscalar spin-1/2 pair:
///   psi = N [1 (1 + (k0+p0)/m + k.p/m^2) - i (k x p).sigma / m^2] sigma_2,
///   N = -i / (sqrt(2) sqrt((1 + k0/m)(1 + p0/m))).
/// Reduces to -i sqrt(2) sigma_2 at rest and to the ordinary singlet for p = k^pi.
PairState spin_half_pair_state(Momentum const& k, Momentum const& p);

/// Polarization amplitudes e_sigma(k) = L_k (0, e_sigma), sigma = +1, 0, -1,
/// with rest-frame spherical vectors e_{+-1} = -+(1, +-i, 0)/sqrt(2), e_0 = z.
/// They satisfy k.e_sigma = 0 and eta(e_sigma, conj(e_lambda)) = -delta.
std::array<ComplexFourVector, 3> polarization_vectors(Momentum const& k);

/// Scalar spin-1 pair psi(sigma, lambda) = eta_{mu nu} conj(e^mu_sigma(k)) conj(e^nu_lambda(p)).
///
/// The contraction uses the conjugated amplitudes: with the spherical
/// basis above this is the combination whose correlations agree with the
/// known closed forms for arbitrary momentum orientations. At rest it is the
/// anti-diagonal (1, -1, 1), i.e. |+1,-1> - |0,0> + |-1,+1>.
PairState spin_one_pair_state(Momentum const& k, Momentum const& p);

PairState make_pair_state(Spin s, Momentum const& k, Momentum const& p);

} // namespace relcorr
