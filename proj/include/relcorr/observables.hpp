// Single-particle spin observables for the two relativistic spin operators.
//
// Matrices act on the canonical basis |k, sigma>. On that basis the
// Newton-Wigner spin acts as the rest-frame spin matrices S, independent of k.
//
// Pauli-Lubanski action. The Newton-Wigner spin is
//
//     m S = W - W0 P / (P0 + m),
//
// and the Pauli-Lubanski vector is transverse, W.P = W0 P0 - W.P(3) = 0.
// Dotting the first relation with the 3-momentum k and using transversality,
//
//     m (k.S) = W0 k0 - W0 (k0^2 - m^2)/(k0 + m) = m W0,
//
// so on |k, sigma>
//
//     W0 -> k.S,      W -> m S + k (k.S)/(k0 + m).
//
// The Czachor observable S(a) = a.W / sqrt(m^2 + (a.k)^2) then becomes
//
//     [m (a.S) + (a.k)(k.S)/(k0 + m)] / sqrt(m^2 + (a.k)^2).
//
// For spin 1/2 its square is the identity/4 because
// |m a + (a.k) k/(k0+m)|^2 = m^2 + (a.k)^2, so the spectrum is {-s, ..., s}.
// The same holds for spin 1 since the operator is n.S for a unit vector n.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcorr/kinematics.hpp"

namespace relcorr
{

enum class SpinOperator
{
    NewtonWigner,
    Czachor
};

std::string to_string(SpinOperator op);

struct Observable
{
    CMatrix matrix;
    SpinOperator op;
    Direction direction;
    /// Momentum the observable was built at; empty when it does not depend
    /// on momentum (Newton-Wigner).
    std::optional<Momentum> momentum;
};

/// Pauli-Lubanski components on |k, sigma>.
struct PauliLubanskiAction
{
    CMatrix time;
    std::array<CMatrix, 3> space;
};

PauliLubanskiAction pauli_lubanski_action(Momentum const& k, Spin s);

/// a . S, independent of momentum.
Observable nw_spin_matrix(Direction const& a, Spin s);

/// Normalized Pauli-Lubanski projection a.W / sqrt(m^2 + (a.k)^2).
Observable czachor_matrix(Direction const& a, Momentum const& k, Spin s);

Observable make_observable(SpinOperator op, Direction const& a, Momentum const& k, Spin s);

/// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(CMatrix const& m);

} // namespace relcorr
