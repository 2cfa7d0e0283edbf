#include "relcorr/observables.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace relcorr
{

std::string to_string(SpinOperator op)
{
    return op == SpinOperator::NewtonWigner ? "nw" : "cz";
}

PauliLubanskiAction pauli_lubanski_action(Momentum const& k, Spin s)
{
    auto const& S = spin_matrices(s);
    Vec3 const kv = k.spatial();
    double const m = k.mass();
    CMatrix const k_dot_s = spin_projection(kv, s);

    PauliLubanskiAction w{k_dot_s, {}};
    for (int i = 0; i < 3; ++i)
    {
        w.space[i] = m * S[i] + kv(i) / (k.energy() + m) * k_dot_s;
    }
    return w;
}

Observable nw_spin_matrix(Direction const& a, Spin s)
{
    return Observable{spin_projection(a.vec(), s), SpinOperator::NewtonWigner, a, std::nullopt};
}

Observable czachor_matrix(Direction const& a, Momentum const& k, Spin s)
{
    auto const w = pauli_lubanski_action(k, s);
    double const ak = a.dot(k.spatial());
    double const m = k.mass();
    CMatrix const a_dot_w = a.vec().x() * w.space[0] + a.vec().y() * w.space[1] + a.vec().z() * w.space[2];
    return Observable{a_dot_w / std::sqrt(m * m + ak * ak), SpinOperator::Czachor, a, k};
}

Observable make_observable(SpinOperator op, Direction const& a, Momentum const& k, Spin s)
{
    return op == SpinOperator::NewtonWigner ? nw_spin_matrix(a, s) : czachor_matrix(a, k, s);
}

std::vector<double> hermitian_eigenvalues(CMatrix const& m)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
    {
        throw InvalidArgument("eigenvalue decomposition failed");
    }
    auto const& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

} // namespace relcorr
