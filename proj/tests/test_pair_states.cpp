#include <doctest.h>

#include <cmath>

#include "relcorr/correlation.hpp"
#include "relcorr/pair_states.hpp"
#include "test_support.hpp"

using namespace relcorr;
using relcorr::testing::close;
using relcorr::testing::max_abs;
using cd = std::complex<double>;

TEST_CASE("spin-1/2 pair state at rest is -i sqrt(2) sigma_2")
{
    Momentum const rest(FourVector(1, 0, 0, 0), 1.0);
    PairState const state = spin_half_pair_state(rest, rest);
    CMatrix expected(2, 2);
    expected << 0, -1, 1, 0;
    expected *= std::sqrt(2.0);
    CHECK(max_abs(state.coeffs - expected) < 1e-15);
    CHECK(close(state.squared_norm(), 4.0, 1e-14));
}

TEST_CASE("spin-1/2 pair state is the ordinary singlet in the c.m. frame")
{
    Rng rng(5);
    for (int i = 0; i < 50; ++i)
    {
        auto const [k, p] = cm_momenta(rng.uniform(0, 10), 1.0, rng.direction());
        PairState const state = spin_half_pair_state(k, p);
        // proportional to [[0,1],[-1,0]]: zero diagonal, antisymmetric
        CHECK(std::abs(state.coeffs(0, 0)) < 1e-14);
        CHECK(std::abs(state.coeffs(1, 1)) < 1e-14);
        CHECK(std::abs(state.coeffs(0, 1) + state.coeffs(1, 0)) < 1e-14 * std::abs(state.coeffs(0, 1)));
    }
}

TEST_CASE("pair states have positive norm and reject mismatched masses")
{
    auto const [k, p] = momenta_from_x(1.0, 1.0);
    CHECK(spin_half_pair_state(k, p).squared_norm() > 0);
    CHECK(spin_one_pair_state(k, p).squared_norm() > 0);

    Momentum const heavy(FourVector(2, 0, 0, 0), 2.0);
    CHECK_THROWS_AS(spin_half_pair_state(k, heavy), InvalidArgument);
    CHECK_THROWS_AS(spin_one_pair_state(k, heavy), InvalidArgument);
}

TEST_CASE("polarization_vectors")
{
    SUBCASE("rest frame")
    {
        Momentum const rest(FourVector(3, 0, 0, 0), 3.0);
        auto const e = polarization_vectors(rest);
        double const r = 1 / std::sqrt(2.0);
        ComplexFourVector plus, zero, minus;
        plus << 0, -r, cd(0, -r), 0;
        zero << 0, 0, 0, 1;
        minus << 0, r, cd(0, -r), 0;
        CHECK((e[0] - plus).norm() < 1e-15);
        CHECK((e[1] - zero).norm() < 1e-15);
        CHECK((e[2] - minus).norm() < 1e-15);
    }
    SUBCASE("transverse and orthonormal for random momenta")
    {
        Rng rng(17);
        for (int i = 0; i < 200; ++i)
        {
            double const m = rng.uniform(0.3, 3);
            Momentum const k = Momentum::from_spatial(rng.uniform(0, 10) * rng.direction().vec(), m);
            auto const e = polarization_vectors(k);
            ComplexFourVector const kc = k.four().as_column().cast<cd>();
            double const scale = k.energy() / m;
            for (int s = 0; s < 3; ++s)
            {
                CHECK(std::abs(minkowski_dot(kc, e[s])) <= 1e-12 * k.energy() * scale);
                for (int l = 0; l < 3; ++l)
                {
                    cd const gram = minkowski_dot(e[s], ComplexFourVector(e[l].conjugate()));
                    CHECK(std::abs(gram - cd(s == l ? -1.0 : 0.0)) <= 1e-12 * scale * scale);
                }
            }
        }
    }
}

TEST_CASE("spin-1 pair state at rest is the anti-diagonal (1, -1, 1)")
{
    Momentum const rest(FourVector(1, 0, 0, 0), 1.0);
    CMatrix expected = CMatrix::Zero(3, 3);
    expected(0, 2) = 1;
    expected(1, 1) = -1;
    expected(2, 0) = 1;
    CHECK(max_abs(spin_one_pair_state(rest, rest).coeffs - expected) < 1e-15);
}

TEST_CASE("spin-1 state reproduces the closed forms for arbitrary orientation")
{
    // The eq13 family keeps k and p in the xz-plane; random c.m. axes probe
    // the conjugation convention of the amplitudes.
    Rng rng(23);
    for (int i = 0; i < 200; ++i)
    {
        double const x = rng.uniform(0, 10);
        Direction const n = rng.direction();
        Direction const a = rng.direction();
        Direction const b = rng.direction();
        auto const [k, p] = cm_momenta(x, 1.0, n);
        PairState const state = spin_one_pair_state(k, p);

        double const nw = correlation_oracle(state, nw_spin_matrix(a, Spin::One), nw_spin_matrix(b, Spin::One));
        CHECK(close(nw, corr_nw_one_cm(x, n, a, b), 1e-12));

        double const cz = correlation_oracle(
            state, czachor_matrix(a, k, Spin::One), czachor_matrix(b, p, Spin::One));
        CHECK(close(cz, corr_cz_one_cm(x, n, a, b), 1e-12));
    }
}

TEST_CASE("correlations are invariant under complex rescaling of the state")
{
    Rng rng(29);
    for (Spin s : {Spin::Half, Spin::One})
    {
        for (int i = 0; i < 40; ++i)
        {
            auto const [k, p] = momenta_from_x(rng.uniform(0, 8), 1.0);
            PairState state = make_pair_state(s, k, p);
            Direction const a = rng.direction();
            Direction const b = rng.direction();
            for (SpinOperator op : {SpinOperator::NewtonWigner, SpinOperator::Czachor})
            {
                Observable const A = make_observable(op, a, k, s);
                Observable const B = make_observable(op, b, p, s);
                double const before = correlation_oracle(state, A, B);
                PairState scaled = state;
                scaled.coeffs *= cd(rng.uniform(-5, 5), rng.uniform(-5, 5)) + cd(0.1, 0);
                CHECK(close(correlation_oracle(scaled, A, B), before, 1e-12));
            }
        }
    }
}
