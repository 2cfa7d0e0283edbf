#include "relcorr/kinematics.hpp"

#include <cmath>
#include <sstream>

namespace relcorr
{

double minkowski_dot(FourVector const& u, FourVector const& v)
{
    return u.t * v.t - u.x * v.x - u.y * v.y - u.z * v.z;
}

std::complex<double> minkowski_dot(ComplexFourVector const& u, ComplexFourVector const& v)
{
    return u(0) * v(0) - u(1) * v(1) - u(2) * v(2) - u(3) * v(3);
}

//---------------------------------------------------------------------------//

Momentum::Momentum(FourVector const& components, double mass)
    : components_(components), mass_(mass)
{
    if (!(mass > 0) || !std::isfinite(mass))
    {
        throw InvalidArgument("momentum mass must be positive and finite");
    }
    if (!(components.t >= mass))
    {
        throw InvalidArgument("momentum energy must be at least the mass");
    }
    // Absolute rounding in k0^2 - |k|^2 grows like k0^2, so the tolerance
    // scales with the energy rather than the mass alone.
    double const scale = components.t * components.t;
    double const defect = minkowski_dot(components, components) - mass * mass;
    if (std::abs(defect) > kOnShellTolerance * scale)
    {
        std::ostringstream msg;
        msg << "momentum is off-shell: k.k - m^2 = " << defect;
        throw InvalidArgument(msg.str());
    }
}

Momentum Momentum::from_spatial(Vec3 const& spatial, double mass)
{
    if (!(mass > 0))
    {
        throw InvalidArgument("momentum mass must be positive");
    }
    double const energy = std::sqrt(mass * mass + spatial.squaredNorm());
    return Momentum(FourVector(energy, spatial), mass);
}

Momentum Momentum::parity() const
{
    return Momentum(FourVector(components_.t, -components_.spatial()), mass_);
}

//---------------------------------------------------------------------------//

Direction::Direction(Vec3 const& v) : v_(v)
{
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTolerance)
    {
        throw InvalidArgument("direction must be a unit vector");
    }
}

Direction Direction::normalized(Vec3 const& v)
{
    double const n = v.norm();
    if (!(n > 0) || !std::isfinite(n))
    {
        throw InvalidArgument("cannot normalize a zero or non-finite vector");
    }
    return Direction(v / n, Unchecked{});
}

Direction Direction::normalized_near_unit(Vec3 const& v, double tolerance)
{
    double const n = v.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > tolerance)
    {
        std::ostringstream msg;
        msg << "direction has norm " << n << ", not within " << tolerance << " of 1";
        throw InvalidArgument(msg.str());
    }
    return Direction(v / n, Unchecked{});
}

Direction Direction::from_angles(double theta, double phi)
{
    double const st = std::sin(theta);
    return normalized(Vec3{st * std::cos(phi), st * std::sin(phi), std::cos(theta)});
}

//---------------------------------------------------------------------------//

XParam::XParam(double x) : x_(x)
{
    if (!(x >= 0) || !std::isfinite(x))
    {
        throw InvalidArgument("x must be finite and non-negative");
    }
}

XParam XParam::from_invariant_energy(double total_energy, double mass)
{
    if (!(mass > 0))
    {
        throw InvalidArgument("mass must be positive");
    }
    return XParam(total_energy * total_energy / (4 * mass * mass) - 1);
}

double XParam::cm_speed() const
{
    return std::sqrt(x_ / (x_ + 1));
}

//---------------------------------------------------------------------------//

namespace
{
void check_x_and_mass(double x, double mass)
{
    static_cast<void>(XParam{x});
    if (!(mass > 0) || !std::isfinite(mass))
    {
        throw InvalidArgument("mass must be positive and finite");
    }
}
} // namespace

MomentumPair momenta_from_x(double x, double mass)
{
    check_x_and_mass(x, mass);
    double const e = mass * std::sqrt(4 * x + 1);
    double const px = mass * std::sqrt(x);
    double const pz = -mass * std::sqrt(3 * x);
    return {Momentum(FourVector(e, px, 0, pz), mass), Momentum(FourVector(e, -px, 0, pz), mass)};
}

MomentumPair cm_momenta(double x, double mass, Direction const& n)
{
    check_x_and_mass(x, mass);
    Momentum k(FourVector(mass * std::sqrt(x + 1), mass * std::sqrt(x) * n.vec()), mass);
    return {k, k.parity()};
}

Eigen::Matrix4d standard_boost(Momentum const& k)
{
    double const m = k.mass();
    double const e = k.energy();
    Vec3 const kv = k.spatial();

    Eigen::Matrix4d boost;
    boost(0, 0) = e / m;
    boost.block<1, 3>(0, 1) = kv.transpose() / m;
    boost.block<3, 1>(1, 0) = kv / m;
    boost.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + kv * kv.transpose() / (m * (e + m));
    return boost;
}

//---------------------------------------------------------------------------//

double spin_value(Spin s)
{
    return s == Spin::Half ? 0.5 : 1.0;
}

int spin_dimension(Spin s)
{
    return s == Spin::Half ? 2 : 3;
}

std::string to_string(Spin s)
{
    return s == Spin::Half ? "half" : "one";
}

namespace
{
using cd = std::complex<double>;

std::array<CMatrix, 3> make_spin_half()
{
    CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, cd(0, -1), cd(0, 1), 0;
    s3 << 1, 0, 0, -1;
    return {0.5 * s1, 0.5 * s2, 0.5 * s3};
}

std::array<CMatrix, 3> make_spin_one()
{
    // Raising operator S+ |m> = sqrt(2) |m+1> in the (+1, 0, -1) ordering.
    CMatrix raise = CMatrix::Zero(3, 3);
    raise(0, 1) = std::sqrt(2.0);
    raise(1, 2) = std::sqrt(2.0);
    CMatrix const lower = raise.adjoint();

    CMatrix s3 = CMatrix::Zero(3, 3);
    s3(0, 0) = 1;
    s3(2, 2) = -1;
    return {0.5 * (raise + lower), (raise - lower) / cd(0, 2), s3};
}
} // namespace

std::array<CMatrix, 3> const& spin_matrices(Spin s)
{
    static std::array<CMatrix, 3> const half = make_spin_half();
    static std::array<CMatrix, 3> const one = make_spin_one();
    return s == Spin::Half ? half : one;
}

CMatrix spin_projection(Vec3 const& v, Spin s)
{
    auto const& S = spin_matrices(s);
    return v.x() * S[0] + v.y() * S[1] + v.z() * S[2];
}

} // namespace relcorr
