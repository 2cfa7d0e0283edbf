// Four-vectors, on-shell momenta, measurement directions, the standard boost
// and spin matrices. Metric signature (+,-,-,-), natural units c = 1.
#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace relcorr
{

using Vec3 = Eigen::Vector3d;
using CMatrix = Eigen::MatrixXcd;
using ComplexFourVector = Eigen::Vector4cd;

/// Raised for any violated precondition (off-shell momentum, non-unit
/// direction, negative x, ...).
class InvalidArgument : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct FourVector
{
    double t{0};
    double x{0};
    double y{0};
    double z{0};

    FourVector() = default;
    FourVector(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_) {}
    FourVector(double t_, Vec3 const& v) : t(t_), x(v.x()), y(v.y()), z(v.z()) {}

    Vec3 spatial() const { return {x, y, z}; }
    Eigen::Vector4d as_column() const { return {t, x, y, z}; }
    static FourVector from_column(Eigen::Vector4d const& c) { return {c(0), c(1), c(2), c(3)}; }

    FourVector operator+(FourVector const& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    FourVector operator-(FourVector const& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    FourVector operator*(double s) const { return {s * t, s * x, s * y, s * z}; }
};

double minkowski_dot(FourVector const& u, FourVector const& v);

/// Bilinear (not sesquilinear) Minkowski contraction of complex four-vectors.
std::complex<double> minkowski_dot(ComplexFourVector const& u, ComplexFourVector const& v);

/// An on-shell four-momentum with positive energy.
class Momentum
{
  public:
    static constexpr double kOnShellTolerance = 1e-12;

    /// Validates on-shell condition |k.k - m^2| <= 1e-12 m^2 and k.t >= m.
    Momentum(FourVector const& components, double mass);

    /// Builds the on-shell momentum with the given spatial part.
    static Momentum from_spatial(Vec3 const& spatial, double mass);

    FourVector const& four() const { return components_; }
    double energy() const { return components_.t; }
    Vec3 spatial() const { return components_.spatial(); }
    double mass() const { return mass_; }

    /// Parity image k^pi = (k0, -k).
    Momentum parity() const;

  private:
    FourVector components_;
    double mass_;
};

/// Unit 3-vector used as a measurement axis.
class Direction
{
  public:
    static constexpr double kUnitTolerance = 1e-12;

    /// Throws unless |‖v‖ - 1| <= 1e-12.
    explicit Direction(Vec3 const& v);
    Direction(double x, double y, double z) : Direction(Vec3{x, y, z}) {}

    /// Normalizes v. Throws for the zero vector.
    static Direction normalized(Vec3 const& v);
    /// Normalizes v when ‖v‖ is within `tolerance` of 1, throws otherwise.
    static Direction normalized_near_unit(Vec3 const& v, double tolerance);
    /// Polar angle theta in [0, pi], azimuth phi.
    static Direction from_angles(double theta, double phi);

    Vec3 const& vec() const { return v_; }
    double dot(Direction const& o) const { return v_.dot(o.v_); }
    double dot(Vec3 const& o) const { return v_.dot(o); }

  private:
    struct Unchecked
    {
    };
    Direction(Vec3 const& v, Unchecked) : v_(v) {}

    Vec3 v_;
};

/// Kinematic parameter x = W^2/(4 m^2) - 1, W the invariant pair energy.
class XParam
{
  public:
    explicit XParam(double x);
    static XParam from_invariant_energy(double total_energy, double mass);

    double value() const { return x_; }
    /// (v/c)^2 = x/(x+1) for each particle in the c.m. frame.
    double cm_speed() const;

  private:
    double x_;
};

/// Alice's k and Bob's p.
struct MomentumPair
{
    Momentum k;
    Momentum p;
};

/// k = m(sqrt(4x+1), sqrt(x), 0, -sqrt(3x)), p = m(sqrt(4x+1), -sqrt(x), 0, -sqrt(3x)).
MomentumPair momenta_from_x(double x, double mass);

/// Centre-of-mass pair: k = (m sqrt(x+1), m sqrt(x) n), p = k^pi.
MomentumPair cm_momenta(double x, double mass, Direction const& n);

/// Rotation-free boost L_k with L_k (m,0,0,0) = k and L_(m,0) = identity.
Eigen::Matrix4d standard_boost(Momentum const& k);

enum class Spin
{
    Half,
    One
};

double spin_value(Spin s);
int spin_dimension(Spin s);
std::string to_string(Spin s);

/// (S1, S2, S3) in the basis ordered by decreasing S3 eigenvalue:
/// (+1/2, -1/2) for spin 1/2, (+1, 0, -1) for spin 1.
std::array<CMatrix, 3> const& spin_matrices(Spin s);

/// v . S for a real 3-vector v.
CMatrix spin_projection(Vec3 const& v, Spin s);

} // namespace relcorr
