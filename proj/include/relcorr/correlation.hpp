// Normalized spin-spin correlation functions
//
//     C(a, b) = <Psi| A(a) x B(b) |Psi> / (s^2 <Psi|Psi>)
//
// evaluated two independent ways: by a brute-force matrix expectation over
// the pair-state coefficients (the oracle), and by the published closed forms.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relcorr/kinematics.hpp"
#include "relcorr/observables.hpp"
#include "relcorr/pair_states.hpp"

namespace relcorr
{

enum class Backend
{
    ClosedForm,
    Oracle
};

/// Eq13: the lab-frame family k = m(sqrt(4x+1), sqrt(x), 0, -sqrt(3x)),
/// p = m(sqrt(4x+1), -sqrt(x), 0, -sqrt(3x)). CentreOfMass: p = k^pi along n.
enum class MomentumFamily
{
    Eq13,
    CentreOfMass
};

std::string to_string(Backend b);
std::string to_string(MomentumFamily f);

/// No closed form is known for the requested combination (spin-1
/// Newton-Wigner outside the c.m. frame); use the oracle backend.
class ClosedFormUnavailable : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
// Oracle
//---------------------------------------------------------------------------//

/// Re[sum psi*_{sl} A_{ss'} B_{ll'} psi_{s'l'}] / (s^2 sum |psi_{sl}|^2).
/// Throws std::logic_error when the normalized imaginary part exceeds 1e-12.
double correlation_oracle(PairState const& state, Observable const& alice, Observable const& bob);

//---------------------------------------------------------------------------//
// Closed forms, transcribed term by term
//---------------------------------------------------------------------------//

/// Spin 1/2, Newton-Wigner:
///   -a.b + (k x p)/(m^2 + k.p) . [(a x b) + ((a.k)(b x p) - (b.p)(a x k)) / ((k0+m)(p0+m))]
double corr_nw_half(Momentum const& k, Momentum const& p, Direction const& a, Direction const& b);

/// Spin 1/2, Czachor:
///   m^2 / (sqrt(m^2+(a.k)^2) sqrt(m^2+(b.p)^2))
///   * {-a.b + (a.k)(b.p)/m^2 - [a.(k+p)][b.(k+p)]/(m^2 + k.p)}
double corr_cz_half(Momentum const& k, Momentum const& p, Direction const& a, Direction const& b);

/// Spin 1, Newton-Wigner, c.m. frame only:
///   2/(2+(1+2x)^2) [-(1+2x) a.b + 2x (a.n)(b.n)]
double corr_nw_one_cm(double x, Direction const& n, Direction const& a, Direction const& b);

/// Spin 1, Czachor, general momenta:
///   2 [-(a.b)(k.p) - (a.p)(b.k)] / [(2 + (k.p)^2/m^4) sqrt(m^2+(a.k)^2) sqrt(m^2+(b.p)^2)]
double corr_cz_one(Momentum const& k, Momentum const& p, Direction const& a, Direction const& b);

/// Spin 1, Czachor, c.m. frame:
///   2 [-(a.b)(1+2x) + x (a.n)(b.n)] / [(2+(1+2x)^2) sqrt(1+(a.n)^2 x) sqrt(1+(b.n)^2 x)]
double corr_cz_one_cm(double x, Direction const& n, Direction const& a, Direction const& b);

//---------------------------------------------------------------------------//
// Configured correlation functional
//---------------------------------------------------------------------------//

/// Everything but x and the two measurement directions.
struct CorrelationModel
{
    Spin spin{Spin::Half};
    SpinOperator op{SpinOperator::NewtonWigner};
    Backend backend{Backend::ClosedForm};
    MomentumFamily family{MomentumFamily::Eq13};
    double mass{1.0};
    /// c.m. momentum axis; ignored for the Eq13 family.
    Direction n{0, 0, 1};

    bool closed_form_available() const;
    MomentumPair momenta(double x) const;
};

/// A CorrelationModel bound to one value of x: C(a, b).
class Correlator
{
  public:
    /// Throws ClosedFormUnavailable for closed-form requests without one.
    Correlator(CorrelationModel const& model, double x);

    double operator()(Direction const& a, Direction const& b) const;

    CorrelationModel const& model() const { return model_; }
    double x() const { return x_; }
    MomentumPair const& momenta() const { return momenta_; }

  private:
    CorrelationModel model_;
    double x_;
    MomentumPair momenta_;
    std::optional<PairState> state_;
};

//---------------------------------------------------------------------------//
// Cross-validation
//---------------------------------------------------------------------------//

struct EquivalenceCase
{
    Spin spin;
    SpinOperator op;
    MomentumFamily family;

    std::string label() const;
};

/// All eight (spin, operator, family) combinations.
std::vector<EquivalenceCase> all_equivalence_cases();

struct CaseDiscrepancy
{
    EquivalenceCase which;
    bool closed_form_available{true};
    std::size_t samples{0};
    double max_discrepancy{0};
    std::string note;
};

struct WorstConfiguration
{
    std::string label;
    double x{0};
    Vec3 a{Vec3::Zero()};
    Vec3 b{Vec3::Zero()};
    Vec3 n{Vec3::Zero()};
    double closed{0};
    double oracle{0};
};

struct EquivalenceReport
{
    static constexpr double kTolerance = 1e-10;

    std::vector<CaseDiscrepancy> cases;
    double max_discrepancy{0};
    WorstConfiguration worst;
    bool passed{true};
};

/// Draws `sample_count` random (x, a, b, n) configurations with x uniform in
/// [x_min, x_max] and compares every available closed form with the oracle.
/// Passes iff the maximum discrepancy is below 1e-10. Deterministic in seed.
EquivalenceReport verify_equivalence(std::size_t sample_count,
                                     double x_min,
                                     double x_max,
                                     std::uint64_t seed,
                                     std::vector<EquivalenceCase> const& cases = all_equivalence_cases());

} // namespace relcorr
