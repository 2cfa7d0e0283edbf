// Sweeps over the kinematic parameter x, interior extremum location, and
// measurement-direction optimization.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relcorr/bell.hpp"
#include "relcorr/correlation.hpp"

namespace relcorr
{

using ScalarFunction = std::function<double(double)>;

struct SweepPoint
{
    double x;
    double value;
};

struct SweepResult
{
    std::string label;
    std::vector<SweepPoint> points;
};

/// Evaluates f on `steps` uniformly spaced points including both endpoints.
/// Requires 0 <= x_min < x_max and steps >= 2; throws if f is not finite.
SweepResult sweep_x(ScalarFunction const& f, double x_min, double x_max, std::size_t steps, std::string label = {});

enum class ExtremumKind
{
    Max,
    Min
};

std::string to_string(ExtremumKind kind);

struct Extremum
{
    double x_star;
    double value;
    ExtremumKind kind;
};

struct ExtremaOptions
{
    std::size_t coarse_steps{512};
    double x_tol{1e-8};
};

/// Interior local extrema of f on [x_min, x_max], sorted by x.
///
/// Sign changes of the first difference on a uniform coarse grid bracket
/// each stationary point; golden-section search on f (max) or -f (min)
/// refines it to width <= x_tol. Endpoint extrema are not reported and f is
/// never evaluated outside [x_min, x_max].
std::vector<Extremum> find_local_extrema(ScalarFunction const& f,
                                         double x_min,
                                         double x_max,
                                         ExtremaOptions const& options = {});

/// Maximizer of a unimodal f on [lo, hi], bracket shrunk to width <= tol.
double golden_section_max(ScalarFunction const& f, double lo, double hi, double tol);

//---------------------------------------------------------------------------//
// Derivative-free minimization
//---------------------------------------------------------------------------//

struct NelderMeadOptions
{
    double initial_step{0.3};
    double f_tol{1e-14};
    double x_tol{1e-10};
    std::size_t max_evaluations{20000};
    /// Re-seed the simplex around the best point this many times.
    std::size_t reinitializations{3};
};

struct NelderMeadResult
{
    std::vector<double> x;
    double value;
    std::size_t evaluations;
};

NelderMeadResult nelder_mead_minimize(std::function<double(std::span<double const>)> const& f,
                                      std::vector<double> start,
                                      NelderMeadOptions const& options = {});

//---------------------------------------------------------------------------//
// Quantities of x and direction optimization
//---------------------------------------------------------------------------//

/// x -> C(a, b) at the model's momenta for x.
ScalarFunction correlation_curve(CorrelationModel const& model, Direction const& a, Direction const& b);

/// x -> inequality value for fixed directions.
ScalarFunction inequality_curve(Inequality which, CorrelationModel const& model, std::vector<Direction> directions);

struct DirectionOptimum
{
    std::vector<Direction> directions;
    double value{0};
};

/// Maximizes the inequality value over all measurement directions at fixed x.
/// Each direction is parameterized by spherical angles and the simplex search
/// is restarted `restarts` times from seeded random angles; restart 0 starts
/// from `initial` when given. Ties go to the lowest restart index.
DirectionOptimum optimize_directions(Inequality which,
                                     CorrelationModel const& model,
                                     double x,
                                     std::size_t restarts,
                                     std::uint64_t seed,
                                     std::optional<std::vector<Direction>> const& initial = std::nullopt);

struct JointOptimum
{
    double x_star{0};
    std::vector<Direction> directions;
    double value{0};
};

/// Alternates an x-scan (best interior maximum, or the best endpoint when
/// there is none) with direction optimization at the current x until the
/// value improves by less than 1e-9. With `fixed_directions` only the x-scan
/// runs.
JointOptimum optimize_joint(Inequality which,
                            CorrelationModel const& model,
                            double x_min,
                            double x_max,
                            std::size_t restarts,
                            std::uint64_t seed,
                            std::optional<std::vector<Direction>> const& fixed_directions = std::nullopt,
                            ExtremaOptions const& scan = {});

} // namespace relcorr
