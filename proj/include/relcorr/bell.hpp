// CHSH and Bell-Mermin quantities on top of a correlation functional.
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "relcorr/correlation.hpp"

namespace relcorr
{

enum class Inequality
{
    Chsh,
    BellMermin
};

std::string to_string(Inequality which);

/// Local-realistic bound: 2 for CHSH, 1 for Bell-Mermin.
double inequality_bound(Inequality which);

/// Number of measurement directions: 4 for CHSH (a, b, c, d), 3 for Bell-Mermin.
std::size_t direction_count(Inequality which);

struct InequalityResult
{
    static constexpr double kViolationTolerance = 1e-12;

    Inequality which;
    double value{0};
    double bound{0};
    bool violated{false};

    // configuration echo
    std::vector<Direction> directions;
    double x{0};
    CorrelationModel model;
};

using CorrelationFunction = std::function<double(Direction const&, Direction const&)>;

/// |C(a,b) - C(a,d) + C(c,b) + C(c,d)|
double chsh_value(CorrelationFunction const& corr,
                  Direction const& a,
                  Direction const& b,
                  Direction const& c,
                  Direction const& d);

/// C(a,b) + C(b,c) + C(c,a), signed.
double bell_mermin_value(CorrelationFunction const& corr, Direction const& a, Direction const& b, Direction const& c);

InequalityResult chsh(Correlator const& corr, Direction const& a, Direction const& b, Direction const& c, Direction const& d);

/// Throws InvalidArgument for spin-1/2 correlators; the inequality is stated
/// for the spin-1 singlet.
InequalityResult bell_mermin(Correlator const& corr, Direction const& a, Direction const& b, Direction const& c);

/// Dispatches on `which`; `directions` must hold direction_count(which) entries.
InequalityResult evaluate_inequality(Inequality which, Correlator const& corr, std::span<Direction const> directions);

} // namespace relcorr
