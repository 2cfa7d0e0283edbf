#include "relcorr/bell.hpp"

#include <cmath>

namespace relcorr
{

std::string to_string(Inequality which)
{
    return which == Inequality::Chsh ? "chsh" : "mermin";
}

double inequality_bound(Inequality which)
{
    return which == Inequality::Chsh ? 2.0 : 1.0;
}

std::size_t direction_count(Inequality which)
{
    return which == Inequality::Chsh ? 4 : 3;
}

double chsh_value(CorrelationFunction const& corr,
                  Direction const& a,
                  Direction const& b,
                  Direction const& c,
                  Direction const& d)
{
    return std::abs(corr(a, b) - corr(a, d) + corr(c, b) + corr(c, d));
}

double bell_mermin_value(CorrelationFunction const& corr, Direction const& a, Direction const& b, Direction const& c)
{
    return corr(a, b) + corr(b, c) + corr(c, a);
}

namespace
{
InequalityResult make_result(Inequality which, double value, std::vector<Direction> dirs, Correlator const& corr)
{
    double const bound = inequality_bound(which);
    return InequalityResult{which,
                            value,
                            bound,
                            value > bound + InequalityResult::kViolationTolerance,
                            std::move(dirs),
                            corr.x(),
                            corr.model()};
}

CorrelationFunction as_function(Correlator const& corr)
{
    return [&corr](Direction const& u, Direction const& v) { return corr(u, v); };
}
} // namespace

InequalityResult chsh(Correlator const& corr, Direction const& a, Direction const& b, Direction const& c, Direction const& d)
{
    double const value = chsh_value(as_function(corr), a, b, c, d);
    return make_result(Inequality::Chsh, value, {a, b, c, d}, corr);
}

InequalityResult bell_mermin(Correlator const& corr, Direction const& a, Direction const& b, Direction const& c)
{
    if (corr.model().spin != Spin::One)
    {
        throw InvalidArgument("the Bell-Mermin inequality applies to spin-1 correlations only");
    }
    double const value = bell_mermin_value(as_function(corr), a, b, c);
    return make_result(Inequality::BellMermin, value, {a, b, c}, corr);
}

InequalityResult evaluate_inequality(Inequality which, Correlator const& corr, std::span<Direction const> directions)
{
    if (directions.size() != direction_count(which))
    {
        throw InvalidArgument(to_string(which) + " needs " + std::to_string(direction_count(which)) + " directions");
    }
    if (which == Inequality::Chsh)
    {
        return chsh(corr, directions[0], directions[1], directions[2], directions[3]);
    }
    return bell_mermin(corr, directions[0], directions[1], directions[2]);
}

} // namespace relcorr
