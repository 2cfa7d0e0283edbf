#include "relcorr/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "relcorr/random.hpp"

namespace relcorr
{

namespace
{
void check_range(double x_min, double x_max)
{
    if (!(x_min >= 0) || !(x_max > x_min) || !std::isfinite(x_max))
    {
        throw InvalidArgument("x range must satisfy 0 <= x_min < x_max");
    }
}

double grid_point(double x_min, double x_max, std::size_t i, std::size_t intervals)
{
    if (i == intervals)
    {
        return x_max;
    }
    return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(intervals);
}

int sign_of(double v)
{
    return (v > 0) - (v < 0);
}
} // namespace

SweepResult sweep_x(ScalarFunction const& f, double x_min, double x_max, std::size_t steps, std::string label)
{
    check_range(x_min, x_max);
    if (steps < 2)
    {
        throw InvalidArgument("a sweep needs at least 2 steps");
    }
    SweepResult result{std::move(label), {}};
    result.points.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i)
    {
        double const x = grid_point(x_min, x_max, i, steps - 1);
        double const value = f(x);
        if (!std::isfinite(value))
        {
            throw InvalidArgument("swept quantity is not finite at x = " + std::to_string(x));
        }
        result.points.push_back({x, value});
    }
    return result;
}

std::string to_string(ExtremumKind kind)
{
    return kind == ExtremumKind::Max ? "max" : "min";
}

double golden_section_max(ScalarFunction const& f, double lo, double hi, double tol)
{
    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5) - 1) / 2
    constexpr int max_iterations = 200;

    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iterations && b - a > tol; ++it)
    {
        if (fc >= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

std::vector<Extremum> find_local_extrema(ScalarFunction const& f,
                                         double x_min,
                                         double x_max,
                                         ExtremaOptions const& options)
{
    check_range(x_min, x_max);
    if (options.coarse_steps < 8)
    {
        throw InvalidArgument("coarse_steps must be at least 8");
    }
    if (!(options.x_tol > 0))
    {
        throw InvalidArgument("x_tol must be positive");
    }

    std::size_t const n = options.coarse_steps;
    std::vector<double> xs(n + 1), fs(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
    {
        xs[i] = grid_point(x_min, x_max, i, n);
        fs[i] = f(xs[i]);
    }

    std::vector<Extremum> found;
    int last_sign = 0;
    std::size_t last_index = 0; // left end of the last non-flat difference
    for (std::size_t i = 0; i < n; ++i)
    {
        int const s = sign_of(fs[i + 1] - fs[i]);
        if (s == 0)
        {
            continue;
        }
        if (last_sign != 0 && s != last_sign)
        {
            ExtremumKind const kind = last_sign > 0 ? ExtremumKind::Max : ExtremumKind::Min;
            double const lo = xs[last_index];
            double const hi = xs[i + 1];
            double x_star;
            if (kind == ExtremumKind::Max)
            {
                x_star = golden_section_max(f, lo, hi, options.x_tol);
            }
            else
            {
                x_star = golden_section_max([&f](double x) { return -f(x); }, lo, hi, options.x_tol);
            }
            if (x_star > x_min && x_star < x_max)
            {
                found.push_back({x_star, f(x_star), kind});
            }
        }
        last_sign = s;
        last_index = i;
    }
    std::sort(found.begin(), found.end(), [](Extremum const& l, Extremum const& r) { return l.x_star < r.x_star; });
    return found;
}

//---------------------------------------------------------------------------//

NelderMeadResult nelder_mead_minimize(std::function<double(std::span<double const>)> const& f,
                                      std::vector<double> start,
                                      NelderMeadOptions const& options)
{
    std::size_t const dim = start.size();
    if (dim == 0)
    {
        throw InvalidArgument("Nelder-Mead needs at least one parameter");
    }

    using Point = std::vector<double>;
    std::size_t evaluations = 0;
    auto eval = [&](Point const& p) {
        ++evaluations;
        return f(p);
    };

    Point best = std::move(start);
    double best_value = eval(best);

    for (std::size_t round = 0; round <= options.reinitializations; ++round)
    {
        std::vector<Point> simplex(dim + 1, best);
        std::vector<double> values(dim + 1, best_value);
        for (std::size_t i = 0; i < dim; ++i)
        {
            simplex[i + 1][i] += options.initial_step;
            values[i + 1] = eval(simplex[i + 1]);
        }

        std::vector<std::size_t> order(dim + 1);
        while (evaluations < options.max_evaluations)
        {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
            std::size_t const ib = order.front();
            std::size_t const iw = order.back();
            std::size_t const isw = order[dim - 1];

            double size = 0;
            for (auto const& p : simplex)
            {
                for (std::size_t j = 0; j < dim; ++j)
                {
                    size = std::max(size, std::abs(p[j] - simplex[ib][j]));
                }
            }
            if (values[iw] - values[ib] <= options.f_tol || size <= options.x_tol)
            {
                break;
            }

            Point centroid(dim, 0.0);
            for (std::size_t i : order)
            {
                if (i == iw)
                {
                    continue;
                }
                for (std::size_t j = 0; j < dim; ++j)
                {
                    centroid[j] += simplex[i][j] / static_cast<double>(dim);
                }
            }
            auto along = [&](double t) {
                Point p(dim);
                for (std::size_t j = 0; j < dim; ++j)
                {
                    p[j] = centroid[j] + t * (simplex[iw][j] - centroid[j]);
                }
                return p;
            };

            Point reflected = along(-1.0);
            double const fr = eval(reflected);
            if (fr < values[ib])
            {
                Point expanded = along(-2.0);
                double const fe = eval(expanded);
                if (fe < fr)
                {
                    simplex[iw] = std::move(expanded);
                    values[iw] = fe;
                }
                else
                {
                    simplex[iw] = std::move(reflected);
                    values[iw] = fr;
                }
                continue;
            }
            if (fr < values[isw])
            {
                simplex[iw] = std::move(reflected);
                values[iw] = fr;
                continue;
            }

            bool const outside = fr < values[iw];
            Point contracted = along(outside ? -0.5 : 0.5);
            double const fc = eval(contracted);
            if (outside ? fc <= fr : fc < values[iw])
            {
                simplex[iw] = std::move(contracted);
                values[iw] = fc;
                continue;
            }

            for (std::size_t i = 0; i < simplex.size(); ++i)
            {
                if (i == ib)
                {
                    continue;
                }
                for (std::size_t j = 0; j < dim; ++j)
                {
                    simplex[i][j] = simplex[ib][j] + 0.5 * (simplex[i][j] - simplex[ib][j]);
                }
                values[i] = eval(simplex[i]);
            }
        }

        auto const it = std::min_element(values.begin(), values.end());
        bool const improved = *it < best_value;
        if (improved)
        {
            best_value = *it;
            best = simplex[static_cast<std::size_t>(it - values.begin())];
        }
        if (!improved || evaluations >= options.max_evaluations)
        {
            break;
        }
    }
    return {best, best_value, evaluations};
}

//---------------------------------------------------------------------------//

ScalarFunction correlation_curve(CorrelationModel const& model, Direction const& a, Direction const& b)
{
    if (model.backend == Backend::ClosedForm && !model.closed_form_available())
    {
        throw ClosedFormUnavailable("no closed form for this configuration; use the oracle backend");
    }
    return [model, a, b](double x) { return Correlator(model, x)(a, b); };
}

ScalarFunction inequality_curve(Inequality which, CorrelationModel const& model, std::vector<Direction> directions)
{
    if (directions.size() != direction_count(which))
    {
        throw InvalidArgument(to_string(which) + " needs " + std::to_string(direction_count(which)) + " directions");
    }
    if (which == Inequality::BellMermin && model.spin != Spin::One)
    {
        throw InvalidArgument("the Bell-Mermin inequality applies to spin-1 correlations only");
    }
    if (model.backend == Backend::ClosedForm && !model.closed_form_available())
    {
        throw ClosedFormUnavailable("no closed form for this configuration; use the oracle backend");
    }
    return [which, model, dirs = std::move(directions)](double x) {
        return evaluate_inequality(which, Correlator(model, x), dirs).value;
    };
}

namespace
{
std::vector<double> to_angles(std::span<Direction const> dirs)
{
    std::vector<double> angles;
    angles.reserve(2 * dirs.size());
    for (auto const& d : dirs)
    {
        Vec3 const& v = d.vec();
        angles.push_back(std::acos(std::clamp(v.z(), -1.0, 1.0)));
        angles.push_back(std::atan2(v.y(), v.x()));
    }
    return angles;
}

std::vector<Direction> from_angles(std::span<double const> angles)
{
    std::vector<Direction> dirs;
    dirs.reserve(angles.size() / 2);
    for (std::size_t i = 0; i + 1 < angles.size(); i += 2)
    {
        dirs.push_back(Direction::from_angles(angles[i], angles[i + 1]));
    }
    return dirs;
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart)
{
    return seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(restart) + 1);
}
} // namespace

DirectionOptimum optimize_directions(Inequality which,
                                     CorrelationModel const& model,
                                     double x,
                                     std::size_t restarts,
                                     std::uint64_t seed,
                                     std::optional<std::vector<Direction>> const& initial)
{
    if (restarts < 1)
    {
        throw InvalidArgument("restarts must be at least 1");
    }
    if (which == Inequality::BellMermin && model.spin != Spin::One)
    {
        throw InvalidArgument("the Bell-Mermin inequality applies to spin-1 correlations only");
    }
    std::size_t const count = direction_count(which);
    if (initial && initial->size() != count)
    {
        throw InvalidArgument("initial direction set has the wrong size");
    }

    Correlator const corr(model, x);
    auto objective = [&](std::span<double const> angles) {
        return -evaluate_inequality(which, corr, from_angles(angles)).value;
    };

    DirectionOptimum best;
    bool have_best = false;
    for (std::size_t r = 0; r < restarts; ++r)
    {
        std::vector<double> start;
        if (r == 0 && initial)
        {
            start = to_angles(*initial);
        }
        else
        {
            Rng rng(restart_seed(seed, r));
            for (std::size_t i = 0; i < count; ++i)
            {
                start.push_back(std::acos(rng.uniform(-1, 1)));
                start.push_back(rng.uniform(-std::numbers::pi, std::numbers::pi));
            }
        }
        auto const result = nelder_mead_minimize(objective, std::move(start));
        double const value = -result.value;
        if (!have_best || value > best.value)
        {
            best = {from_angles(result.x), value};
            have_best = true;
        }
    }
    return best;
}

JointOptimum optimize_joint(Inequality which,
                            CorrelationModel const& model,
                            double x_min,
                            double x_max,
                            std::size_t restarts,
                            std::uint64_t seed,
                            std::optional<std::vector<Direction>> const& fixed_directions,
                            ExtremaOptions const& scan)
{
    check_range(x_min, x_max);
    if (restarts < 1)
    {
        throw InvalidArgument("restarts must be at least 1");
    }

    auto best_over_x = [&](std::vector<Direction> const& dirs) {
        auto const f = inequality_curve(which, model, dirs);
        std::optional<SweepPoint> best;
        for (auto const& e : find_local_extrema(f, x_min, x_max, scan))
        {
            if (e.kind == ExtremumKind::Max && (!best || e.value > best->value))
            {
                best = SweepPoint{e.x_star, e.value};
            }
        }
        if (!best)
        {
            double const lo = f(x_min);
            double const hi = f(x_max);
            best = hi > lo ? SweepPoint{x_max, hi} : SweepPoint{x_min, lo};
        }
        return *best;
    };

    std::vector<Direction> dirs = fixed_directions
                                      ? *fixed_directions
                                      : optimize_directions(which, model, 0.5 * (x_min + x_max), restarts, seed).directions;
    SweepPoint current = best_over_x(dirs);
    if (fixed_directions)
    {
        return {current.x, dirs, current.value};
    }

    constexpr int max_rounds = 20;
    for (int round = 1; round <= max_rounds; ++round)
    {
        auto const opt = optimize_directions(which, model, current.x, restarts, seed + static_cast<std::uint64_t>(round), dirs);
        if (opt.value - current.value < 1e-9)
        {
            break;
        }
        dirs = opt.directions;
        SweepPoint const moved = best_over_x(dirs);
        current = moved.value >= opt.value ? moved : SweepPoint{current.x, opt.value};
    }
    return {current.x, dirs, current.value};
}

} // namespace relcorr
