// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "relcorr/bell.hpp"
#include "relcorr/correlation.hpp"
#include "relcorr/observables.hpp"
#include "relcorr/scan.hpp"

#include "../cli_runner.hpp"
#include "../test_support.hpp"

using namespace relcorr;
using relcorr::testing::random_rotation;
using relcorr::testing::rotated;

namespace
{

struct Outcome
{
    bool pass{true};
    std::ostringstream detail;

    // Records a failed check; the first few are kept in the detail line.
    void require(bool ok, std::string const& what)
    {
        if (!ok)
        {
            if (pass)
            {
                detail << " failed: ";
            }
            else
            {
                detail << "; ";
            }
            detail << what;
            pass = false;
        }
    }
};

std::string num(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double const sqrt3 = std::sqrt(3.0);
double const sqrt7 = std::sqrt(7.0);

CorrelationModel half_eq13(SpinOperator op)
{
    return {Spin::Half, op, Backend::ClosedForm, MomentumFamily::Eq13};
}

CorrelationModel one_cm(SpinOperator op, Direction n = Direction(0, 0, 1))
{
    return {Spin::One, op, Backend::ClosedForm, MomentumFamily::CentreOfMass, 1.0, n};
}

std::vector<Extremum> maxima(std::vector<Extremum> const& all)
{
    std::vector<Extremum> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out), [](Extremum const& e) { return e.kind == ExtremumKind::Max; });
    return out;
}

// Fig. 1 correlation curve extremum check shared by criteria 2 and 3.
void check_single_max(Outcome& o, ScalarFunction const& f, double x_expected)
{
    auto const found = maxima(find_local_extrema(f, 0.0, 10.0));
    o.require(found.size() == 1, "expected one interior maximum, found " + std::to_string(found.size()));
    if (!found.empty())
    {
        o.detail << "x*=" << num(found[0].x_star) << " value=" << num(found[0].value);
        o.require(std::abs(found[0].x_star - x_expected) <= 1e-6, "x* off by " + num(found[0].x_star - x_expected));
        o.require(std::abs(found[0].value - 1) <= 1e-9, "value off by " + num(found[0].value - 1));
    }
}

Direction const z_axis(0, 0, 1);
Direction const fig1_b(sqrt3 / 2, 0, -0.5);
Direction const tilted(sqrt3 / 2, 0, 0.5);

//---------------------------------------------------------------------------//

void criterion1(Outcome& o)
{
    auto const report = verify_equivalence(1000, 0.0, 10.0, 42);
    std::size_t compared = 0;
    for (auto const& c : report.cases)
    {
        compared += c.closed_form_available ? 1 : 0;
    }
    o.detail << "max |closed - oracle| = " << num(report.max_discrepancy) << " over " << compared << " cases";
    o.require(compared == 7, "expected 7 closed-form cases");
    o.require(report.max_discrepancy < 1e-10, "discrepancy above 1e-10 (" + report.worst.label + ")");
}

void criterion2(Outcome& o)
{
    ScalarFunction const f = correlation_curve(half_eq13(SpinOperator::NewtonWigner), z_axis, fig1_b);
    static_cast<void>(sweep_x(f, 0.0, 10.0, 400, "nw"));
    check_single_max(o, f, 2.0);
    double const at0 = f(0.0);
    double const at_large = f(1e6);
    o.detail << " C(0)=" << num(at0) << " C(1e6)=" << num(at_large);
    o.require(std::abs(at0 - 0.5) <= 1e-3, "C(0) not 1/2");
    o.require(std::abs(at_large - 0.5) <= 1e-3, "C(1e6) - 1/2 = " + num(at_large - 0.5) + " exceeds 1e-3");
}

void criterion3(Outcome& o)
{
    ScalarFunction const f = correlation_curve(half_eq13(SpinOperator::Czachor), z_axis, fig1_b);
    static_cast<void>(sweep_x(f, 0.0, 10.0, 400, "cz"));
    check_single_max(o, f, 1.0);
    double const at2 = f(2.0);
    double const expected = 15 / (6 * sqrt7);
    o.detail << " C(2)=" << num(at2);
    o.require(std::abs(at2 - expected) <= 1e-9, "C(2) off by " + num(at2 - expected));
}

void criterion4(Outcome& o)
{
    CorrelationModel const model = half_eq13(SpinOperator::NewtonWigner);
    std::vector<Direction> const dirs{z_axis, z_axis, tilted, tilted};
    auto chsh_at = [&](double x) { return evaluate_inequality(Inequality::Chsh, Correlator(model, x), dirs); };

    double const v0 = chsh_at(0.0).value;
    double const v2 = chsh_at(2.0).value;
    o.detail << "CHSH(0)=" << num(v0) << " CHSH(2)=" << num(v2);
    o.require(std::abs(v0 - 2) <= 1e-12, "CHSH(0) not 2");
    o.require(!chsh_at(0.0).violated, "violation flagged at x = 0");
    o.require(std::abs(v2 - 2.5) <= 1e-9, "CHSH(2) not 2.5");

    double const x_expected = (5 + sqrt7) / 9;
    auto const found = maxima(find_local_extrema(inequality_curve(Inequality::Chsh, model, dirs), 0.0, 10.0));
    o.require(found.size() == 1, "expected one interior maximum");
    if (!found.empty())
    {
        o.detail << " x*=" << num(found[0].x_star) << " max=" << num(found[0].value);
        o.require(std::abs(found[0].x_star - x_expected) <= 1e-5, "x* off");
        o.require(std::abs(found[0].value - sqrt7) <= 1e-9, "max not sqrt7");
    }
    for (double dx = -0.3; dx <= 0.3 + 1e-12; dx += 0.01)
    {
        o.require(chsh_at(x_expected + dx).violated, "not violated at x* + " + num(dx));
    }
}

void criterion5(Outcome& o)
{
    // Caption directions normalized, n = z. Reference digits frozen from the numpy oracle.
    double const frozen_at0 = 0.966802512388651;
    double const frozen_max = 1.031748210171729;
    double const frozen_x = 0.21727960413237732;

    std::vector<Direction> const dirs{Direction::normalized_near_unit(Vec3(0.995004, 0, 0.0998334), 1e-6),
                                      Direction::normalized_near_unit(Vec3(-0.40899, 0.907061, 0.0998334), 1e-6),
                                      Direction::normalized_near_unit(Vec3(-0.581043, -0.807727, 0.0998334), 1e-6)};
    ScalarFunction const f = inequality_curve(Inequality::BellMermin, one_cm(SpinOperator::NewtonWigner), dirs);

    double const at0 = f(0.0);
    o.detail << "M(0)=" << num(at0);
    o.require(std::abs(at0 - frozen_at0) <= 1e-4, "M(0) off");
    o.require(at0 <= 1, "M(0) above 1");

    auto const sweep = sweep_x(f, 0.0, 1.0, 1001, "nw");
    bool const exceeds = std::any_of(sweep.points.begin(), sweep.points.end(), [](SweepPoint const& p) {
        return p.x > 0 && p.x < 1 && p.value > 1;
    });
    o.require(exceeds, "curve never exceeds 1 on (0, 1)");

    auto const found = maxima(find_local_extrema(f, 0.0, 1.0));
    o.require(!found.empty(), "no interior maximum on (0, 1)");
    if (!found.empty())
    {
        auto const best = *std::max_element(
            found.begin(), found.end(), [](Extremum const& l, Extremum const& r) { return l.value < r.value; });
        o.detail << " x*=" << num(best.x_star) << " max=" << num(best.value);
        o.require(std::abs(best.value - frozen_max) <= 1e-3, "max off");
        o.require(std::abs(best.x_star - frozen_x) <= 5e-3, "x* off");
        o.require(std::abs(best.x_star - 0.217) <= 5e-3, "x* not near 0.217");
    }
}

void criterion6(Outcome& o)
{
    Rng rng(606);
    double worst_half = 0;
    for (int i = 0; i < 100; ++i)
    {
        double const x = rng.uniform(0, 10);
        Direction const n = rng.direction();
        Direction const a = rng.direction();
        Direction const b = rng.direction();
        for (Backend backend : {Backend::ClosedForm, Backend::Oracle})
        {
            CorrelationModel const m{Spin::Half, SpinOperator::NewtonWigner, backend, MomentumFamily::CentreOfMass, 1.0, n};
            worst_half = std::max(worst_half, std::abs(Correlator(m, x)(a, b) + a.dot(b)));
        }
    }
    double worst_one = 0;
    for (int i = 0; i < 100; ++i)
    {
        Direction const n = rng.direction();
        Direction const a = rng.direction();
        Direction const b = rng.direction();
        for (SpinOperator op : {SpinOperator::NewtonWigner, SpinOperator::Czachor})
        {
            for (MomentumFamily f : {MomentumFamily::Eq13, MomentumFamily::CentreOfMass})
            {
                for (Backend backend : {Backend::ClosedForm, Backend::Oracle})
                {
                    CorrelationModel const m{Spin::One, op, backend, f, 1.0, n};
                    if (backend == Backend::ClosedForm && !m.closed_form_available())
                    {
                        continue;
                    }
                    worst_one = std::max(worst_one, std::abs(Correlator(m, 0.0)(a, b) + 2.0 / 3.0 * a.dot(b)));
                }
            }
        }
    }
    o.detail << "spin-1/2 c.m. dev " << num(worst_half) << ", spin-1 x=0 dev " << num(worst_one);
    o.require(worst_half <= 1e-12, "spin-1/2 c.m. deviates from -a.b");
    o.require(worst_one <= 1e-12, "spin-1 x = 0 deviates from -(2/3) a.b");
}

void criterion7(Outcome& o)
{
    Rng rng(707);

    double commutator = 0;
    for (int i = 0; i < 100; ++i)
    {
        Direction const a = rng.direction();
        Direction const b = Direction::normalized(a.vec().cross(rng.direction().vec()));
        Direction const c = Direction::normalized(a.vec().cross(b.vec()));
        for (Spin s : {Spin::Half, Spin::One})
        {
            CMatrix const sa = nw_spin_matrix(a, s).matrix;
            CMatrix const sb = nw_spin_matrix(b, s).matrix;
            CMatrix const sc = nw_spin_matrix(c, s).matrix;
            std::complex<double> const i_unit(0, 1);
            commutator = std::max(commutator, (sa * sb - sb * sa - i_unit * sc).cwiseAbs().maxCoeff());
            commutator = std::max(commutator, (sb * sc - sc * sb - i_unit * sa).cwiseAbs().maxCoeff());
            commutator = std::max(commutator, (sc * sa - sa * sc - i_unit * sb).cwiseAbs().maxCoeff());
        }
    }
    o.require(commutator <= 1e-14, "su(2) commutator residual " + num(commutator));

    double spectrum = 0;
    for (Spin s : {Spin::Half, Spin::One})
    {
        double const sv = spin_value(s);
        for (int i = 0; i < 500; ++i)
        {
            Direction const a = rng.direction();
            double const speed_scale = std::pow(10.0, rng.uniform(-3, 3));
            Momentum const k = Momentum::from_spatial(speed_scale * rng.direction().vec(), 1.0);
            auto const ev = hermitian_eigenvalues(czachor_matrix(a, k, s).matrix);
            for (std::size_t j = 0; j < ev.size(); ++j)
            {
                spectrum = std::max(spectrum, std::abs(ev[j] - (-sv + static_cast<double>(j))));
            }
        }
    }
    o.require(spectrum <= 1e-10, "Czachor spectrum residual " + num(spectrum));

    double chsh_max = 0;
    for (int i = 0; i < 500; ++i)
    {
        SpinOperator const op = i % 2 == 0 ? SpinOperator::NewtonWigner : SpinOperator::Czachor;
        MomentumFamily const f = i % 4 < 2 ? MomentumFamily::Eq13 : MomentumFamily::CentreOfMass;
        CorrelationModel const m{Spin::Half, op, Backend::ClosedForm, f, 1.0, rng.direction()};
        Correlator const corr(m, rng.uniform(0, 10));
        chsh_max = std::max(chsh_max, chsh(corr, rng.direction(), rng.direction(), rng.direction(), rng.direction()).value);
    }
    o.require(chsh_max <= 2 * std::numbers::sqrt2 + 1e-9, "CHSH above 2 sqrt2: " + num(chsh_max));

    double mermin_max = -1e300;
    for (int i = 0; i < 500; ++i)
    {
        SpinOperator const op = i % 2 == 0 ? SpinOperator::NewtonWigner : SpinOperator::Czachor;
        Correlator const corr(one_cm(op, rng.direction()), 0.0);
        mermin_max = std::max(mermin_max, bell_mermin(corr, rng.direction(), rng.direction(), rng.direction()).value);
    }
    o.require(mermin_max <= 1 + 1e-12, "Bell-Mermin above 1 at x = 0: " + num(mermin_max));

    double rotation = 0, mass_scale = 0, exchange = 0;
    for (int i = 0; i < 100; ++i)
    {
        double const x = rng.uniform(0, 10);
        Direction const n = rng.direction();
        Direction const a = rng.direction();
        Direction const b = rng.direction();
        Eigen::Matrix3d const rot = random_rotation(rng);
        double const mass = std::pow(10.0, rng.uniform(-2, 2));
        for (Spin s : {Spin::Half, Spin::One})
        {
            for (SpinOperator op : {SpinOperator::NewtonWigner, SpinOperator::Czachor})
            {
                for (Backend backend : {Backend::ClosedForm, Backend::Oracle})
                {
                    CorrelationModel m{s, op, backend, MomentumFamily::CentreOfMass, 1.0, n};
                    double const base = Correlator(m, x)(a, b);

                    CorrelationModel r = m;
                    r.n = rotated(rot, n);
                    rotation = std::max(rotation, std::abs(Correlator(r, x)(rotated(rot, a), rotated(rot, b)) - base));

                    CorrelationModel heavy = m;
                    heavy.mass = mass;
                    mass_scale = std::max(mass_scale, std::abs(Correlator(heavy, x)(a, b) - base));

                    // swapping the particles maps n to -n and exchanges the observers
                    CorrelationModel swapped = m;
                    swapped.n = Direction::normalized(-n.vec());
                    exchange = std::max(exchange, std::abs(Correlator(swapped, x)(b, a) - base));
                }
            }
        }
    }
    o.require(rotation < 1e-10, "rotation residual " + num(rotation));
    o.require(mass_scale < 1e-10, "mass-scale residual " + num(mass_scale));
    o.require(exchange < 1e-10, "exchange residual " + num(exchange));

    if (o.pass)
    {
        o.detail << "commutator " << num(commutator) << ", spectrum " << num(spectrum) << ", CHSH max " << num(chsh_max)
                 << ", Mermin(0) max " << num(mermin_max) << ", rotation " << num(rotation) << ", mass "
                 << num(mass_scale) << ", exchange " << num(exchange);
    }
}

void criterion8(Outcome& o)
{
    std::string const chsh_dirs = "--a 0,0,1 --b 0,0,1 --c 0.8660254037844386,0,0.5 --d 0.8660254037844386,0,0.5";
    std::vector<std::string> const manifests{
        "figure 1 --format json",
        "figure 2",
        "figure 3 --format json",
        "figure 4 --format json",
        "figure 5",
        "correlate --spin one --operator cz --momenta eq13 --x 3 --a 0,0,1 --b 1,0,0",
        "sweep --quantity chsh " + chsh_dirs + " --steps 200 --format json",
        "extrema --operator cz --a 0,0,1 --b 0.8660254037844386,0,-0.5",
        "chsh --x 0.85 " + chsh_dirs,
        "mermin --x 0.2 --a 1,0,0 --b 0,1,0 --c 0,0,1 --format json",
        "optimize --inequality chsh --spin half --momenta eq13 --x 1 --restarts 4 --seed 5 --format json",
        "optimize --inequality mermin --spin one --momenta cm --x-max 2 --restarts 2 --seed 9",
        "verify --samples 200 --seed 42 --format json",
    };
    std::size_t identical = 0;
    for (auto const& args : manifests)
    {
        auto const first = relcorr::testing::run_cli(args);
        auto const second = relcorr::testing::run_cli(args);
        bool const same = first.exit_code == 0 && second.exit_code == 0 && !first.out.empty() && first.out == second.out;
        identical += same ? 1 : 0;
        o.require(same, "'" + args + "' not reproducible");
    }
    o.detail << identical << "/" << manifests.size() << " manifests byte-identical on rerun";
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        char const* title;
        std::function<void(Outcome&)> run;
    };
    std::vector<Criterion> const criteria{
        {1, "oracle / closed-form equivalence", criterion1},
        {2, "Fig. 1 Newton-Wigner maximum and limits", criterion2},
        {3, "Fig. 1 Czachor maximum", criterion3},
        {4, "Fig. 2 Newton-Wigner CHSH", criterion4},
        {5, "Fig. 5 Newton-Wigner Bell-Mermin", criterion5},
        {6, "nonrelativistic reductions", criterion6},
        {7, "property suites", criterion7},
        {8, "CLI determinism", criterion8},
    };

    int failures = 0;
    for (auto const& c : criteria)
    {
        Outcome o;
        try
        {
            c.run(o);
        }
        catch (std::exception const& e)
        {
            o.require(false, std::string("exception: ") + e.what());
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s  %d  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
