#include "relcorr/correlation.hpp"

#include <cmath>
#include <sstream>

#include "relcorr/random.hpp"

namespace relcorr
{

std::string to_string(Backend b)
{
    return b == Backend::ClosedForm ? "closed" : "oracle";
}

std::string to_string(MomentumFamily f)
{
    return f == MomentumFamily::Eq13 ? "eq13" : "cm";
}

//---------------------------------------------------------------------------//

namespace
{
bool same_momentum(Momentum const& u, Momentum const& v)
{
    double const scale = std::max(u.energy(), v.energy());
    return (u.four().as_column() - v.four().as_column()).cwiseAbs().maxCoeff() <= 1e-12 * scale
           && std::abs(u.mass() - v.mass()) <= 1e-12 * scale;
}

void check_observable(Observable const& obs, Momentum const& expected, int dim, char const* who)
{
    if (obs.matrix.rows() != dim || obs.matrix.cols() != dim)
    {
        throw InvalidArgument(std::string(who) + " observable dimension does not match the state");
    }
    if (obs.momentum && !same_momentum(*obs.momentum, expected))
    {
        throw InvalidArgument(std::string(who) + " observable was built at a different momentum");
    }
}
} // namespace

double correlation_oracle(PairState const& state, Observable const& alice, Observable const& bob)
{
    int const dim = spin_dimension(state.spin);
    if (state.coeffs.rows() != dim || state.coeffs.cols() != dim)
    {
        throw InvalidArgument("pair-state coefficient matrix has the wrong dimension");
    }
    check_observable(alice, state.momenta.k, dim, "Alice's");
    check_observable(bob, state.momenta.p, dim, "Bob's");

    double const norm = state.squared_norm();
    if (!(norm > 0))
    {
        throw InvalidArgument("pair state has zero norm");
    }

    // sum psi*_{sl} A_{ss'} psi_{s'l'} B_{ll'} = tr(psi^dag A psi B^T)
    CMatrix const& psi = state.coeffs;
    std::complex<double> const numerator = (psi.adjoint() * alice.matrix * psi * bob.matrix.transpose()).trace();

    double const s = spin_value(state.spin);
    double const denominator = s * s * norm;
    if (std::abs(numerator.imag()) / denominator > 1e-12)
    {
        std::ostringstream msg;
        msg << "correlation numerator has imaginary part " << numerator.imag() / denominator;
        throw std::logic_error(msg.str());
    }
    return numerator.real() / denominator;
}

//---------------------------------------------------------------------------//

namespace
{
void check_equal_mass(Momentum const& k, Momentum const& p)
{
    if (std::abs(k.mass() - p.mass()) > 1e-12 * std::max(k.mass(), p.mass()))
    {
        throw InvalidArgument("closed forms require equal-mass momenta");
    }
}

void check_x(double x)
{
    static_cast<void>(XParam{x});
}
} // namespace

double corr_nw_half(Momentum const& k, Momentum const& p, Direction const& a, Direction const& b)
{
    check_equal_mass(k, p);
    double const m = k.mass();
    Vec3 const kv = k.spatial();
    Vec3 const pv = p.spatial();
    Vec3 const& av = a.vec();
    Vec3 const& bv = b.vec();

    Vec3 const bracket = av.cross(bv)
                         + (av.dot(kv) * bv.cross(pv) - bv.dot(pv) * av.cross(kv))
                               / ((k.energy() + m) * (p.energy() + m));
    return -av.dot(bv) + kv.cross(pv).dot(bracket) / (m * m + minkowski_dot(k.four(), p.four()));
}

double corr_cz_half(Momentum const& k, Momentum const& p, Direction const& a, Direction const& b)
{
    check_equal_mass(k, p);
    double const m = k.mass();
    Vec3 const kv = k.spatial();
    Vec3 const pv = p.spatial();
    Vec3 const& av = a.vec();
    Vec3 const& bv = b.vec();
    double const ak = av.dot(kv);
    double const bp = bv.dot(pv);

    double const prefactor = m * m / (std::sqrt(m * m + ak * ak) * std::sqrt(m * m + bp * bp));
    double const braces = -av.dot(bv) + ak * bp / (m * m)
                          - av.dot(kv + pv) * bv.dot(kv + pv) / (m * m + minkowski_dot(k.four(), p.four()));
    return prefactor * braces;
}

double corr_nw_one_cm(double x, Direction const& n, Direction const& a, Direction const& b)
{
    check_x(x);
    double const y = 1 + 2 * x;
    return 2 / (2 + y * y) * (-y * a.dot(b) + 2 * x * a.dot(n) * b.dot(n));
}

double corr_cz_one(Momentum const& k, Momentum const& p, Direction const& a, Direction const& b)
{
    check_equal_mass(k, p);
    double const m = k.mass();
    double const m2 = m * m;
    Vec3 const kv = k.spatial();
    Vec3 const pv = p.spatial();
    double const kp = minkowski_dot(k.four(), p.four());
    double const ak = a.dot(kv);
    double const bp = b.dot(pv);

    double const numerator = 2 * (-a.dot(b) * kp - a.dot(pv) * b.dot(kv));
    double const denominator = (2 + kp * kp / (m2 * m2)) * std::sqrt(m2 + ak * ak) * std::sqrt(m2 + bp * bp);
    return numerator / denominator;
}

double corr_cz_one_cm(double x, Direction const& n, Direction const& a, Direction const& b)
{
    check_x(x);
    double const y = 1 + 2 * x;
    double const an = a.dot(n);
    double const bn = b.dot(n);
    return 2 * (-a.dot(b) * y + x * an * bn)
           / ((2 + y * y) * std::sqrt(1 + an * an * x) * std::sqrt(1 + bn * bn * x));
}

//---------------------------------------------------------------------------//

bool CorrelationModel::closed_form_available() const
{
    return !(spin == Spin::One && op == SpinOperator::NewtonWigner && family != MomentumFamily::CentreOfMass);
}

MomentumPair CorrelationModel::momenta(double x) const
{
    return family == MomentumFamily::Eq13 ? momenta_from_x(x, mass) : cm_momenta(x, mass, n);
}

Correlator::Correlator(CorrelationModel const& model, double x)
    : model_(model), x_(x), momenta_(model.momenta(x))
{
    if (model_.backend == Backend::ClosedForm && !model_.closed_form_available())
    {
        throw ClosedFormUnavailable(
            "no closed form for spin-1 Newton-Wigner correlations outside the c.m. frame; "
            "use the oracle backend");
    }
    if (model_.backend == Backend::Oracle)
    {
        state_ = make_pair_state(model_.spin, momenta_.k, momenta_.p);
    }
}

double Correlator::operator()(Direction const& a, Direction const& b) const
{
    auto const& [k, p] = momenta_;
    if (state_)
    {
        return correlation_oracle(*state_,
                                  make_observable(model_.op, a, k, model_.spin),
                                  make_observable(model_.op, b, p, model_.spin));
    }

    bool const cm = model_.family == MomentumFamily::CentreOfMass;
    if (model_.spin == Spin::Half)
    {
        return model_.op == SpinOperator::NewtonWigner ? corr_nw_half(k, p, a, b) : corr_cz_half(k, p, a, b);
    }
    if (model_.op == SpinOperator::NewtonWigner)
    {
        return corr_nw_one_cm(x_, model_.n, a, b);
    }
    return cm ? corr_cz_one_cm(x_, model_.n, a, b) : corr_cz_one(k, p, a, b);
}

//---------------------------------------------------------------------------//

std::string EquivalenceCase::label() const
{
    std::ostringstream out;
    out << "spin-" << (spin == Spin::Half ? "1/2" : "1") << ' '
        << (op == SpinOperator::NewtonWigner ? "Newton-Wigner" : "Czachor") << ", "
        << (family == MomentumFamily::Eq13 ? "eq13" : "c.m.") << " momenta";
    return out.str();
}

std::vector<EquivalenceCase> all_equivalence_cases()
{
    std::vector<EquivalenceCase> cases;
    for (Spin s : {Spin::Half, Spin::One})
    {
        for (SpinOperator op : {SpinOperator::NewtonWigner, SpinOperator::Czachor})
        {
            for (MomentumFamily f : {MomentumFamily::Eq13, MomentumFamily::CentreOfMass})
            {
                cases.push_back({s, op, f});
            }
        }
    }
    return cases;
}

EquivalenceReport verify_equivalence(std::size_t sample_count,
                                     double x_min,
                                     double x_max,
                                     std::uint64_t seed,
                                     std::vector<EquivalenceCase> const& cases)
{
    if (sample_count < 1)
    {
        throw InvalidArgument("sample_count must be at least 1");
    }
    if (!(x_min >= 0) || !(x_max >= x_min) || !std::isfinite(x_max))
    {
        throw InvalidArgument("x range must satisfy 0 <= x_min <= x_max");
    }

    EquivalenceReport report;
    for (auto const& c : cases)
    {
        CaseDiscrepancy entry;
        entry.which = c;
        CorrelationModel probe{c.spin, c.op, Backend::ClosedForm, c.family};
        if (!probe.closed_form_available())
        {
            entry.closed_form_available = false;
            entry.note = "closed form unavailable; oracle-only";
        }
        report.cases.push_back(entry);
    }

    Rng rng(seed);
    for (std::size_t i = 0; i < sample_count; ++i)
    {
        double const x = rng.uniform(x_min, x_max);
        Direction const a = rng.direction();
        Direction const b = rng.direction();
        Direction const n = rng.direction();

        for (auto& entry : report.cases)
        {
            if (!entry.closed_form_available)
            {
                continue;
            }
            CorrelationModel model{entry.which.spin, entry.which.op, Backend::ClosedForm, entry.which.family, 1.0, n};
            double const closed = Correlator(model, x)(a, b);
            model.backend = Backend::Oracle;
            double const oracle = Correlator(model, x)(a, b);

            double const diff = std::abs(closed - oracle);
            ++entry.samples;
            entry.max_discrepancy = std::max(entry.max_discrepancy, diff);
            if (diff > report.max_discrepancy || report.worst.label.empty())
            {
                report.max_discrepancy = std::max(report.max_discrepancy, diff);
                report.worst = {entry.which.label(), x, a.vec(), b.vec(), n.vec(), closed, oracle};
            }
        }
    }
    report.passed = report.max_discrepancy < EquivalenceReport::kTolerance;
    return report;
}

} // namespace relcorr
