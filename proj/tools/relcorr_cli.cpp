// relcorr: command-line front end for relativistic EPR correlations.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 closed form unavailable for the requested configuration.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relcorr/bell.hpp"
#include "relcorr/correlation.hpp"
#include "relcorr/scan.hpp"

using namespace relcorr;
using Json = nlohmann::ordered_json;

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNoClosedForm = 3;

constexpr double kDirectionTolerance = 1e-6;

//---------------------------------------------------------------------------//
// Formatting (locale-independent)
//---------------------------------------------------------------------------//

std::string fixed(double v, int decimals)
{
    char buf[64];
    auto const [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    if (ec != std::errc{})
    {
        throw std::runtime_error("number formatting failed");
    }
    return {buf, end};
}

std::string csv_value(std::optional<double> v)
{
    return v ? fixed(*v, 12) : std::string{};
}

Json vec_json(Vec3 const& v)
{
    return Json::array({v.x(), v.y(), v.z()});
}

//---------------------------------------------------------------------------//
// Parsing
//---------------------------------------------------------------------------//

Direction parse_direction(std::string const& text, char const* name)
{
    Vec3 v;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i)
    {
        std::size_t const comma = text.find(',', start);
        bool const last = i == 2;
        if (last != (comma == std::string::npos))
        {
            throw InvalidArgument(std::string("--") + name + " expects three comma-separated components");
        }
        std::string const part = text.substr(start, last ? std::string::npos : comma - start);
        double value = 0;
        auto const [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size())
        {
            throw InvalidArgument(std::string("--") + name + ": cannot parse component '" + part + "'");
        }
        v(i) = value;
        start = comma + 1;
    }
    return Direction::normalized_near_unit(v, kDirectionTolerance);
}

struct ModelFlags
{
    std::string spin{"half"};
    std::string op{"nw"};
    std::string backend{"closed"};
    std::string momenta{"eq13"};
    std::string n{"0,0,1"};
    double mass{1.0};

    void attach(CLI::App* cmd, bool with_operator = true)
    {
        cmd->add_option("--spin", spin, "Particle spin")->check(CLI::IsMember({"half", "one"}))->capture_default_str();
        if (with_operator)
        {
            cmd->add_option("--operator", op, "Spin operator")->check(CLI::IsMember({"nw", "cz"}))->capture_default_str();
        }
        cmd->add_option("--backend", backend, "Closed form or matrix oracle")
            ->check(CLI::IsMember({"closed", "oracle"}))
            ->capture_default_str();
        cmd->add_option("--momenta", momenta, "Momentum family")->check(CLI::IsMember({"eq13", "cm"}))->capture_default_str();
        cmd->add_option("--n", n, "c.m. momentum axis x,y,z")->capture_default_str();
        cmd->add_option("--mass", mass, "Particle mass")->check(CLI::PositiveNumber)->capture_default_str();
    }

    CorrelationModel model(std::string const& op_name) const
    {
        CorrelationModel m;
        m.spin = spin == "half" ? Spin::Half : Spin::One;
        m.op = op_name == "nw" ? SpinOperator::NewtonWigner : SpinOperator::Czachor;
        m.backend = backend == "closed" ? Backend::ClosedForm : Backend::Oracle;
        m.family = momenta == "eq13" ? MomentumFamily::Eq13 : MomentumFamily::CentreOfMass;
        m.mass = mass;
        m.n = parse_direction(n, "n");
        return m;
    }

    Json manifest() const
    {
        return Json{{"spin", spin}, {"backend", backend}, {"momenta", momenta}, {"n", n}, {"mass", mass}};
    }
};

struct OutputFlags
{
    std::string format{"csv"};
    std::string out;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        cmd->add_option("--out", out, "Output file (default: stdout)");
    }

    bool json() const { return format == "json"; }

    void write(std::string const& text) const
    {
        if (out.empty())
        {
            std::cout << text;
            return;
        }
        std::ofstream file(out, std::ios::binary);
        if (!file)
        {
            throw InvalidArgument("cannot open output file " + out);
        }
        file << text;
    }
};

std::vector<std::string> operators_for(std::string const& choice)
{
    if (choice == "both")
    {
        return {"nw", "cz"};
    }
    return {choice};
}

Json make_manifest(std::string const& command, Json parameters)
{
    return Json{{"command", command}, {"parameters", std::move(parameters)}, {"tool_version", RELCORR_VERSION}};
}

std::string dump(Json const& manifest, Json results)
{
    Json doc{{"manifest", manifest}, {"results", std::move(results)}};
    return doc.dump(2) + "\n";
}

//---------------------------------------------------------------------------//
// Quantity selection shared by sweep / extrema
//---------------------------------------------------------------------------//

struct QuantityFlags
{
    std::string quantity{"correlation"};
    std::string a, b, c, d;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--quantity", quantity, "Quantity to evaluate")
            ->check(CLI::IsMember({"correlation", "chsh", "mermin"}))
            ->capture_default_str();
        cmd->add_option("--a", a, "Direction a as x,y,z")->required();
        cmd->add_option("--b", b, "Direction b as x,y,z")->required();
        cmd->add_option("--c", c, "Direction c as x,y,z (chsh, mermin)");
        cmd->add_option("--d", d, "Direction d as x,y,z (chsh)");
    }

    std::vector<Direction> directions() const
    {
        std::vector<Direction> dirs{parse_direction(a, "a"), parse_direction(b, "b")};
        if (quantity != "correlation")
        {
            if (c.empty())
            {
                throw InvalidArgument("--c is required for " + quantity);
            }
            dirs.push_back(parse_direction(c, "c"));
        }
        if (quantity == "chsh")
        {
            if (d.empty())
            {
                throw InvalidArgument("--d is required for chsh");
            }
            dirs.push_back(parse_direction(d, "d"));
        }
        return dirs;
    }

    ScalarFunction curve(CorrelationModel const& model) const
    {
        auto dirs = directions();
        if (quantity == "correlation")
        {
            return correlation_curve(model, dirs[0], dirs[1]);
        }
        return inequality_curve(quantity == "chsh" ? Inequality::Chsh : Inequality::BellMermin, model, std::move(dirs));
    }

    Json manifest() const
    {
        Json j{{"quantity", quantity}, {"a", a}, {"b", b}};
        if (!c.empty())
        {
            j["c"] = c;
        }
        if (!d.empty())
        {
            j["d"] = d;
        }
        return j;
    }
};

//---------------------------------------------------------------------------//
// Sweep table shared by sweep / figure
//---------------------------------------------------------------------------//

struct SweepTable
{
    std::vector<double> xs;
    std::optional<std::vector<double>> nw;
    std::optional<std::vector<double>> cz;
};

SweepTable run_sweep(ScalarFunction const* nw, ScalarFunction const* cz, double x_min, double x_max, std::size_t steps)
{
    SweepTable table;
    if (nw)
    {
        auto const r = sweep_x(*nw, x_min, x_max, steps, "nw");
        table.nw.emplace();
        for (auto const& pt : r.points)
        {
            table.xs.push_back(pt.x);
            table.nw->push_back(pt.value);
        }
    }
    if (cz)
    {
        auto const r = sweep_x(*cz, x_min, x_max, steps, "cz");
        table.cz.emplace();
        table.xs.clear();
        for (auto const& pt : r.points)
        {
            table.xs.push_back(pt.x);
            table.cz->push_back(pt.value);
        }
    }
    return table;
}

std::string sweep_csv(SweepTable const& t)
{
    std::ostringstream out;
    out << "x,value_nw,value_cz\n";
    for (std::size_t i = 0; i < t.xs.size(); ++i)
    {
        out << fixed(t.xs[i], 10) << ',' << csv_value(t.nw ? std::optional((*t.nw)[i]) : std::nullopt) << ','
            << csv_value(t.cz ? std::optional((*t.cz)[i]) : std::nullopt) << '\n';
    }
    return out.str();
}

Json sweep_json(SweepTable const& t)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.xs.size(); ++i)
    {
        Json row{{"x", t.xs[i]}};
        row["value_nw"] = t.nw ? Json((*t.nw)[i]) : Json(nullptr);
        row["value_cz"] = t.cz ? Json((*t.cz)[i]) : Json(nullptr);
        rows.push_back(std::move(row));
    }
    return rows;
}

//---------------------------------------------------------------------------//
// Figure configurations
//---------------------------------------------------------------------------//

struct FigureConfig
{
    std::string quantity;
    Spin spin;
    MomentumFamily family;
    std::vector<Vec3> directions;
    std::string note;
};

FigureConfig figure_config(int figure)
{
    double const h = std::sqrt(3.0) / 2;
    Vec3 const z(0, 0, 1);
    switch (figure)
    {
    case 1:
        return {"correlation", Spin::Half, MomentumFamily::Eq13, {z, Vec3(h, 0, -0.5)}, "spin-1/2 correlation"};
    case 2:
        return {"chsh", Spin::Half, MomentumFamily::Eq13, {z, z, Vec3(h, 0, 0.5), Vec3(h, 0, 0.5)}, "spin-1/2 CHSH"};
    case 3:
        return {"chsh", Spin::Half, MomentumFamily::Eq13, {z, z, Vec3(h, 0, -0.5), Vec3(h, 0, 0.5)}, "spin-1/2 CHSH"};
    case 4:
        return {"correlation",
                Spin::One,
                MomentumFamily::CentreOfMass,
                {Vec3(h, 0, 0.5), Vec3(-h, 0, 0.5)},
                "spin-1 c.m. correlation; a.b = -1/2 and a.n = b.n = 1/2 realized with n = z"};
    case 5:
        return {"mermin",
                Spin::One,
                MomentumFamily::CentreOfMass,
                {Vec3(0.995004, 0, 0.0998334), Vec3(-0.40899, 0.907061, 0.0998334), Vec3(-0.581043, -0.807727, 0.0998334)},
                "spin-1 c.m. Bell-Mermin; caption directions normalized"};
    default:
        throw InvalidArgument("figure number must be 1..5");
    }
}

} // namespace

//---------------------------------------------------------------------------//

int main(int argc, char** argv)
{
    CLI::App app{"Relativistic EPR spin correlations, CHSH / Bell-Mermin quantities and their extrema"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(RELCORR_VERSION));

    // correlate
    ModelFlags corr_model;
    OutputFlags corr_out;
    double corr_x = 0;
    std::string corr_a, corr_b;
    auto* correlate = app.add_subcommand("correlate", "Print one correlation value");
    corr_model.attach(correlate);
    correlate->add_option("--x", corr_x, "Kinematic parameter x >= 0")->required();
    correlate->add_option("--a", corr_a, "Alice's direction x,y,z")->required();
    correlate->add_option("--b", corr_b, "Bob's direction x,y,z")->required();
    corr_out.attach(correlate);

    // sweep
    ModelFlags sweep_model;
    QuantityFlags sweep_quantity;
    OutputFlags sweep_out;
    std::string sweep_ops{"both"};
    double sweep_lo = 0, sweep_hi = 10;
    std::size_t sweep_steps = 400;
    std::uint64_t sweep_seed = 0;
    auto* sweep = app.add_subcommand("sweep", "Evaluate a quantity on a uniform x grid");
    sweep_model.attach(sweep, false);
    sweep->add_option("--operator", sweep_ops, "Spin operator(s)")->check(CLI::IsMember({"nw", "cz", "both"}))->capture_default_str();
    sweep_quantity.attach(sweep);
    sweep->add_option("--x-min", sweep_lo)->capture_default_str();
    sweep->add_option("--x-max", sweep_hi)->capture_default_str();
    sweep->add_option("--steps", sweep_steps, "Number of grid points")->capture_default_str();
    sweep->add_option("--seed", sweep_seed)->capture_default_str();
    sweep_out.attach(sweep);

    // extrema
    ModelFlags ext_model;
    QuantityFlags ext_quantity;
    OutputFlags ext_out;
    double ext_lo = 0, ext_hi = 10;
    ExtremaOptions ext_opts;
    std::uint64_t ext_seed = 0;
    auto* extrema = app.add_subcommand("extrema", "Locate interior local extrema in x");
    ext_model.attach(extrema);
    ext_quantity.attach(extrema);
    extrema->add_option("--x-min", ext_lo)->capture_default_str();
    extrema->add_option("--x-max", ext_hi)->capture_default_str();
    extrema->add_option("--coarse-steps", ext_opts.coarse_steps)->capture_default_str();
    extrema->add_option("--x-tol", ext_opts.x_tol)->capture_default_str();
    extrema->add_option("--seed", ext_seed)->capture_default_str();
    ext_out.attach(extrema);

    // chsh / mermin
    ModelFlags chsh_model, mermin_model;
    OutputFlags chsh_out, mermin_out;
    std::string chsh_ops{"both"}, mermin_ops{"both"};
    double chsh_x = 0, mermin_x = 0;
    std::uint64_t chsh_seed = 0, mermin_seed = 0;
    std::string ca, cb, cc, cd, ma, mb, mc;
    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH value at one x");
    chsh_model.attach(chsh_cmd, false);
    chsh_cmd->add_option("--operator", chsh_ops)->check(CLI::IsMember({"nw", "cz", "both"}))->capture_default_str();
    chsh_cmd->add_option("--x", chsh_x)->required();
    chsh_cmd->add_option("--a", ca)->required();
    chsh_cmd->add_option("--b", cb)->required();
    chsh_cmd->add_option("--c", cc)->required();
    chsh_cmd->add_option("--d", cd)->required();
    chsh_cmd->add_option("--seed", chsh_seed)->capture_default_str();
    chsh_out.attach(chsh_cmd);

    auto* mermin_cmd = app.add_subcommand("mermin", "Bell-Mermin value at one x (spin 1)");
    mermin_model.attach(mermin_cmd, false);
    mermin_model.spin = "one";
    mermin_model.momenta = "cm";
    mermin_cmd->add_option("--operator", mermin_ops)->check(CLI::IsMember({"nw", "cz", "both"}))->capture_default_str();
    mermin_cmd->add_option("--x", mermin_x)->required();
    mermin_cmd->add_option("--a", ma)->required();
    mermin_cmd->add_option("--b", mb)->required();
    mermin_cmd->add_option("--c", mc)->required();
    mermin_cmd->add_option("--seed", mermin_seed)->capture_default_str();
    mermin_out.attach(mermin_cmd);

    // optimize
    ModelFlags opt_model;
    OutputFlags opt_out;
    std::string opt_ineq{"chsh"};
    std::optional<double> opt_x;
    double opt_lo = 0, opt_hi = 10;
    std::size_t opt_restarts = 8;
    std::uint64_t opt_seed = 1;
    std::string oa, ob, oc, od;
    bool opt_fixed = false;
    auto* optimize = app.add_subcommand("optimize", "Maximize an inequality over directions (and x)");
    opt_model.attach(optimize);
    optimize->add_option("--inequality", opt_ineq)->check(CLI::IsMember({"chsh", "mermin"}))->capture_default_str();
    optimize->add_option("--x", opt_x, "Fixed x; omit for a joint search over [x-min, x-max]");
    optimize->add_option("--x-min", opt_lo)->capture_default_str();
    optimize->add_option("--x-max", opt_hi)->capture_default_str();
    optimize->add_option("--restarts", opt_restarts)->capture_default_str();
    optimize->add_option("--seed", opt_seed)->capture_default_str();
    optimize->add_option("--a", oa, "Starting direction a");
    optimize->add_option("--b", ob, "Starting direction b");
    optimize->add_option("--c", oc, "Starting direction c");
    optimize->add_option("--d", od, "Starting direction d (chsh)");
    optimize->add_flag("--fixed-directions", opt_fixed, "Hold the given directions fixed and search x only");
    opt_out.attach(optimize);

    // verify
    OutputFlags ver_out;
    std::size_t ver_samples = 1000;
    std::uint64_t ver_seed = 42;
    double ver_lo = 0, ver_hi = 10;
    auto* verify = app.add_subcommand("verify", "Cross-check every closed form against the matrix oracle");
    verify->add_option("--samples", ver_samples)->capture_default_str();
    verify->add_option("--seed", ver_seed)->capture_default_str();
    verify->add_option("--x-min", ver_lo)->capture_default_str();
    verify->add_option("--x-max", ver_hi)->capture_default_str();
    ver_out.attach(verify);

    // figure
    OutputFlags fig_out;
    int fig_number = 0;
    double fig_hi = 10;
    std::size_t fig_steps = 400;
    std::uint64_t fig_seed = 0;
    std::string fig_backend{"closed"};
    auto* figure = app.add_subcommand("figure", "Dataset for one of the five reference figures");
    figure->add_option("number", fig_number, "Figure number 1..5")->required();
    figure->add_option("--x-max", fig_hi)->capture_default_str();
    figure->add_option("--steps", fig_steps)->capture_default_str();
    figure->add_option("--backend", fig_backend)->check(CLI::IsMember({"closed", "oracle"}))->capture_default_str();
    figure->add_option("--seed", fig_seed)->capture_default_str();
    fig_out.attach(figure);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try
    {
        if (*correlate)
        {
            CorrelationModel const model = corr_model.model(corr_model.op);
            double const value = Correlator(model, corr_x)(parse_direction(corr_a, "a"), parse_direction(corr_b, "b"));
            if (corr_out.json())
            {
                Json params = corr_model.manifest();
                params["operator"] = corr_model.op;
                params["x"] = corr_x;
                params["a"] = corr_a;
                params["b"] = corr_b;
                corr_out.write(dump(make_manifest("correlate", params), Json{{"value", value}}));
            }
            else
            {
                corr_out.write(fixed(value, 12) + "\n");
            }
        }
        else if (*sweep)
        {
            auto const ops = operators_for(sweep_ops);
            std::optional<ScalarFunction> nw, cz;
            for (auto const& op : ops)
            {
                (op == "nw" ? nw : cz) = sweep_quantity.curve(sweep_model.model(op));
            }
            SweepTable const table = run_sweep(nw ? &*nw : nullptr, cz ? &*cz : nullptr, sweep_lo, sweep_hi, sweep_steps);
            if (sweep_out.json())
            {
                Json params = sweep_model.manifest();
                params.update(sweep_quantity.manifest());
                params["operator"] = sweep_ops;
                params["x_min"] = sweep_lo;
                params["x_max"] = sweep_hi;
                params["steps"] = sweep_steps;
                params["seed"] = sweep_seed;
                sweep_out.write(dump(make_manifest("sweep", params), sweep_json(table)));
            }
            else
            {
                sweep_out.write(sweep_csv(table));
            }
        }
        else if (*extrema)
        {
            auto const found = find_local_extrema(ext_quantity.curve(ext_model.model(ext_model.op)), ext_lo, ext_hi, ext_opts);
            if (ext_out.json())
            {
                Json params = ext_model.manifest();
                params.update(ext_quantity.manifest());
                params["operator"] = ext_model.op;
                params["x_min"] = ext_lo;
                params["x_max"] = ext_hi;
                params["coarse_steps"] = ext_opts.coarse_steps;
                params["x_tol"] = ext_opts.x_tol;
                params["seed"] = ext_seed;
                Json rows = Json::array();
                for (auto const& e : found)
                {
                    rows.push_back(Json{{"x_star", e.x_star}, {"value", e.value}, {"kind", to_string(e.kind)}});
                }
                ext_out.write(dump(make_manifest("extrema", params), rows));
            }
            else
            {
                std::ostringstream out;
                out << "x_star,value,kind\n";
                for (auto const& e : found)
                {
                    out << fixed(e.x_star, 10) << ',' << fixed(e.value, 12) << ',' << to_string(e.kind) << '\n';
                }
                ext_out.write(out.str());
            }
        }
        else if (*chsh_cmd || *mermin_cmd)
        {
            bool const is_chsh = static_cast<bool>(*chsh_cmd);
            ModelFlags const& mf = is_chsh ? chsh_model : mermin_model;
            OutputFlags const& of = is_chsh ? chsh_out : mermin_out;
            double const x = is_chsh ? chsh_x : mermin_x;
            std::vector<std::string> raw = is_chsh ? std::vector<std::string>{ca, cb, cc, cd} : std::vector<std::string>{ma, mb, mc};
            std::vector<Direction> dirs;
            char const* names[] = {"a", "b", "c", "d"};
            for (std::size_t i = 0; i < raw.size(); ++i)
            {
                dirs.push_back(parse_direction(raw[i], names[i]));
            }
            Inequality const which = is_chsh ? Inequality::Chsh : Inequality::BellMermin;

            std::vector<std::pair<std::string, InequalityResult>> results;
            for (auto const& op : operators_for(is_chsh ? chsh_ops : mermin_ops))
            {
                results.emplace_back(op, evaluate_inequality(which, Correlator(mf.model(op), x), dirs));
            }
            if (of.json())
            {
                Json params = mf.manifest();
                params["operator"] = is_chsh ? chsh_ops : mermin_ops;
                params["x"] = x;
                for (std::size_t i = 0; i < raw.size(); ++i)
                {
                    params[names[i]] = raw[i];
                }
                params["seed"] = is_chsh ? chsh_seed : mermin_seed;
                Json rows = Json::array();
                for (auto const& [op, r] : results)
                {
                    rows.push_back(Json{{"operator", op}, {"value", r.value}, {"bound", r.bound}, {"violated", r.violated}});
                }
                of.write(dump(make_manifest(to_string(which), params), rows));
            }
            else
            {
                std::ostringstream out;
                out << "operator,x,value,bound,violated\n";
                for (auto const& [op, r] : results)
                {
                    out << op << ',' << fixed(x, 10) << ',' << fixed(r.value, 12) << ',' << fixed(r.bound, 1) << ','
                        << (r.violated ? "true" : "false") << '\n';
                }
                of.write(out.str());
            }
        }
        else if (*optimize)
        {
            Inequality const which = opt_ineq == "chsh" ? Inequality::Chsh : Inequality::BellMermin;
            std::vector<std::string> raw{oa, ob, oc};
            if (which == Inequality::Chsh)
            {
                raw.push_back(od);
            }
            std::optional<std::vector<Direction>> given;
            bool const any_given = std::any_of(raw.begin(), raw.end(), [](auto const& s) { return !s.empty(); });
            if (any_given || opt_fixed)
            {
                char const* names[] = {"a", "b", "c", "d"};
                given.emplace();
                for (std::size_t i = 0; i < raw.size(); ++i)
                {
                    if (raw[i].empty())
                    {
                        throw InvalidArgument(std::string("--") + names[i] + " is required when directions are given");
                    }
                    given->push_back(parse_direction(raw[i], names[i]));
                }
            }

            CorrelationModel const model = opt_model.model(opt_model.op);
            double x_star = 0;
            DirectionOptimum best;
            if (opt_x)
            {
                if (opt_fixed)
                {
                    best = {*given, evaluate_inequality(which, Correlator(model, *opt_x), *given).value};
                }
                else
                {
                    best = optimize_directions(which, model, *opt_x, opt_restarts, opt_seed, given);
                }
                x_star = *opt_x;
            }
            else
            {
                auto const joint = optimize_joint(which, model, opt_lo, opt_hi, opt_restarts, opt_seed,
                                                  opt_fixed ? given : std::nullopt);
                x_star = joint.x_star;
                best = {joint.directions, joint.value};
            }

            double const bound = inequality_bound(which);
            if (opt_out.json())
            {
                Json params = opt_model.manifest();
                params["operator"] = opt_model.op;
                params["inequality"] = opt_ineq;
                params["x"] = opt_x ? Json(*opt_x) : Json(nullptr);
                params["x_min"] = opt_lo;
                params["x_max"] = opt_hi;
                params["restarts"] = opt_restarts;
                params["seed"] = opt_seed;
                params["fixed_directions"] = opt_fixed;
                Json dirs = Json::array();
                for (auto const& d : best.directions)
                {
                    dirs.push_back(vec_json(d.vec()));
                }
                opt_out.write(dump(make_manifest("optimize", params),
                                   Json{{"x_star", x_star},
                                        {"value", best.value},
                                        {"bound", bound},
                                        {"violated", best.value > bound + InequalityResult::kViolationTolerance},
                                        {"directions", dirs}}));
            }
            else
            {
                std::ostringstream out;
                out << "x_star,value,direction,dx,dy,dz\n";
                char const* names[] = {"a", "b", "c", "d"};
                for (std::size_t i = 0; i < best.directions.size(); ++i)
                {
                    Vec3 const& v = best.directions[i].vec();
                    out << fixed(x_star, 10) << ',' << fixed(best.value, 12) << ',' << names[i] << ',' << fixed(v.x(), 12)
                        << ',' << fixed(v.y(), 12) << ',' << fixed(v.z(), 12) << '\n';
                }
                opt_out.write(out.str());
            }
        }
        else if (*verify)
        {
            auto const report = verify_equivalence(ver_samples, ver_lo, ver_hi, ver_seed);
            if (ver_out.json())
            {
                Json params{{"samples", ver_samples}, {"seed", ver_seed}, {"x_min", ver_lo}, {"x_max", ver_hi}};
                Json cases = Json::array();
                for (auto const& c : report.cases)
                {
                    Json entry{{"case", c.which.label()}, {"closed_form_available", c.closed_form_available}, {"samples", c.samples}};
                    entry["max_discrepancy"] = c.closed_form_available ? Json(c.max_discrepancy) : Json(nullptr);
                    if (!c.note.empty())
                    {
                        entry["note"] = c.note;
                    }
                    cases.push_back(std::move(entry));
                }
                Json worst{{"case", report.worst.label},
                           {"x", report.worst.x},
                           {"a", vec_json(report.worst.a)},
                           {"b", vec_json(report.worst.b)},
                           {"n", vec_json(report.worst.n)},
                           {"closed", report.worst.closed},
                           {"oracle", report.worst.oracle}};
                ver_out.write(dump(make_manifest("verify", params),
                                   Json{{"max_discrepancy", report.max_discrepancy},
                                        {"tolerance", EquivalenceReport::kTolerance},
                                        {"passed", report.passed},
                                        {"worst", worst},
                                        {"cases", cases}}));
            }
            else
            {
                std::ostringstream out;
                out << "case,samples,max_discrepancy,note\n";
                for (auto const& c : report.cases)
                {
                    std::ostringstream disc;
                    disc << std::scientific << std::setprecision(3) << c.max_discrepancy;
                    out << '"' << c.which.label() << "\"," << c.samples << ','
                        << (c.closed_form_available ? disc.str() : std::string{}) << ',' << c.note << '\n';
                }
                ver_out.write(out.str());
            }
            std::cerr << "max_discrepancy " << report.max_discrepancy << (report.passed ? " (pass)" : " (FAIL)") << '\n';
            return report.passed ? kExitOk : kExitVerifyFailed;
        }
        else if (*figure)
        {
            FigureConfig const config = figure_config(fig_number);
            std::vector<Direction> dirs;
            for (auto const& v : config.directions)
            {
                dirs.push_back(Direction::normalized_near_unit(v, kDirectionTolerance));
            }
            CorrelationModel base;
            base.spin = config.spin;
            base.family = config.family;
            base.backend = fig_backend == "closed" ? Backend::ClosedForm : Backend::Oracle;
            base.n = Direction(0, 0, 1);

            auto curve_for = [&](SpinOperator op) {
                CorrelationModel m = base;
                m.op = op;
                if (!m.closed_form_available())
                {
                    m.backend = Backend::Oracle;
                }
                if (config.quantity == "correlation")
                {
                    return correlation_curve(m, dirs[0], dirs[1]);
                }
                return inequality_curve(config.quantity == "chsh" ? Inequality::Chsh : Inequality::BellMermin, m, dirs);
            };
            ScalarFunction const nw = curve_for(SpinOperator::NewtonWigner);
            ScalarFunction const cz = curve_for(SpinOperator::Czachor);
            SweepTable const table = run_sweep(&nw, &cz, 0.0, fig_hi, fig_steps);

            if (fig_out.json())
            {
                Json realized = Json::array();
                for (auto const& d : dirs)
                {
                    realized.push_back(vec_json(d.vec()));
                }
                Json params{{"figure", fig_number},
                            {"quantity", config.quantity},
                            {"spin", to_string(config.spin)},
                            {"momenta", to_string(config.family)},
                            {"n", vec_json(base.n.vec())},
                            {"directions", realized},
                            {"backend", fig_backend},
                            {"x_min", 0.0},
                            {"x_max", fig_hi},
                            {"steps", fig_steps},
                            {"seed", fig_seed},
                            {"note", config.note}};
                fig_out.write(dump(make_manifest("figure", params), sweep_json(table)));
            }
            else
            {
                fig_out.write(sweep_csv(table));
            }
        }
    }
    catch (ClosedFormUnavailable const& e)
    {
        std::cerr << "error: " << e.what() << " (try --backend oracle)\n";
        return kExitNoClosedForm;
    }
    catch (InvalidArgument const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}
