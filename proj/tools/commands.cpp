#include "commands.hpp"

#include "table.hpp"

#include "spreadlab/boundsengine.hpp"
#include "spreadlab/data.hpp"
#include "spreadlab/divset.hpp"
#include "spreadlab/gfcore.hpp"
#include "spreadlab/lp.hpp"
#include "spreadlab/macwlp.hpp"
#include "spreadlab/projgeom.hpp"
#include "spreadlab/spreadlab.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace cli {

using gfcore::BigInt;
using gfcore::Error;
using gfcore::ErrorKind;
using gfcore::Rational;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

struct Global {
    std::string format = "text";
    bool certificate = false;
    unsigned jobs = 1;
    std::uint64_t budget = 0;
    std::string data_dir;
};

std::string read_input(const Io& io, const std::string& path)
{
    if (path == "-") return std::string(std::istreambuf_iterator<char>(io.in), std::istreambuf_iterator<char>());
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Usage("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void write_output(const Io& io, const std::string& path, const std::string& text)
{
    if (path == "-") {
        io.out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Usage("cannot write " + path);
    f << text;
}

std::pair<long long, long long> parse_range(const std::string& s)
{
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const long long v = std::stoll(s);
            return {v, v};
        }
        const long long a = std::stoll(s.substr(0, dots)), b = std::stoll(s.substr(dots + 2));
        if (a > b) throw Usage("empty range " + s);
        return {a, b};
    } catch (const std::logic_error&) {
        throw Usage("expected A..B, got '" + s + "'");
    }
}

Json num(const BigInt& x)
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

Json rational_json(const Rational& x)
{
    if (denominator(x) == 1) return num(numerator(x));
    return Json(gfcore::to_string(x));
}

std::uint64_t check_q(std::uint64_t q)
{
    if (!gfcore::prime_power(q)) throw Error(ErrorKind::NotAPrimePower, std::to_string(q) + " is not a prime power");
    return q;
}

/// Runs f(i) for i < n on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f)
{
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

// ---- bounds ----

struct BoundsGet {
    std::uint64_t q = 2;
    unsigned v = 0, k = 0;
    std::string formula;
};

Json bounds_json(const boundsengine::BoundReport& rep, bool chain)
{
    Json j;
    j["q"] = rep.p.q;
    j["v"] = rep.p.v;
    j["k"] = rep.p.k;
    j["lower"] = num(rep.lower);
    j["lower_src"] = rep.lower_source;
    j["upper"] = num(rep.upper);
    j["upper_src"] = rep.upper_source;
    j["sigma_min"] = num(rep.sigma_min);
    j["sigma_max"] = num(rep.sigma_max);
    Json pf = Json::array();
    for (const auto& f : rep.per_formula) {
        Json e;
        e["name"] = f.name;
        e["direction"] = f.lower ? "lower" : "upper";
        e["value"] = f.value ? num(*f.value) : Json(nullptr);
        e["note"] = f.note;
        pf.push_back(std::move(e));
    }
    j["per_formula"] = std::move(pf);
    if (chain) j["chain"] = rep.chain;
    return j;
}

int bounds_get(const Io& io, const Global& g, const BoundsGet& o)
{
    const Format fmt = parse_format(g.format);
    const auto rep = boundsengine::best_bounds(check_q(o.q), o.v, o.k);
    if (!o.formula.empty()) {
        Table t{{"name", "direction", "value", "note"}, {}};
        const Json all = bounds_json(rep, false);
        for (const auto& e : all["per_formula"])
            if (e["name"] == o.formula) t.rows.push_back(e);
        if (t.rows.empty()) throw Usage("no formula named '" + o.formula + "'");
        emit_table(t, fmt, io.out);
        for (const auto& e : t.rows)
            if (!e["value"].is_null()) return kOk;
        return kFailure;
    }
    if (fmt == Format::Json) {
        io.out << bounds_json(rep, g.certificate).dump(2) << '\n';
        return kOk;
    }
    if (fmt == Format::Text) {
        const auto& p = rep.p;
        io.out << "A_" << p.q << "(" << p.v << ", " << 2 * p.k << "; " << p.k << ")  v = " << p.t << "*" << p.k << " + "
               << p.r << '\n';
        io.out << "lower  " << rep.lower << "  (" << rep.lower_source << ")\n";
        io.out << "upper  " << rep.upper << "  (" << rep.upper_source << ")\n";
        io.out << "sigma  [" << rep.sigma_min << ", " << rep.sigma_max << "]\n\n";
    }
    Table t{{"name", "direction", "value", "note"}, {}};
    const Json all = bounds_json(rep, false);
    for (const auto& e : all["per_formula"]) t.rows.push_back(e);
    emit_table(t, fmt, io.out);
    if (g.certificate && !rep.chain.empty() && fmt == Format::Text) {
        io.out << "\ndivisibility chain:\n";
        for (const auto& line : rep.chain) io.out << "  " << line << '\n';
    }
    return kOk;
}

struct BoundsTable {
    std::uint64_t q = 2;
    std::string v_range, k_range;
};

int bounds_table(const Io& io, const Global& g, const BoundsTable& o)
{
    const Format fmt = parse_format(g.format);
    check_q(o.q);
    const auto [v0, v1] = parse_range(o.v_range);
    const auto [k0, k1] = parse_range(o.k_range);
    if (v0 < 1 || k0 < 1) throw Usage("ranges must be positive");
    std::vector<std::pair<unsigned, unsigned>> grid;
    for (long long k = k0; k <= k1; ++k)
        for (long long v = std::max(v0, k); v <= v1; ++v) grid.emplace_back(unsigned(v), unsigned(k));
    Table t{{"q", "v", "k", "lower", "upper", "lower_src", "upper_src", "sigma_min", "sigma_max"}, {}};
    t.rows.resize(grid.size());
    parallel_for(grid.size(), g.jobs, [&](std::size_t i) {
        Json j = bounds_json(boundsengine::best_bounds(o.q, grid[i].first, grid[i].second), g.certificate);
        if (fmt != Format::Json) j.erase("per_formula");
        t.rows[i] = std::move(j);
    });
    emit_table(t, fmt, io.out);
    return kOk;
}

// ---- spread ----

struct SpreadConstruct {
    std::uint64_t q = 2;
    unsigned v = 0, k = 0;
    std::string method = "multicomponent";
    std::string out = "-";
};

int spread_construct(const Io& io, const SpreadConstruct& o)
{
    check_q(o.q);
    spreadlab::PartialSpread s;
    if (o.method == "field-reduction") {
        if (o.k == 0 || o.v % o.k != 0) throw Usage("field-reduction needs k | v");
        s = spreadlab::spread_field_reduction(o.q, o.k, o.v / o.k);
    } else if (o.method == "multicomponent")
        s = spreadlab::multicomponent(o.q, o.v, o.k);
    else if (o.method == "lifted-mrd")
        s = spreadlab::lifted_mrd(o.q, o.v, o.k);
    else
        throw Usage("unknown method '" + o.method + "'");
    write_output(io, o.out, spreadlab::format_spread(s));
    return kOk;
}

// Holes of a partial k-spread are q^{k-1}-divisible.
std::uint64_t hole_divisor(const spreadlab::PartialSpread& s)
{
    return gfcore::ipow_u64(s.field->q(), unsigned(s.k == 0 ? 0 : s.k - 1));
}

int spread_verify(const Io& io, const std::string& file)
{
    const auto s = spreadlab::parse_spread(read_input(io, file));
    const auto bad = spreadlab::verify_partial_spread(s.members, s.k);
    if (!bad.empty()) {
        for (const auto& b : bad) {
            if (b.i == b.j)
                io.out << "member " << b.i << " has dimension " << b.dim << ", expected " << s.k << '\n';
            else
                io.out << "members " << b.i << " and " << b.j << " meet in dimension " << b.dim << '\n';
        }
        io.out << s.size() << " members, not a partial spread\n";
        return kFailure;
    }
    const auto h = spreadlab::holes(s);
    const std::uint64_t delta = hole_divisor(s);
    const bool ok = divset::is_divisible(h, delta).kind != divset::DivKind::No;
    io.out << s.size() << " members, " << h.cardinality() << " holes, holes " << delta
           << "-divisible: " << (ok ? "yes" : "no") << '\n';
    return ok ? kOk : kFailure;
}

struct SpreadHoles {
    std::string file;
    bool check = false;
    std::string out = "-";
};

int spread_holes(const Io& io, const SpreadHoles& o)
{
    const auto s = spreadlab::parse_spread(read_input(io, o.file));
    const auto h = spreadlab::holes(s);
    if (!o.check) {
        write_output(io, o.out, divset::format_point_set(h));
        return kOk;
    }
    if (o.out != "-") write_output(io, o.out, divset::format_point_set(h));
    const std::uint64_t delta = hole_divisor(s);
    const auto res = divset::is_divisible(h, delta);
    io.out << h.cardinality() << " holes, " << delta << "-divisible: " << divset::to_string(res.kind);
    if (res.witness) io.out << ", witness hyperplane " << projgeom::format_vector(*h.field(), *res.witness);
    io.out << '\n';
    return res.kind == divset::DivKind::No ? kFailure : kOk;
}

int spread_extend(const Io& io, const std::string& file, const std::string& out)
{
    const auto s = spreadlab::parse_spread(read_input(io, file));
    write_output(io, out, spreadlab::format_spread(spreadlab::extend_spread(s)));
    return kOk;
}

// ---- divset ----

struct DivsetBuild {
    std::string recipe;
    std::uint64_t q = 2;
    unsigned v = 0, dim = 0, r = 1, m = 1, center = 0, vertex_dim = 1;
    std::uint64_t i = 0, a = 0, delta = 1;
    std::vector<std::uint64_t> b;
    std::vector<std::size_t> petals;
    std::vector<std::string> inputs;
    std::string variant = "q-petals";
    std::string name;
    bool keep_vertex = false;
    std::string out = "-";
};

std::vector<std::size_t> iota(std::size_t n)
{
    std::vector<std::size_t> idx(n);
    for (std::size_t j = 0; j < n; ++j) idx[j] = j;
    return idx;
}

divset::DivisibleSet load_divisible(const Io& io, const std::string& path, std::uint64_t delta)
{
    return {divset::parse_point_set(read_input(io, path)), delta, path};
}

int divset_build(const Io& io, const DivsetBuild& o)
{
    divset::DivisibleSet d;
    const std::string& rc = o.recipe;
    if (rc == "subspace" || rc == "affine") {
        auto f = gfcore::field_new(check_q(o.q));
        if (o.dim == 0 || o.dim > o.v) throw Usage("need 1 <= --dim <= --v");
        const auto y = projgeom::coordinate_subspace(f, o.v, iota(o.dim));
        if (rc == "subspace")
            d = divset::construct_subspace(y);
        else
            d = divset::construct_affine(y, projgeom::coordinate_subspace(f, o.v, iota(o.dim - 1)));
    } else if (rc == "union") {
        if (o.inputs.size() < 2) throw Usage("union needs at least two --in files");
        d = load_divisible(io, o.inputs[0], o.delta);
        for (std::size_t j = 1; j < o.inputs.size(); ++j)
            d = divset::disjoint_union(d, load_divisible(io, o.inputs[j], o.delta));
    } else if (rc == "sunflower") {
        const auto var = o.variant == "q-petals"     ? divset::SunflowerVariant::QPetals
                         : o.variant == "q-plus-one" ? divset::SunflowerVariant::QPlus1WithCenter
                                                     : throw Usage("unknown variant '" + o.variant + "'");
        d = divset::sunflower_union(check_q(o.q), o.petals, o.center, var);
    } else if (rc == "cone") {
        if (o.inputs.size() != 1) throw Usage("cone needs one --in file");
        d = divset::cone(load_divisible(io, o.inputs[0], o.delta), o.vertex_dim,
                         o.keep_vertex ? divset::ConeVariant::KeepVertex : divset::ConeVariant::RemoveVertex);
    } else if (rc == "construction1")
        d = divset::construction1(check_q(o.q), o.r, o.i);
    else if (rc == "construction4")
        d = divset::construction4(check_q(o.q), o.r, o.m, o.a, o.b);
    else if (rc == "ovoid-concat") {
        const std::uint64_t q = check_q(o.q);
        d = {divset::field_reduction_points(divset::ovoid(q * q), q), gfcore::ipow_u64(q, 3), "ovoid-concat"};
    } else if (rc == "matrix") {
        if (o.name.empty()) throw Usage("matrix needs --name");
        d = {divset::columns_as_points(dataset::matrix("matrices/" + o.name + ".txt", check_q(o.q))), o.delta, o.name};
    } else if (rc == "h6")
        d = divset::h6();
    else if (rc == "h7")
        d = divset::h7();
    else if (rc == "h8")
        d = divset::h8();
    else
        throw Usage("unknown recipe '" + rc + "'");
    std::ostringstream os;
    os << "# " << d.recipe << ", claimed divisor " << d.delta << '\n' << divset::format_point_set(d.set);
    write_output(io, o.out, os.str());
    return kOk;
}

int divset_check(const Io& io, const std::string& file, std::uint64_t delta)
{
    const auto c = divset::parse_point_set(read_input(io, file));
    const auto res = divset::is_divisible(c, delta);
    io.out << c.cardinality() << " points in PG(" << c.ambient() - 1 << ", " << c.field()->q() << "), " << delta
           << "-divisible: " << divset::to_string(res.kind);
    if (res.kind != divset::DivKind::No) io.out << " (u = " << res.u << ")";
    if (res.witness) io.out << ", witness hyperplane " << projgeom::format_vector(*c.field(), *res.witness);
    io.out << '\n';
    return res.kind == divset::DivKind::No ? kFailure : kOk;
}

int divset_spectrum(const Io& io, const Global& g, const std::string& file)
{
    const auto c = divset::parse_point_set(read_input(io, file));
    const auto sp = divset::spectrum(c);
    const auto wd = sp.weight_distribution();
    if (parse_format(g.format) == Format::Json) {
        Json j;
        j["q"] = sp.q;
        j["v"] = sp.v;
        j["n"] = sp.n;
        j["dimension"] = sp.dimension;
        Json a = Json::object(), w = Json::object();
        for (std::size_t i = 0; i < sp.a.size(); ++i)
            if (sp.a[i] != 0) a[std::to_string(i)] = num(sp.a[i]);
        for (std::size_t i = 0; i < wd.size(); ++i)
            if (wd[i] != 0) w[std::to_string(i)] = num(wd[i]);
        j["hyperplane_spectrum"] = a;
        j["weight_distribution"] = w;
        j["standard_equations"] = sp.standard_equations_hold();
        io.out << j.dump(2) << '\n';
        return sp.standard_equations_hold() ? kOk : kFailure;
    }
    io.out << sp.n << " points in PG(" << sp.v - 1 << ", " << sp.q << "), span dimension " << sp.dimension << '\n';
    io.out << "hyperplane spectrum:";
    for (std::size_t i = 0; i < sp.a.size(); ++i)
        if (sp.a[i] != 0) io.out << " a" << i << "=" << sp.a[i];
    io.out << "\nweight distribution:";
    for (std::size_t i = 0; i < wd.size(); ++i)
        if (wd[i] != 0) io.out << ' ' << i << '^' << wd[i];
    io.out << "\nstandard equations: " << (sp.standard_equations_hold() ? "hold" : "violated") << '\n';
    return sp.standard_equations_hold() ? kOk : kFailure;
}

// ---- status ----

struct StatusOpts {
    std::uint64_t q = 2;
    unsigned r = 1;
    std::string n_range;
    bool undecided_only = false;
};

int status_table(const Io& io, const Global& g, const StatusOpts& o)
{
    const Format fmt = parse_format(g.format);
    check_q(o.q);
    const auto [a, b] = parse_range(o.n_range);
    if (a < 0) throw Usage("n must be nonnegative");
    std::vector<macwlp::Verdict> verdicts(std::size_t(b - a + 1));
    parallel_for(verdicts.size(), g.jobs,
                 [&](std::size_t i) { verdicts[i] = macwlp::existence_status(o.q, o.r, BigInt(a + (long long)i)); });
    Table t{{"n", "status", "stage"}, {}};
    if (g.certificate) t.columns.push_back("certificate");
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const auto& vd = verdicts[i];
        if (o.undecided_only && vd.status != macwlp::Existence::Undecided) continue;
        Json j;
        j["q"] = o.q;
        j["r"] = o.r;
        j["n"] = a + (long long)i;
        j["status"] = macwlp::to_string(vd.status);
        j["stage"] = macwlp::to_string(vd.stage);
        j["certificate"] = g.certificate ? Json(vd.certificate) : Json::array();
        t.rows.push_back(std::move(j));
    }
    emit_table(t, fmt, io.out);
    return kOk;
}

// ---- macwlp lp ----

struct LpOpts {
    std::uint64_t q = 2;
    std::string n;
    std::string delta;
    std::string dims;
    std::string rules;
    unsigned identities = 4;
};

macwlp::Rule::Kind rule_kind(const std::string& s)
{
    if (s == "zero_weight") return macwlp::Rule::Kind::ZeroWeight;
    if (s == "min_y") return macwlp::Rule::Kind::MinY;
    if (s == "max_y") return macwlp::Rule::Kind::MaxY;
    if (s == "fix_k") return macwlp::Rule::Kind::FixK;
    throw Usage("unknown rule kind '" + s + "'");
}

std::string vec_str(const std::vector<Rational>& x)
{
    std::string s;
    for (const auto& e : x) s += (s.empty() ? "" : " ") + gfcore::to_string(e);
    return s;
}

int macwlp_lp(const Io& io, const Global& g, const LpOpts& o)
{
    const std::uint64_t q = check_q(o.q);
    const BigInt n(o.n), delta(o.delta);
    const auto r = divset::log_q(q, std::uint64_t(delta));
    if (!r || *r == 0) throw Usage("--delta must be a positive power of q");
    macwlp::LpProblem p = macwlp::default_problem(q, *r, n);
    p.identities = o.identities;
    if (!o.rules.empty()) {
        Json doc;
        try {
            doc = Json::parse(read_input(io, o.rules));
        } catch (const Json::exception& e) {
            throw Error(ErrorKind::ParseError, e.what());
        }
        if (doc.contains("weights")) {
            p.weights.clear();
            for (const auto& w : doc["weights"]) p.weights.emplace_back(w.get<std::int64_t>());
        }
        if (doc.value("replace_rules", false)) p.rules.clear();
        for (const auto& e : doc.value("rules", Json::array()))
            p.rules.push_back({rule_kind(e.at("kind").get<std::string>()), BigInt(e.at("value").get<std::int64_t>()),
                               e.value("reason", std::string())});
    }
    std::optional<std::pair<unsigned, unsigned>> dims;
    if (!o.dims.empty()) {
        if (o.dims == "auto")
            dims = macwlp::k_range(q, *r, n);
        else {
            const auto [k0, k1] = parse_range(o.dims);
            if (k0 < 1) throw Usage("dimensions must be positive");
            dims = {unsigned(k0), unsigned(k1)};
        }
    }
    const auto rep = macwlp::lp_feasibility(p, dims);
    const auto& names = rep.system.names;

    if (parse_format(g.format) == Format::Json) {
        Json j;
        j["q"] = q;
        j["n"] = num(n);
        j["delta"] = num(delta);
        j["variables"] = names;
        j["feasible"] = rep.feasible;
        j["certificate_checked"] = rep.certificate_checked;
        if (g.certificate && !rep.feasible) {
            Json u = Json::array(), l = Json::array();
            for (const auto& x : rep.result.certificate.eq) u.push_back(rational_json(x));
            for (const auto& x : rep.result.certificate.ge) l.push_back(rational_json(x));
            j["farkas"] = {{"eq", u}, {"ge", l}};
        }
        Json pk = Json::array();
        for (const auto& ks : rep.per_k) {
            Json e;
            e["k"] = ks.k;
            e["feasible"] = ks.feasible;
            e["unique"] = ks.unique;
            if (ks.unique) {
                const auto sys = macwlp::build_system(p, ks.k);
                Json sol = Json::object();
                for (std::size_t i = 0; i < sys.names.size(); ++i) sol[sys.names[i]] = rational_json(ks.lo[i]);
                e["solution"] = sol;
            }
            pk.push_back(std::move(e));
        }
        j["per_k"] = pk;
        io.out << j.dump(2) << '\n';
        return kOk;
    }

    io.out << "n = " << n << ", delta = " << delta << ", weights {";
    for (std::size_t i = 0; i < p.weights.size(); ++i) io.out << (i ? ", " : "") << p.weights[i];
    io.out << "}\nvariables:";
    for (const auto& nm : names) io.out << ' ' << nm;
    io.out << "\nfeasible: " << (rep.feasible ? "yes" : "no") << " (certificate "
           << (rep.certificate_checked ? "verified" : "NOT verified") << ")\n";
    if (g.certificate) {
        for (const auto& c : rep.system.ge) io.out << "rule: " << c.label << '\n';
        if (rep.solved && rep.solved->consistent) {
            io.out << "solved form:\n";
            const auto& sf = *rep.solved;
            for (std::size_t i = 0; i < sf.basic.size(); ++i)
                io.out << "  " << names[sf.basic[i]] << " = "
                       << lp::format_linear(names, sf.free, sf.constant[i], sf.coef[i]) << '\n';
        }
        if (rep.projection) {
            const auto& pr = *rep.projection;
            auto show = [&](const std::string& what, const lp::DerivedBound& b) {
                io.out << "  " << what << "  from";
                for (const auto& [idx, c] : b.combination)
                    io.out << ' ' << gfcore::to_string(c) << " * (" << pr.sources[idx] << ')';
                io.out << '\n';
            };
            io.out << "projection onto " << names[pr.variable] << ":\n";
            const std::string& y = names[pr.variable];
            if (pr.upper) show(y + " <= " + gfcore::to_string(pr.upper->value), *pr.upper);
            if (pr.lower) show(y + " >= " + gfcore::to_string(pr.lower->value), *pr.lower);
            if (pr.contradiction)
                show("contradiction " + gfcore::to_string(pr.contradiction->value) + " >= 0", *pr.contradiction);
        }
        if (!rep.feasible) {
            io.out << "farkas multipliers (identities): " << vec_str(rep.result.certificate.eq) << '\n';
            if (!rep.result.certificate.ge.empty())
                io.out << "farkas multipliers (rules): " << vec_str(rep.result.certificate.ge) << '\n';
        } else
            io.out << "feasible point: " << vec_str(rep.result.x) << '\n';
    }
    for (const auto& ks : rep.per_k) {
        io.out << "k = " << ks.k << ": ";
        if (!ks.feasible) {
            io.out << "infeasible\n";
            continue;
        }
        const auto sys = macwlp::build_system(p, ks.k);
        io.out << (ks.unique ? "unique" : "feasible");
        for (std::size_t i = 0; i < sys.names.size(); ++i) {
            io.out << ' ' << sys.names[i] << '=';
            if (ks.lo[i] == ks.hi[i])
                io.out << gfcore::to_string(ks.lo[i]);
            else
                io.out << '[' << gfcore::to_string(ks.lo[i]) << ", "
                       << (ks.hi[i] < 0 ? std::string("inf") : gfcore::to_string(ks.hi[i])) << ']';
        }
        io.out << '\n';
    }
    return kOk;
}

// ---- field ----

std::string poly_string(const std::vector<gfcore::Elem>& c)
{
    std::string s;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        const std::string coef = c[i] == 1 && i > 0 ? "" : std::to_string(c[i]);
        s += coef;
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

int field_info(const Io& io, const Global& g, std::uint64_t q, bool elements)
{
    auto f = gfcore::field_new(check_q(q));
    if (parse_format(g.format) == Format::Json) {
        Json j;
        j["q"] = f->q();
        j["p"] = f->p();
        j["e"] = f->e();
        j["modulus"] = poly_string(f->modulus());
        j["primitive"] = f->to_string(f->primitive());
        if (elements) {
            Json el = Json::array();
            for (std::uint64_t a = 0; a < f->q(); ++a) el.push_back(f->to_string(gfcore::Elem(a)));
            j["elements"] = el;
        }
        io.out << j.dump(2) << '\n';
        return kOk;
    }
    io.out << "F_" << f->q() << " = F_" << f->p() << "[x] / (" << poly_string(f->modulus()) << ")\n";
    io.out << "primitive element: " << f->to_string(f->primitive()) << " (index " << f->primitive() << ")\n";
    if (elements) {
        Table t{{"index", "element", "log"}, {}};
        for (std::uint64_t a = 0; a < f->q(); ++a) {
            Json row;
            row["index"] = a;
            row["element"] = f->to_string(gfcore::Elem(a));
            row["log"] = "-";
            t.rows.push_back(row);
        }
        gfcore::Elem x = 1;
        for (std::uint64_t l = 0; l + 1 < f->q(); ++l, x = f->mul(x, f->primitive())) t.rows[x]["log"] = l;
        emit_table(t, Format::Text, io.out);
    }
    return kOk;
}

int error_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::NotAPrimePower:
    case ErrorKind::OrderTooLarge:
    case ErrorKind::RangeError:
    case ErrorKind::WrongResidue:
    case ErrorKind::NotApplicable:
    case ErrorKind::ParameterMismatch:
    case ErrorKind::BadPetalCount: return kUsage;
    default: return kFailure;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    const Io io{in, out, err};
    Global g;
    CLI::App app{"Partial spreads, divisible point sets and their bounds.", "spreadlab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", g.format, "text, csv, json or md")
        ->check(CLI::IsMember({"text", "table", "csv", "json", "md"}));
    app.add_flag("--certificate", g.certificate, "Print certificates and derivations");
    app.add_option("--jobs", g.jobs, "Worker threads for tables")->check(CLI::PositiveNumber);
    app.add_option("--budget", g.budget, "Enumeration budget in points (default: SPREADLAB_BUDGET)")
        ->check(CLI::PositiveNumber);
    app.add_option("--data-dir", g.data_dir, "Directory overriding the shipped data files");

    std::function<int()> action;

    auto* bounds = app.add_subcommand("bounds", "Bounds on A_q(v, 2k; k)")->require_subcommand(1);
    BoundsGet bg;
    auto* bget = bounds->add_subcommand("get", "Best bounds for one parameter set");
    bget->add_option("--q", bg.q)->required();
    bget->add_option("--v", bg.v)->required();
    bget->add_option("--k", bg.k)->required()->check(CLI::PositiveNumber);
    bget->add_option("--formula", bg.formula, "Only this formula");
    bget->callback([&] { action = [&] { return bounds_get(io, g, bg); }; });
    BoundsTable bt;
    auto* btab = bounds->add_subcommand("table", "Bounds over a grid");
    btab->add_option("--q", bt.q)->required();
    btab->add_option("--v-range", bt.v_range)->required();
    btab->add_option("--k-range", bt.k_range)->required();
    btab->callback([&] { action = [&] { return bounds_table(io, g, bt); }; });

    auto* spread = app.add_subcommand("spread", "Partial spreads")->require_subcommand(1);
    SpreadConstruct sc;
    auto* scon = spread->add_subcommand("construct", "Build a partial spread");
    scon->add_option("--q", sc.q)->required();
    scon->add_option("--v", sc.v)->required();
    scon->add_option("--k", sc.k)->required()->check(CLI::PositiveNumber);
    scon->add_option("--method", sc.method)->check(CLI::IsMember({"field-reduction", "multicomponent", "lifted-mrd"}));
    scon->add_option("--out", sc.out);
    scon->callback([&] { action = [&] { return spread_construct(io, sc); }; });
    std::string sv_file;
    auto* sver = spread->add_subcommand("verify", "Check a spread file");
    sver->add_option("file", sv_file)->required();
    sver->callback([&] { action = [&] { return spread_verify(io, sv_file); }; });
    SpreadHoles sh;
    auto* shol = spread->add_subcommand("holes", "Uncovered points of a spread file");
    shol->add_option("file", sh.file)->required();
    shol->add_flag("--check-divisibility", sh.check);
    shol->add_option("--out", sh.out);
    shol->callback([&] { action = [&] { return spread_holes(io, sh); }; });
    std::string se_file, se_out = "-";
    auto* sext = spread->add_subcommand("extend", "Extend by k coordinates and a lifted layer");
    sext->add_option("file", se_file)->required();
    sext->add_option("--out", se_out);
    sext->callback([&] { action = [&] { return spread_extend(io, se_file, se_out); }; });

    auto* div = app.add_subcommand("divset", "Divisible point sets")->require_subcommand(1);
    DivsetBuild db;
    auto* dbld = div->add_subcommand("build", "Construct a divisible set");
    dbld->add_option("--recipe", db.recipe)
        ->required()
        ->check(CLI::IsMember({"subspace", "affine", "union", "sunflower", "cone", "construction1", "construction4",
                               "ovoid-concat", "matrix", "h6", "h7", "h8"}));
    dbld->add_option("--q", db.q);
    dbld->add_option("--v", db.v);
    dbld->add_option("--dim", db.dim);
    dbld->add_option("--r", db.r);
    dbld->add_option("--i", db.i);
    dbld->add_option("--m", db.m);
    dbld->add_option("--a", db.a);
    dbld->add_option("--b", db.b)->delimiter(',');
    dbld->add_option("--petals", db.petals)->delimiter(',');
    dbld->add_option("--center", db.center);
    dbld->add_option("--variant", db.variant)->check(CLI::IsMember({"q-petals", "q-plus-one"}));
    dbld->add_option("--in", db.inputs, "Point-set files for union and cone");
    dbld->add_option("--delta", db.delta, "Divisor of the --in sets or the matrix");
    dbld->add_option("--vertex-dim", db.vertex_dim);
    dbld->add_flag("--keep-vertex", db.keep_vertex);
    dbld->add_option("--name", db.name, "Shipped matrix: gen17_k6, gen17_k7, gen17_k8, hill_cap");
    dbld->add_option("--out", db.out);
    dbld->callback([&] { action = [&] { return divset_build(io, db); }; });
    std::string dc_file;
    std::uint64_t dc_delta = 1;
    auto* dchk = div->add_subcommand("check", "Test divisibility");
    dchk->add_option("file", dc_file)->required();
    dchk->add_option("--delta", dc_delta)->required()->check(CLI::PositiveNumber);
    dchk->callback([&] { action = [&] { return divset_check(io, dc_file, dc_delta); }; });
    std::string ds_file;
    auto* dspec = div->add_subcommand("spectrum", "Hyperplane spectrum and weight distribution");
    dspec->add_option("file", ds_file)->required();
    dspec->callback([&] { action = [&] { return divset_spectrum(io, g, ds_file); }; });
    StatusOpts st;
    auto add_status = [&](CLI::App* parent) {
        auto* s = parent->add_subcommand("status", "Existence of q^r-divisible sets over a range of n");
        s->add_option("--q", st.q)->required();
        s->add_option("--r", st.r)->required();
        s->add_option("--n-range", st.n_range)->required();
        s->add_flag("--undecided-only", st.undecided_only);
        s->callback([&] { action = [&] { return status_table(io, g, st); }; });
    };
    add_status(div);

    auto* mw = app.add_subcommand("macwlp", "MacWilliams identities and the exclusion tests")->require_subcommand(1);
    LpOpts lo;
    auto* mlp = mw->add_subcommand("lp", "Feasibility of the first MacWilliams identities");
    mlp->add_option("--q", lo.q)->required();
    mlp->add_option("--n", lo.n)->required();
    mlp->add_option("--delta", lo.delta)->required();
    mlp->add_option("--dims", lo.dims, "K1..K2, or auto, for one system per dimension");
    mlp->add_option("--rules", lo.rules, "JSON file with weights and rules");
    mlp->add_option("--identities", lo.identities)->check(CLI::Range(3, 4));
    mlp->callback([&] { action = [&] { return macwlp_lp(io, g, lo); }; });
    add_status(mw);

    auto* field = app.add_subcommand("field", "Finite fields")->require_subcommand(1);
    std::uint64_t fq = 2;
    bool felems = false;
    auto* finfo = field->add_subcommand("info", "Modulus and primitive element");
    finfo->add_option("--q", fq)->required();
    finfo->add_flag("--elements", felems);
    finfo->callback([&] { action = [&] { return field_info(io, g, fq, felems); }; });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return kUsage;
    }

    try {
        if (g.budget == 0)
            if (const char* env = std::getenv("SPREADLAB_BUDGET")) {
                try {
                    g.budget = std::stoull(env);
                } catch (const std::logic_error&) {
                    throw Usage("SPREADLAB_BUDGET must be a positive integer");
                }
                if (g.budget == 0) throw Usage("SPREADLAB_BUDGET must be positive");
            }
        if (g.budget) projgeom::set_enumeration_budget(g.budget);
        if (!g.data_dir.empty()) dataset::set_override_dir(g.data_dir);
        return action();
    } catch (const Usage& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return error_code(e.kind());
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace cli
