#include "arborlab/cli.hpp"

#include <cstdlib>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "arborlab/cache.hpp"
#include "arborlab/error.hpp"
#include "arborlab/integrality.hpp"
#include "arborlab/kernels.hpp"

namespace arborlab::cli {

namespace {

using exactcore::ProjPointQ;
using exactcore::RationalMap;

class UsageError : public Error {
public:
    UsageError(const std::string& flag, const std::string& what) : Error(flag + ": " + what) {}
};

// Field elements are printed as polynomials in t to keep them apart from x.
std::string tpoly(const RatPoly& a) {
    std::string s = to_string(a);
    for (auto& ch : s)
        if (ch == 'x') ch = 't';
    return s;
}

RatPoly parse_tpoly(std::string s) {
    for (auto& ch : s)
        if (ch == 't') ch = 'x';
    return exactcore::parse_rat_poly(s);
}

u64 parse_residue(const json& j, u64 p) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return p;
    return std::stoull(s);
}

json string_list(const std::vector<std::string>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

struct Args {
    std::string map, point, poly, target, points, primes, table;
    u64 prime = 0, pmax = 1000;
    int levels = 2, precision = 6, count = 2, steps = 10;
    bool json = false, serial = false;
    std::string cache_dir;
    int threads = 0;
};

RationalMap get_map(const std::string& text, const char* flag = "--map") {
    try {
        return exactcore::parse_map(text);
    } catch (const ParseError& e) {
        throw UsageError(flag, e.what());
    }
}

ProjPointQ get_point(const std::string& text) {
    try {
        return exactcore::parse_point(text);
    } catch (const ParseError& e) {
        throw UsageError("--point", e.what());
    }
}

residue::Place get_prime(u64 p) {
    if (!zp::is_prime(p) || p >= (u64{1} << 31)) throw UsageError("--prime", std::to_string(p) + " is not a prime below 2^31");
    return residue::make_place(p);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

json header() {
    json j;
    j["tool"] = kToolHeader;
    return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---- subcommands ----

int cmd_pcf(const Args& a, std::ostream& out) {
    const auto f = get_map(a.map);
    const auto cert = orbits::pcf_certify(f);
    json j = header();
    j["map"] = to_string(f);
    j["pcf"] = cert.is_pcf;
    j["M"] = cert.M;
    j["critical_orbits"] = json::array();
    for (const auto& co : cert.critical_orbits) {
        json o;
        o["critical"] = orbits::to_string(co.critical);
        o["multiplicity"] = co.multiplicity;
        o["preperiodic"] = co.preperiodic;
        if (co.preperiodic) {
            o["tail"] = co.tail;
            o["period"] = co.period;
        }
        if (co.escape_step) o["escape_step"] = *co.escape_step;
        json orb = json::array();
        for (const auto& c : co.orbit) orb.push_back(orbits::to_string(c));
        o["orbit"] = orb;
        j["critical_orbits"].push_back(o);
    }
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    out << "map: " << to_string(f) << '\n';
    out << "PCF: " << yes_no(cert.is_pcf) << '\n';
    if (cert.is_pcf) out << "M: " << cert.M << '\n';
    for (const auto& co : cert.critical_orbits) {
        out << "critical " << orbits::to_string(co.critical) << " (multiplicity " << co.multiplicity << "): ";
        if (co.preperiodic) {
            out << "preperiodic, tail " << co.tail << ", period " << co.period << '\n';
        } else {
            out << "escapes at step " << co.escape_step.value_or(-1) << " (height > " << co.escape_lower_height << ")\n";
        }
        out << "  orbit:";
        for (const auto& c : co.orbit) out << ' ' << orbits::to_string(c);
        out << '\n';
    }
    return kOk;
}

int cmd_orbit(const Args& a, std::ostream& out) {
    const auto f = get_map(a.map);
    const auto x = get_point(a.point);
    const auto cls = orbits::classify_orbit(f, x);
    const bool exc = orbits::is_exceptional(f, x);
    json j = header();
    j["map"] = to_string(f);
    j["point"] = exactcore::to_string(x);
    j["weil_height"] = orbits::weil_height(x);
    j["exceptional"] = exc;
    if (const auto* pp = std::get_if<orbits::Preperiodic>(&cls)) {
        j["class"] = "preperiodic";
        j["tail"] = pp->tail;
        j["period"] = pp->period;
    } else {
        const auto& w = std::get<orbits::Wandering>(cls);
        j["class"] = "wandering";
        j["escape_index"] = w.escape_index;
        const auto h = orbits::canonical_height(f, x, a.steps);
        j["canonical_height"] = {{"steps", a.steps}, {"value", h.value}, {"error_bound", h.error_bound}};
    }
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    out << "point " << exactcore::to_string(x) << " under " << to_string(f) << '\n';
    out << "Weil height: " << orbits::weil_height(x) << '\n';
    if (const auto* pp = std::get_if<orbits::Preperiodic>(&cls)) {
        out << "preperiodic: tail " << pp->tail << ", period " << pp->period << '\n';
    } else {
        out << "wandering: height threshold crossed at step " << std::get<orbits::Wandering>(cls).escape_index << '\n';
        out << "canonical height ~ " << j["canonical_height"]["value"].get<double>() << " +- "
            << j["canonical_height"]["error_bound"].get<double>() << '\n';
    }
    out << "exceptional: " << yes_no(exc) << '\n';
    return kOk;
}

int cmd_places(const Args& a, std::ostream& out) {
    const auto f = get_map(a.map);
    const auto x = get_point(a.point);
    const auto scan = residue::find_periodic_places(f, x, a.pmax);
    json j = header();
    j["map"] = to_string(f);
    j["point"] = exactcore::to_string(x);
    j["pmax"] = a.pmax;
    j["chart_swapped"] = scan.chart_swapped;
    j["strictly_preperiodic"] = scan.strictly_preperiodic;
    j["places"] = json::array();
    for (const auto& pp : scan.places) {
        j["places"].push_back({{"prime", pp.place.p},
                               {"period", pp.cycle.period},
                               {"multiplier", std::to_string(pp.cycle.multiplier)}});
    }
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    if (scan.strictly_preperiodic) out << "warning: the point is strictly preperiodic\n";
    out << scan.places.size() << " primes p <= " << a.pmax << " where the point is periodic mod p\n";
    for (const auto& pp : scan.places) {
        out << "p = " << pp.place.p << "  period " << pp.cycle.period << "  multiplier " << pp.cycle.multiplier << '\n';
    }
    return kOk;
}

json conditions_json(const residue::ConditionReport& r) {
    return {{"A", r.A}, {"B", r.B}, {"C", r.C}, {"D", r.D}, {"E", r.E}, {"unit_multiplier", r.unit_multiplier}};
}

json cycle_json(const residue::CycleData& c, u64 p) {
    json pts = json::array();
    for (u64 x : c.cycle_points) pts.push_back(residue::residue_to_string(x, p));
    return {{"tail", c.tail}, {"period", c.period}, {"multiplier", std::to_string(c.multiplier)}, {"points", pts}};
}

int cmd_conditions(const Args& a, std::ostream& out) {
    const auto f = get_map(a.map);
    const auto x = get_point(a.point);
    const auto v = get_prime(a.prime);
    const auto r = residue::check_conditions(f, x, v, orbits::pcf_certify(f));
    json j = header();
    j["map"] = to_string(f);
    j["point"] = exactcore::to_string(x);
    j["prime"] = v.p;
    j["M"] = r.M;
    j["chart_swapped"] = r.chart_swapped;
    j["conditions"] = conditions_json(r);
    if (r.bad) j["bad_reduction"] = {{"resultant", r.bad->resultant.get_str()}, {"valuation", r.bad->valuation}};
    if (r.cycle) j["cycle"] = cycle_json(*r.cycle, v.p);
    json crit = json::array();
    for (u64 c : r.critical_residues) crit.push_back(residue::residue_to_string(c, v.p));
    j["critical_residues"] = r.every_point_critical ? json("all") : crit;
    j["failures"] = string_list(r.failures);
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    out << "conditions at p = " << v.p << " (M = " << r.M << ")\n";
    out << "A " << yes_no(r.A) << "  B " << yes_no(r.B) << "  C " << yes_no(r.C) << "  D " << yes_no(r.D) << "  E "
        << yes_no(r.E) << "  unit multiplier " << yes_no(r.unit_multiplier) << '\n';
    if (r.cycle) {
        out << "residue " << residue::residue_to_string(r.alpha_residue, v.p) << ": tail " << r.cycle->tail << ", period "
            << r.cycle->period << ", multiplier " << r.cycle->multiplier << '\n';
    }
    for (const auto& s : r.failures) out << "  " << s << '\n';
    out << (r.all_pass() ? "all conditions hold\n" : "conditions fail\n");
    return kOk;
}

json lifts_json(const padic::BackwardOrbit& b) {
    json l = json::array();
    for (const auto& x : b.points) l.push_back({{"precision", x.k}, {"residue", x.residue.get_str()}});
    return l;
}

int cmd_lift(const Args& a, std::ostream& out) {
    const auto f = get_map(a.map);
    const auto x = get_point(a.point);
    const auto v = get_prime(a.prime);
    const auto b = padic::backward_orbit_local(f, x, v, a.count, a.precision);
    json j = header();
    j["map"] = to_string(f);
    j["point"] = exactcore::to_string(x);
    j["prime"] = v.p;
    j["period"] = b.period;
    j["chart_swapped"] = b.chart_swapped;
    j["lifts"] = lifts_json(b);
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    out << "backward orbit under f^" << b.period << " at p = " << v.p << ", precision p^" << b.precision
        << (b.chart_swapped ? " (coordinate 1/x)" : "") << '\n';
    for (std::size_t i = 0; i < b.points.size(); ++i) out << "  alpha_" << i << " = " << b.points[i].residue << '\n';
    return kOk;
}

std::string verdict_name(const galois::GaloisVerdict& v) { return galois::is_abelian(v) ? "Abelian" : "NonAbelian"; }

json level_json(const tower::TowerLevel& lvl) {
    json l;
    l["level"] = lvl.n;
    l["abelian"] = lvl.level_abelian;
    l["degree_drop"] = lvl.degree_drop;
    l["factors"] = json::array();
    for (const auto& fv : lvl.verdicts) {
        l["factors"].push_back({{"poly", to_string(fv.factor)},
                                {"multiplicity", fv.multiplicity},
                                {"verdict", verdict_name(fv.verdict)},
                                {"witness", verdict_witness_to_json(fv.verdict)}});
    }
    return l;
}

void print_levels(const std::vector<tower::TowerLevel>& levels, std::ostream& out) {
    for (const auto& lvl : levels) {
        out << "level " << lvl.n << ": " << (lvl.level_abelian ? "Abelian" : "NonAbelian") << '\n';
        for (const auto& fv : lvl.verdicts) {
            out << "  " << to_string(fv.factor);
            if (fv.multiplicity > 1) out << "  ^" << fv.multiplicity;
            out << "  " << galois::describe(fv.verdict) << '\n';
        }
    }
}

int cmd_tower(const Args& a, std::ostream& out) {
    const auto f = get_map(a.map);
    const auto x = get_point(a.point);
    const auto levels = tower::analyze_tower(f, x, a.levels);
    json j = header();
    j["map"] = to_string(f);
    j["point"] = exactcore::to_string(x);
    j["tower"] = json::array();
    for (const auto& lvl : levels) j["tower"].push_back(level_json(lvl));
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    print_levels(levels, out);
    return kOk;
}

int cmd_galois(const Args& a, std::ostream& out) {
    IntPoly g;
    try {
        g = exactcore::parse_poly(a.poly);
    } catch (const ParseError& e) {
        throw UsageError("--poly", e.what());
    }
    if (g.degree() < 1) throw UsageError("--poly", "needs a nonconstant polynomial");
    const auto fac = galois::factor_over_Q(g);
    std::vector<galois::GaloisVerdict> verdicts;
    for (const auto& [h, m] : fac.factors) verdicts.push_back(galois::is_abelian_galois(h));
    json j = header();
    j["poly"] = to_string(g);
    j["unit"] = fac.unit.get_str();
    j["factors"] = json::array();
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        j["factors"].push_back({{"poly", to_string(fac.factors[i].first)},
                                {"multiplicity", fac.factors[i].second},
                                {"verdict", verdict_name(verdicts[i])},
                                {"witness", verdict_witness_to_json(verdicts[i])}});
    }
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    out << to_string(g) << " = " << fac.unit.get_str();
    for (const auto& [h, m] : fac.factors) out << " * (" << to_string(h) << ")" << (m > 1 ? "^" + std::to_string(m) : "");
    out << '\n';
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        out << "  " << to_string(fac.factors[i].first) << ": " << galois::describe(verdicts[i]) << '\n';
    }
    return kOk;
}

int cmd_family(const Args& a, std::ostream& out) {
    const auto f = get_map(a.map);
    const auto tag = tower::detect_family(f);
    json j = header();
    j["map"] = to_string(f);
    j["family"] = tower::to_string(tag);
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    out << tower::to_string(tag) << '\n';
    return kOk;
}

int cmd_conj(const Args& a, std::ostream& out) {
    const auto f = get_map(a.map);
    const auto g = get_map(a.target, "--target");
    const auto phis = tower::affine_conjugators(f, g);
    json j = header();
    j["map"] = to_string(f);
    j["target"] = to_string(g);
    j["conjugators"] = json::array();
    for (const auto& phi : phis) {
        j["conjugators"].push_back({{"field", to_string(phi.field)},
                                    {"a", tpoly(phi.a_in_field)},
                                    {"b", tpoly(phi.b_in_field)},
                                    {"a_numeric", tower::to_string(phi.a)},
                                    {"b_numeric", tower::to_string(phi.b)}});
    }
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    out << phis.size() << " affine maps phi(x) = a x + b with phi^-1 o f o phi = target\n";
    for (const auto& phi : phis) {
        out << "  a = " << tower::to_string(phi.a) << ", b = " << tower::to_string(phi.b) << '\n';
    }
    return kOk;
}

int cmd_sintegral(const Args& a, std::ostream& out) {
    std::vector<ProjPointQ> X;
    for (const auto& s : split_list(a.points)) {
        try {
            X.push_back(exactcore::parse_point(s));
        } catch (const ParseError& e) {
            throw UsageError("--points", e.what());
        }
    }
    if (X.empty()) throw UsageError("--points", "needs at least one point");
    const integrality::PlaceSet minimal = integrality::minimal_S(X);
    integrality::PlaceSet S = minimal;
    const bool given = !a.primes.empty();
    if (given) {
        S.primes.clear();
        for (const auto& s : split_list(a.primes)) {
            Int p;
            if (p.set_str(s, 10) != 0 || p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
                throw UsageError("--primes", "'" + s + "' is not a prime");
            }
            S.primes.insert(p);
        }
    }
    json j = header();
    json pts = json::array();
    for (const auto& x : X) pts.push_back(exactcore::to_string(x));
    j["points"] = pts;
    json ms = json::array();
    for (const auto& p : minimal.primes) ms.push_back(p.get_str());
    j["minimal_S"] = ms;
    std::optional<integrality::IntegralityResult> res;
    if (given) {
        res = integrality::is_S_integral_set(X, S);
        j["integral"] = res->integral;
        if (res->witness) {
            j["witness"] = {{"x", exactcore::to_string(res->witness->x)},
                            {"y", exactcore::to_string(res->witness->y)},
                            {"prime", res->witness->p.get_str()}};
        }
    }
    std::vector<integrality::ExtensionCount> table;
    if (!a.table.empty()) {
        std::vector<long> bounds;
        for (const auto& s : split_list(a.table)) {
            try {
                bounds.push_back(std::stol(s));
            } catch (const std::exception&) {
                throw UsageError("--table", "'" + s + "' is not an integer");
            }
            if (bounds.back() < 1) throw UsageError("--table", "bounds must be positive");
        }
        table = integrality::extension_counts(X, S, bounds);
        json t = json::array();
        for (const auto& row : table) t.push_back({{"N", row.N}, {"count", row.count}});
        j["extension_counts"] = t;
    }
    if (a.json) {
        emit(out, j);
        return kOk;
    }
    out << "minimal S:";
    for (const auto& p : minimal.primes) out << ' ' << p.get_str();
    out << (minimal.primes.empty() ? " (empty)\n" : "\n");
    if (res) {
        out << "S-integral: " << yes_no(res->integral) << '\n';
        if (res->witness) {
            out << "  " << exactcore::to_string(res->witness->x) << " and " << exactcore::to_string(res->witness->y)
                << " meet mod " << res->witness->p.get_str() << '\n';
        }
    }
    for (const auto& row : table) out << "N = " << row.N << ": " << row.count << " extensions\n";
    return kOk;
}

int cmd_witness(const Args& a, std::ostream& out, std::ostream& err) {
    const auto f = get_map(a.map);
    const auto x = get_point(a.point);
    tower::WitnessOptions opts;
    opts.lift_count = a.count;
    opts.precision = a.precision;
    try {
        const auto cert = tower::witness_pipeline(f, x, a.pmax, a.levels, opts);
        if (a.json) {
            emit(out, certificate_to_json(cert));
            return kOk;
        }
        const auto& r = cert.report;
        out << "witness prime p = " << cert.prime.p << " (M = " << cert.M << ")\n";
        out << "residue cycle: tail " << r.cycle->tail << ", period " << r.cycle->period << ", multiplier "
            << r.cycle->multiplier << '\n';
        out << "backward orbit at precision p^" << cert.lifts.precision << ":";
        for (const auto& pt : cert.lifts.points) out << ' ' << pt.residue;
        out << '\n';
        print_levels(cert.tower, out);
        if (cert.tower_evidence) {
            out << "nonabelian at level " << cert.tower_evidence->level << ": " << to_string(cert.tower_evidence->factor)
                << "  " << galois::describe(galois::GaloisVerdict{cert.tower_evidence->witness}) << '\n';
        }
        return kOk;
    } catch (const tower::NoWitnessFound& e) {
        if (a.json) {
            json j = header();
            j["error"] = "no_witness";
            j["pmax"] = e.pmax();
            j["reasons"] = json::array();
            for (const auto& [p, why] : e.reasons()) j["reasons"].push_back({{"prime", p}, {"reason", why}});
            emit(out, j);
        }
        err << "no witness prime up to " << e.pmax() << '\n';
        for (const auto& [p, why] : e.reasons()) err << "  p = " << p << ": " << why << '\n';
        return kResourceLimit;
    }
}

// Restores global library state when a run ends.
struct StateGuard {
    std::shared_ptr<galois::FactorStore> store = galois::factor_store();
    kernels::Mode mode = kernels::mode();
    ~StateGuard() {
        galois::set_factor_store(store);
        kernels::set_mode(mode);
        kernels::set_threads(0);
    }
};

}  // namespace

json verdict_witness_to_json(const galois::GaloisVerdict& v) {
    if (const auto* ab = std::get_if<galois::Abelian>(&v)) {
        json maps = json::array();
        for (const auto& r : ab->root_maps) maps.push_back(tpoly(r));
        return {{"kind", "root_maps"}, {"root_maps", maps}};
    }
    const auto& w = std::get<galois::NonAbelian>(v).witness;
    if (const auto* u = std::get_if<galois::UnequalDegrees>(&w)) {
        return {{"kind", "unequal_degrees"}, {"p", u->p}, {"degrees", u->degrees}};
    }
    if (const auto* n = std::get_if<galois::NotNormal>(&w)) {
        json c = json::array();
        for (const auto& e : n->nonlinear_factor) c.push_back(tpoly(e));
        return {{"kind", "not_normal"}, {"factor", c}};
    }
    const auto& nc = std::get<galois::NonCommutingPair>(w);
    return {{"kind", "non_commuting"}, {"i", nc.i}, {"j", nc.j}, {"first", tpoly(nc.first)}, {"second", tpoly(nc.second)}};
}

galois::GaloisVerdict verdict_from_json(const std::string& verdict, const json& w) {
    const std::string kind = w.at("kind").get<std::string>();
    if (verdict == "Abelian") {
        if (kind != "root_maps") throw Error("Abelian verdict needs root maps");
        galois::Abelian ab;
        for (const auto& r : w.at("root_maps")) ab.root_maps.push_back(parse_tpoly(r.get<std::string>()));
        return ab;
    }
    if (verdict != "NonAbelian") throw Error("unknown verdict '" + verdict + "'");
    if (kind == "unequal_degrees") {
        return galois::NonAbelian{galois::UnequalDegrees{w.at("p").get<u64>(), w.at("degrees").get<std::vector<int>>()}};
    }
    if (kind == "not_normal") {
        galois::NotNormal nn;
        for (const auto& c : w.at("factor")) nn.nonlinear_factor.push_back(parse_tpoly(c.get<std::string>()));
        return galois::NonAbelian{nn};
    }
    if (kind == "non_commuting") {
        return galois::NonAbelian{galois::NonCommutingPair{w.at("i").get<int>(), w.at("j").get<int>(),
                                                           parse_tpoly(w.at("first").get<std::string>()),
                                                           parse_tpoly(w.at("second").get<std::string>())}};
    }
    throw Error("unknown witness kind '" + kind + "'");
}

json certificate_to_json(const tower::WitnessCertificate& c) {
    json j = header();
    j["map"] = to_string(c.map);
    j["point"] = exactcore::to_string(c.point);
    j["prime"] = c.prime.p;
    j["M"] = c.M;
    j["chart_swapped"] = c.report.chart_swapped;
    j["conditions"] = conditions_json(c.report);
    j["cycle"] = cycle_json(*c.report.cycle, c.prime.p);
    j["lifts"] = lifts_json(c.lifts);
    j["tower"] = json::array();
    for (const auto& lvl : c.tower) j["tower"].push_back(level_json(lvl));
    if (c.tower_evidence) {
        j["evidence"] = {{"level", c.tower_evidence->level},
                         {"factor", to_string(c.tower_evidence->factor)},
                         {"witness", verdict_witness_to_json(galois::GaloisVerdict{c.tower_evidence->witness})}};
    }
    return j;
}

tower::WitnessCertificate certificate_from_json(const json& j) {
    tower::WitnessCertificate c{exactcore::parse_map(j.at("map").get<std::string>()),
                                exactcore::parse_point(j.at("point").get<std::string>()),
                                residue::make_place(j.at("prime").get<u64>()), 0, {}, {}, {}, std::nullopt};
    const u64 p = c.prime.p;
    c.M = j.at("M").get<int>();

    auto& r = c.report;
    r.p = p;
    r.d = c.map.degree();
    r.M = c.M;
    r.chart_swapped = j.at("chart_swapped").get<bool>();
    const auto& cond = j.at("conditions");
    r.A = cond.at("A").get<bool>();
    r.B = cond.at("B").get<bool>();
    r.C = cond.at("C").get<bool>();
    r.D = cond.at("D").get<bool>();
    r.E = cond.at("E").get<bool>();
    r.unit_multiplier = cond.at("unit_multiplier").get<bool>();
    const auto& cyc = j.at("cycle");
    residue::CycleData cd;
    cd.tail = cyc.at("tail").get<int>();
    cd.period = cyc.at("period").get<int>();
    cd.multiplier = std::stoull(cyc.at("multiplier").get<std::string>());
    for (const auto& x : cyc.at("points")) cd.cycle_points.push_back(parse_residue(x, p));
    r.cycle = cd;
    if (!cd.cycle_points.empty()) r.alpha_residue = cd.cycle_points.front();

    c.lifts.period = cd.period;
    c.lifts.chart_swapped = r.chart_swapped;
    for (const auto& l : j.at("lifts")) {
        padic::PadicInt x;
        x.p = p;
        x.k = l.at("precision").get<int>();
        if (x.k < 1 || x.k > padic::kMaxPrecision) throw Error("lift precision out of range");
        if (x.residue.set_str(l.at("residue").get<std::string>(), 10) != 0) throw Error("lift residue is not an integer");
        c.lifts.points.push_back(std::move(x));
    }
    if (!c.lifts.points.empty()) c.lifts.precision = c.lifts.points.front().k;

    for (const auto& lj : j.at("tower")) {
        tower::TowerLevel lvl;
        lvl.n = lj.at("level").get<int>();
        lvl.level_abelian = lj.at("abelian").get<bool>();
        lvl.degree_drop = lj.at("degree_drop").get<int>();
        for (const auto& fj : lj.at("factors")) {
            tower::FactorVerdict fv;
            fv.factor = exactcore::parse_poly(fj.at("poly").get<std::string>());
            fv.multiplicity = fj.at("multiplicity").get<int>();
            fv.verdict = verdict_from_json(fj.at("verdict").get<std::string>(), fj.at("witness"));
            lvl.verdicts.push_back(std::move(fv));
        }
        c.tower.push_back(std::move(lvl));
    }
    if (j.contains("evidence")) {
        const auto& e = j.at("evidence");
        const auto v = verdict_from_json("NonAbelian", e.at("witness"));
        c.tower_evidence = tower::TowerEvidence{e.at("level").get<int>(), exactcore::parse_poly(e.at("factor").get<std::string>()),
                                                std::get<galois::NonAbelian>(v)};
    }
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Args a;
    CLI::App app{"Arboreal Galois towers of post-critically finite rational maps", "arborlab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", a.json, "emit JSON");
    app.add_option("--cache-dir", a.cache_dir, "directory for cached factorizations (ARBORLAB_CACHE overrides)");
    app.add_option("--threads", a.threads, "worker threads for prime scans (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_flag("--serial", a.serial, "use the serial reference kernels");

    const auto map_opt = [&](CLI::App* s) { s->add_option("--map", a.map, "rational map, e.g. (x^2-1)/(x^2+1)")->required(); };
    const auto point_opt = [&](CLI::App* s) { s->add_option("--point", a.point, "rational number or inf")->required(); };
    const auto prime_opt = [&](CLI::App* s) { s->add_option("--prime", a.prime, "prime p")->required(); };
    const auto pmax_opt = [&](CLI::App* s) { s->add_option("--pmax", a.pmax, "largest prime tried")->capture_default_str(); };
    const auto levels_opt = [&](CLI::App* s) {
        s->add_option("--levels", a.levels, "tower levels")->capture_default_str()->check(CLI::PositiveNumber);
    };
    const auto precision_opt = [&](CLI::App* s) {
        s->add_option("--precision", a.precision, "p-adic precision k")->capture_default_str()->check(CLI::Range(1, padic::kMaxPrecision));
    };
    const auto count_opt = [&](CLI::App* s) {
        s->add_option("--count", a.count, "backward-orbit points beyond the base point")->capture_default_str()->check(CLI::NonNegativeNumber);
    };

    auto* pcf = app.add_subcommand("pcf", "post-critical finiteness certificate");
    map_opt(pcf);
    auto* orbit = app.add_subcommand("orbit", "orbit class, heights and exceptionality of a point");
    map_opt(orbit);
    point_opt(orbit);
    orbit->add_option("--steps", a.steps, "iterations for the canonical height estimate")->capture_default_str()->check(CLI::Range(1, 60));
    auto* places = app.add_subcommand("places", "primes where the point is periodic mod p");
    map_opt(places);
    point_opt(places);
    pmax_opt(places);
    auto* conditions = app.add_subcommand("conditions", "the good-prime conditions at one prime");
    map_opt(conditions);
    point_opt(conditions);
    prime_opt(conditions);
    auto* lift = app.add_subcommand("lift", "p-adic backward orbit along the residue cycle");
    map_opt(lift);
    point_opt(lift);
    prime_opt(lift);
    precision_opt(lift);
    count_opt(lift);
    auto* tw = app.add_subcommand("tower", "Galois verdicts for the levels of the preimage tower");
    map_opt(tw);
    point_opt(tw);
    levels_opt(tw);
    auto* gal = app.add_subcommand("galois", "factor a polynomial and decide whether each factor is abelian");
    gal->add_option("--poly", a.poly, "integer polynomial in x")->required();
    auto* fam = app.add_subcommand("family", "power / Chebyshev family detection");
    map_opt(fam);
    auto* conj = app.add_subcommand("conj", "affine conjugacies between two polynomial maps");
    map_opt(conj);
    conj->add_option("--target", a.target, "second polynomial map")->required();
    auto* sint = app.add_subcommand("sintegral", "S-integrality of a finite point set");
    sint->add_option("--points", a.points, "comma-separated points, e.g. 0,inf,6")->required();
    sint->add_option("--primes", a.primes, "comma-separated primes in S (default: minimal S)");
    sint->add_option("--table", a.table, "comma-separated bounds N for an extension count table");
    auto* wit = app.add_subcommand("witness", "search for a witness prime and build a certificate");
    map_opt(wit);
    point_opt(wit);
    pmax_opt(wit);
    levels_opt(wit);
    precision_opt(wit);
    count_opt(wit);

    std::vector<std::string> argv{"arborlab"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<char*> cargv;
    for (auto& s : argv) cargv.push_back(s.data());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    StateGuard guard;
    try {
        std::string dir = a.cache_dir;
        if (const char* env = std::getenv("ARBORLAB_CACHE"); env && *env) dir = env;
        if (!dir.empty()) galois::set_factor_store(std::make_shared<cache::DiskFactorStore>(dir));
        if (a.threads > 0) kernels::set_threads(a.threads);
        if (a.serial) kernels::set_mode(kernels::Mode::Serial);

        if (*pcf) return cmd_pcf(a, out);
        if (*orbit) return cmd_orbit(a, out);
        if (*places) return cmd_places(a, out);
        if (*conditions) return cmd_conditions(a, out);
        if (*lift) return cmd_lift(a, out);
        if (*tw) return cmd_tower(a, out);
        if (*gal) return cmd_galois(a, out);
        if (*fam) return cmd_family(a, out);
        if (*conj) return cmd_conj(a, out);
        if (*sint) return cmd_sintegral(a, out);
        return cmd_witness(a, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << '\n';
        return kPrecondition;
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResourceLimit;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kResourceLimit;
    }
}

}  // namespace arborlab::cli
