#include "repzeta/euler.hpp"
#include "repzeta/oracle.hpp"
#include "repzeta/orbits.hpp"
#include "repzeta/verify.hpp"
#include "repzeta/zeta.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef REPZETA_VERSION
#define REPZETA_VERSION "unknown"
#endif

using namespace repzeta;
using nlohmann::json;

namespace {

struct Config {
    std::string group = "gl3";
    std::int64_t q = 5;
    int level = 2;
    std::string ring = "mixed";
    std::string base = "builtin";
    std::string base_file;
    std::string out = "json";
    std::string output;
    int threads = 1;

    // zeta
    std::string component = "full";
    double bound = 1e8;
    std::string delta = "0";
    // orbits
    std::string census = "level1";
    std::string at = "diag(1,1,2)";
    // oracle
    std::string action = "dixon";
    // euler
    std::string field = "Fp(t)";
    int p = 5;
    double s = 1.0;
    int cutoff = 8;
    bool probe = false;
    int level_cap = 40;
    // verify
    std::string suite = "all";
    int criterion = 0;
};

std::pair<int, int> split_prime_power(std::int64_t q) {
    if (q < 2) throw Error("BadArgument", "q must be a prime power");
    for (std::int64_t p = 2; p <= q; ++p)
        if (q % p == 0) {
            int f = 0;
            std::int64_t r = q;
            while (r % p == 0) {
                r /= p;
                ++f;
            }
            if (r != 1 || !is_prime(p)) throw Error("BadArgument", "q must be a prime power, got " + std::to_string(q));
            return {static_cast<int>(p), f};
        }
    throw Error("BadArgument", "q must be a prime power");
}

LocalRing ring_of(const Config& c, int level) {
    auto [p, f] = split_prime_power(c.q);
    return LocalRing(p, f, level, parse_kind(c.ring));
}

std::string oracle_cache_state() {
    const char* dir = std::getenv("REPZETA_CACHE_DIR");
    return dir && *dir ? dir : "";
}

json config_json(const std::string& sub, const Config& c) {
    json j = {{"subcommand", sub}, {"code_version", REPZETA_VERSION}, {"threads", c.threads}};
    if (sub == "zeta" || sub == "orbits" || sub == "oracle") {
        j["group"] = c.group;
        j["q"] = c.q;
        j["level"] = c.level;
        j["ring"] = c.ring;
    }
    if (sub == "zeta") {
        j["base"] = c.base;
        if (!c.base_file.empty()) j["base_file"] = c.base_file;
        j["component"] = c.component;
        j["bound"] = c.bound;
        j["delta"] = c.delta;
    }
    if (sub == "orbits") {
        j["census"] = c.census;
        if (c.census == "fibre") j["at"] = c.at;
        j["delta"] = c.delta;
    }
    if (sub == "oracle") {
        j["action"] = c.action;
        j["delta"] = c.delta;
    }
    if (sub == "euler") {
        j["group"] = c.group;
        j["field"] = c.field;
        j["p"] = c.p;
        j["s"] = c.s;
        j["cutoff"] = c.cutoff;
        j["probe"] = c.probe;
        j["level_cap"] = c.level_cap;
    }
    if (sub == "verify") {
        j["suite"] = c.suite;
        if (c.criterion) j["criterion"] = c.criterion;
    }
    if (sub == "zeta" || sub == "oracle") j["oracle_cache_dir"] = oracle_cache_state();
    return j;
}

bool delta_pi(const Config& c) {
    if (c.delta == "0") return false;
    if (c.delta == "pi") return true;
    throw Error("BadArgument", "delta must be 0 or pi");
}

// "diag(a,b,c)" with integer entries, at level 1
Mat parse_diag(const LocalRing& R1, const std::string& s) {
    if (s.rfind("diag(", 0) != 0 || s.back() != ')') throw Error("BadArgument", "--at expects diag(a,b,...)");
    std::vector<QuadElem> entries;
    std::string body = s.substr(5, s.size() - 6), tok;
    std::stringstream ss(body);
    while (std::getline(ss, tok, ','))
        entries.push_back(R1.embed(R1.from_int(std::stoll(tok))));
    if (entries.empty() || entries.size() > 3) throw Error("BadArgument", "--at needs 1 to 3 entries");
    return mat_diag(R1, entries);
}

void emit(const Config& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.output);
    if (!f) throw Error("IO", "cannot write " + c.output);
    f << text;
}

void emit_json(const Config& c, const std::string& sub, json result) {
    json doc = {{"config", config_json(sub, c)}, {"result", std::move(result)}};
    emit(c, doc.dump(2) + "\n");
}

int run_zeta(const Config& c) {
    GroupId G = parse_group(c.group);
    LocalRing R = ring_of(c, c.level);
    BaseProvider base = BaseProvider::parse(c.base, c.base_file);
    json result;
    if (c.component == "full") result = zeta_full(G, R, base).to_json();
    else if (c.component == "regular") result = zeta_regular(G, c.q, c.level).to_json();
    else if (c.component == "E") result = zeta_E_closed(G, c.q, c.level).to_json();
    else if (c.component == "E-explicit") result = zeta_E_explicit(G, R, c.bound).to_json();
    else if (c.component == "J") result = zeta_J(c.q, G.eps(), c.level).to_json();
    else if (c.component == "J-recursive") result = zeta_J(c.q, G.eps(), c.level, true).to_json();
    else if (c.component == "Jprime") result = zeta_Jprime(c.q, G.eps(), c.level).to_json();
    else if (c.component == "shadow-lift") result = shadow_lift_check(G, R, delta_pi(c)).to_json();
    else if (c.component == "decomposable") {
        DecomposableReading d = zeta_decomposable(G, R, base);
        result = {{"component", d.component.to_json()},
                  {"orbit_count", d.orbit_count.str()},
                  {"orbit_constant", d.orbit_constant.str()},
                  {"level_constant", d.level_constant.str()},
                  {"orbit_block_sum", d.orbit_block_sum},
                  {"level_block_sum", d.level_block_sum},
                  {"chosen", d.chosen.str()}};
    } else throw Error("BadArgument", "unknown component " + c.component);
    if (c.out == "csv") {
        if (c.component == "shadow-lift") throw Error("BadArgument", "csv output is not available for shadow-lift");
        const json& z = c.component == "full" ? result["total"] : c.component == "decomposable" ? result["component"] : result;
        DirichletPoly poly = DirichletPoly::from_json(z);
        std::string text = "dim,mult\n";
        for (const auto& [d, m] : poly.terms()) text += d.str() + "," + m.str() + "\n";
        emit(c, text);
    } else emit_json(c, "zeta", result);
    return 0;
}

int run_orbits(const Config& c) {
    GroupId G = parse_group(c.group);
    OrbitCensus cen;
    if (c.census == "level1") cen = level1_census(G, c.q);
    else if (c.census == "regular") cen = regular_census(G, c.q);
    else if (c.census == "brute") cen = brute_force_census(G, ring_of(c, c.level));
    else if (c.census == "branching") cen = branching_fiber(G.eps(), c.q);
    else if (c.census == "branching-brute") cen = branching_fiber_brute(ring_of(c, c.level), G.eps(), delta_pi(c));
    else if (c.census == "coadjoint") cen = j_coadjoint_census(c.q, G.eps());
    else if (c.census == "coadjoint-brute") cen = j_coadjoint_brute(ring_of(c, 1), G.eps());
    else if (c.census == "fibre") cen = fibre_census(ring_of(c, 2), G, parse_diag(ring_of(c, 1), c.at));
    else throw Error("BadArgument", "unknown census " + c.census);
    if (c.out == "csv") emit(c, cen.to_csv());
    else {
        json r = cen.to_json();
        r["orbits"] = cen.orbits().str();
        r["points"] = cen.points().str();
        r["closed"] = cen.closed();
        emit_json(c, "orbits", r);
    }
    return 0;
}

int run_oracle(const Config& c) {
    GroupSpec spec = GroupSpec::parse(c.group, delta_pi(c));
    LocalRing R = ring_of(c, c.level);
    json r = {{"group", spec.name()}, {"order", spec.order(R.q(), R.ell()).str()}};
    if (c.action == "dixon") {
        DirichletPoly d = oracle_degrees(spec, R);
        r["degrees"] = d.to_json();
        r["degrees_text"] = d.str();
        r["sum_d2_equals_order"] = d.at_neg(2) == spec.order(R.q(), R.ell());
        r["cache_key"] = oracle_cache_key(spec, R, "degrees");
    } else if (c.action == "classes") {
        r["classes"] = oracle_class_count(spec, R).str();
        r["cache_key"] = oracle_cache_key(spec, R, "classes");
    } else throw Error("BadArgument", "oracle action must be dixon or classes");
    emit_json(c, "oracle", r);
    return 0;
}

int run_euler(const Config& c) {
    GroupId G = parse_group(c.group);
    GlobalField field = parse_field(c.field);
    if (c.probe) {
        PoleProbe pr = pole_probe(G, field, c.p, c.cutoff, c.level_cap);
        if (c.out == "csv") emit(c, pr.at_one.to_csv());
        else emit_json(c, "euler", pr.to_json());
        return 0;
    }
    EulerEstimate e = partial_product(G, field, c.p, c.s, c.cutoff, c.level_cap);
    if (c.out == "csv") emit(c, e.to_csv());
    else emit_json(c, "euler", e.to_json());
    return 0;
}

int run_verify(const Config& c) {
    std::vector<CheckResult> results;
    auto report = [](const CheckResult& r) { std::cerr << r.line() << std::endl; };
    if (c.criterion) {
        results.push_back(run_criterion(c.criterion));
        report(results.back());
    } else results = run_suite(c.suite, report);
    json ledger = suite_json(c.criterion ? "criterion " + std::to_string(c.criterion) : c.suite, results);
    emit_json(c, "verify", ledger);
    return ledger["pass"].get<bool>() ? 0 : 1;
}

void add_ring_options(CLI::App* sub, Config& c) {
    sub->add_option("--group", c.group, "gl1..gl3, gu1..gu3, sl2, sl3, su2, su3 (oracle also jL, jU, jL', jU')");
    sub->add_option("--q", c.q, "residue field size (prime power, p > 3)");
    sub->add_option("--level", c.level, "level l of o_l");
    sub->add_option("--ring", c.ring, "mixed (Z_p-type) or equal (F_q[[t]]-type)")
        ->check(CLI::IsMember({"mixed", "equal"}));
}

}  // namespace

int main(int argc, char** argv) {
    Config c;
    CLI::App app{"Representation zeta functions of GL3, GU3, SL3, SU3 over compact discrete valuation rings"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out", c.out, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", c.output, "write to a file instead of stdout");
    app.add_option("--threads", c.threads, "worker cap (computations are single-threaded)")->check(CLI::PositiveNumber);

    auto* zeta = app.add_subcommand("zeta", "zeta function at level l with all checks");
    add_ring_options(zeta, c);
    zeta->add_option("--base", c.base, "level-1 degree provider: builtin, oracle or file")
        ->check(CLI::IsMember({"builtin", "oracle", "file"}));
    zeta->add_option("--base-file", c.base_file, "JSON degree tables for --base file");
    zeta->add_option("--component", c.component,
                     "full, regular, E, E-explicit, J, J-recursive, Jprime, decomposable, shadow-lift");
    zeta->add_option("--bound", c.bound, "parameter bound for E-explicit");
    zeta->add_option("--delta", c.delta, "0 or pi (shadow-lift)");

    auto* orbits = app.add_subcommand("orbits", "orbit censuses");
    add_ring_options(orbits, c);
    orbits->add_option("--census", c.census,
                       "level1, regular, brute, branching, branching-brute, coadjoint, coadjoint-brute, fibre");
    orbits->add_option("--at", c.at, "fibre base point, e.g. diag(1,1,2)");
    orbits->add_option("--delta", c.delta, "0 or pi (branching-brute)");

    auto* oracle = app.add_subcommand("oracle", "Dixon degrees and class counts (cached in REPZETA_CACHE_DIR)");
    oracle->add_option("action", c.action, "dixon or classes")->check(CLI::IsMember({"dixon", "classes"}));
    add_ring_options(oracle, c);
    oracle->add_option("--delta", c.delta, "0 or pi (J-groups)");

    auto* euler = app.add_subcommand("euler", "partial Euler products and the pole probe");
    euler->add_option("--group", c.group, "sl3 or su3");
    euler->add_option("--field", c.field, "Fp(t) or Q");
    euler->add_option("--p", c.p, "characteristic of the function field");
    euler->add_option("--s", c.s, "real s >= 1");
    euler->add_option("--cutoff", c.cutoff, "maximal place degree (Fp(t)) or prime (Q)");
    euler->add_flag("--probe", c.probe, "pole probe at s = 1 with R statistics");
    euler->add_option("--level-cap", c.level_cap, "maximal level per local factor");

    auto* verify = app.add_subcommand("verify", "run an acceptance suite; exit 1 on any failure");
    verify->add_option("--suite", c.suite, "identities, uniformity, nilpotent, censuses, euler, all")
        ->check(CLI::IsMember({"identities", "uniformity", "nilpotent", "censuses", "euler", "all"}));
    verify->add_option("--criterion", c.criterion, "run one criterion (1..11)")->check(CLI::Range(1, kCriteria));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        if (sub == "zeta") return run_zeta(c);
        if (sub == "orbits") return run_orbits(c);
        if (sub == "oracle") return run_oracle(c);
        if (sub == "euler") return run_euler(c);
        return run_verify(c);
    } catch (const Error& e) {
        std::string msg = e.what();
        if (msg.rfind(e.code() + ": ", 0) == 0) msg = msg.substr(e.code().size() + 2);
        json err = {{"config", config_json(sub, c)}, {"error", {{"code", e.code()}, {"message", msg}}}};
        std::cout << err.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err = {{"config", config_json(sub, c)}, {"error", {{"code", "Internal"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
}
