#include "repzeta/verify.hpp"

#include "repzeta/euler.hpp"
#include "repzeta/oracle.hpp"
#include "repzeta/orbits.hpp"
#include "repzeta/zeta.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace repzeta {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class Ledger {
public:
    explicit Ledger(CheckResult& r) : r_(r) {}
    bool add(const std::string& check, const std::string& expected, const std::string& actual, bool ok) {
        r_.detail.push_back({{"check", check}, {"expected", expected}, {"actual", actual}, {"pass", ok}});
        ++total_;
        if (ok) ++passed_;
        else if (first_bad_.empty()) first_bad_ = check + ": expected " + expected + ", got " + actual;
        return ok;
    }
    bool same(const std::string& check, const std::string& expected, const std::string& actual) {
        return add(check, expected, actual, expected == actual);
    }
    void finish(const std::string& unit) {
        r_.pass = total_ > 0 && passed_ == total_;
        r_.expected = std::to_string(total_) + " " + unit;
        r_.actual = std::to_string(passed_) + "/" + std::to_string(total_) + " hold";
        if (!first_bad_.empty()) r_.actual += "; first failure " + first_bad_;
    }

private:
    CheckResult& r_;
    int total_ = 0, passed_ = 0;
    std::string first_bad_;
};

const std::vector<std::string> kBig = {"gl3", "gu3", "sl3", "su3"};
const std::vector<std::string> kSmall = {"gl2", "gu2", "sl2", "su2"};

std::string tag(const std::string& g, std::int64_t q, int ell) {
    return g + " q=" + std::to_string(q) + " l=" + std::to_string(ell);
}

void order_identity(Ledger& L) {
    BaseProvider builtin;
    for (const auto& g : kBig)
        for (int q : {5, 7, 11})
            for (int ell = 1; ell <= 4; ++ell) {
                GroupId G = parse_group(g);
                ZetaReport rep = zeta_full(G, LocalRing(q, 1, ell, CharKind::Mixed), builtin);
                L.same("zeta(-2) " + tag(g, q, ell), group_order(G, q, ell).str(), rep.total.at_neg(2).str());
            }
    // the same identity with the level-1 tables taken from the Dixon oracle
    BaseProvider oracle(BaseProvider::Kind::Oracle);
    for (const auto& g : kBig)
        for (int ell = 1; ell <= 4; ++ell) {
            GroupId G = parse_group(g);
            LocalRing R(5, 1, ell, CharKind::Mixed);
            ZetaReport rep = zeta_full(G, R, oracle);
            L.same("zeta(-2) oracle base " + tag(g, 5, ell), group_order(G, 5, ell).str(), rep.total.at_neg(2).str());
            L.same("oracle base = builtin base " + tag(g, 5, ell), zeta_total(G, R, builtin).str(), rep.total.str());
        }
}

void j_ground_truth(Ledger& L) {
    LocalRing R1(5, 1, 1, CharKind::Mixed);
    FastRing F(R1);
    const std::vector<std::tuple<int, std::string, std::string>> cases = {{1, "jl", "{1:16, 4:24, 5:64}"},
                                                                          {-1, "ju", "{1:36, 5:144, 6:24}"}};
    for (const auto& [eps, name, literal] : cases) {
        auto t0 = Clock::now();
        auto T = build_group(GroupSpec::j(eps), F);
        Partition P = conjugacy_classes(*T);
        DixonResult dx = dixon_degrees(*T, P);
        const double secs = since(t0);
        L.same(name + "(F5) Dixon vs closed form", zeta_J(5, eps, 1).str(), dx.degrees.str());
        L.same(name + "(F5) Dixon vs frozen value", literal, dx.degrees.str());
        std::ostringstream os;
        os << std::fixed << std::setprecision(1) << secs << "s";
        L.add(name + "(F5) Dixon runtime", "< 60s", os.str(), secs < 60);
    }
}

void nilpotent_routes(Ledger& L) {
    for (const auto& g : kBig)
        for (int q : {5, 7})
            for (int ell = 2; ell <= 4; ++ell) {
                GroupId G = parse_group(g);
                DirichletPoly closed = zeta_E_closed(G, q, ell);
                DirichletPoly expl = zeta_E_explicit(G, LocalRing(q, 1, ell, CharKind::Mixed), 1e9);
                L.same("zeta_E explicit vs closed " + tag(g, q, ell), closed.str(), expl.str());
            }
}

void j_recursion(Ledger& L) {
    for (int q : {5, 7, 11, 13})
        for (int eps : {1, -1})
            for (int ell = 1; ell <= 6; ++ell)
                L.same("zeta_J closed vs recursive eps=" + std::to_string(eps) + " " + tag("J", q, ell),
                       zeta_J(q, eps, ell).str(), zeta_J(q, eps, ell, true).str());
    int bad = 0;
    std::string first;
    for (int ell = 0; ell <= 64; ++ell)
        for (int m = 0; m <= ell; ++m) {
            auto v = LevelSplit::make(ell, m).violations();
            if (!v.empty() && ell >= 1 && m >= 1) {
                if (first.empty()) first = "l=" + std::to_string(ell) + " m=" + std::to_string(m) + " " + v.front();
                ++bad;
            }
        }
    L.add("level-split properties, 1 <= m <= l <= 64", "0 violations",
          std::to_string(bad) + " violations" + (first.empty() ? "" : " (" + first + ")"), bad == 0);
}

BigInt kind_points(const OrbitCensus& c, const std::string& prefix) {
    BigInt n = 0;
    for (const auto& r : c.rows)
        if (r.type.rfind(prefix, 0) == 0) n += r.count * r.size;
    return n;
}

void census_reconciliation(Ledger& L) {
    LocalRing R1(5, 1, 1, CharKind::Mixed);
    const BigInt total = bpow(BigInt(5), 9);
    for (const auto& g : {"gl3", "gu3"}) {
        GroupId G = parse_group(g);
        OrbitCensus brute = brute_force_census(G, R1);
        OrbitCensus closed = level1_census(G, 5);
        L.add(std::string(g) + "(F5) exhaustive census = closed census", closed.to_json()["rows"].dump(),
              brute.grouped().to_json()["rows"].dump(), brute.same_rows(closed));
        L.add(std::string(g) + "(F5) census closes", "true", brute.closed() ? "true" : "false", brute.closed());
        const BigInt reg = kind_points(brute, "regular"), sc = kind_points(brute, "scalar"),
                     dec = kind_points(brute, "decomposable"), tr = kind_points(brute, "nilpotent_translate");
        const std::string parts = reg.str() + " + " + sc.str() + " + " + dec.str() + " + " + tr.str();
        L.same(std::string(g) + " partition total", total.str(), BigInt(reg + sc + dec + tr).str());
        if (std::string(g) == "gl3") L.same("gl3 partition", "1933900 + 5 + 15500 + 3720", parts);
        else {
            const std::string closed_parts = kind_points(closed, "regular").str() + " + " +
                                             kind_points(closed, "scalar").str() + " + " +
                                             kind_points(closed, "decomposable").str() + " + " +
                                             kind_points(closed, "nilpotent_translate").str();
            L.same("gu3 partition", closed_parts, parts);
        }
    }
}

void branching_tables(Ledger& L) {
    LocalRing R2(5, 1, 2, CharKind::Mixed);
    for (int eps : {1, -1})
        for (bool dp : {false, true}) {
            OrbitCensus brute = branching_fiber_brute(R2, eps, dp);
            OrbitCensus table = branching_fiber(eps, 5);
            L.add(std::string("branching fibre eps=") + std::to_string(eps) + (dp ? " delta=pi" : " delta=0"),
                  table.to_json()["rows"].dump(), brute.grouped().to_json()["rows"].dump(), brute.same_rows(table));
        }
    for (int q : {5, 7})
        for (int eps : {1, -1}) {
            OrbitCensus brute = j_coadjoint_brute(LocalRing(q, 1, 1, CharKind::Mixed), eps);
            OrbitCensus table = j_coadjoint_census(q, eps);
            L.add("J coadjoint cross-section eps=" + std::to_string(eps) + " q=" + std::to_string(q),
                  table.to_json()["rows"].dump(), brute.grouped().to_json()["rows"].dump(), brute.same_rows(table));
        }
}

// census data without representatives, which are ring-specific strings
nlohmann::json census_signature(const OrbitCensus& c) {
    OrbitCensus g = c.grouped();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : g.rows) rows.push_back({r.type, r.count.str(), r.size.str(), r.stabilizer.str()});
    return {{"space", g.space_size.str()}, {"group", g.group_order.str()}, {"rows", rows}};
}

QuadElem digit(const LocalRing& R, std::int64_t unit, int k) {
    return R.embed(R.mul(R.from_int(unit), R.pi_pow(k)));
}

// Matrices built from units times powers of pi, so the same recipe makes sense in both rings.
std::vector<Mat> shadow_samples(const LocalRing& R, bool unitary) {
    std::vector<Mat> out;
    for (int dk : {-1, 1}) {
        Mat xi = mat_zero(R, 3);
        xi.at(0, 2) = R.qone();
        if (dk > 0) {
            xi.at(1, 1) = digit(R, 1, dk);
            xi.at(2, 0) = R.qmul(xi.at(1, 1), xi.at(1, 1));
        }
        out.push_back(xi);
    }
    Mat a = mat_diag(R, {R.qone(), R.qone(), R.embed(R.from_int(2))});
    a.at(0, 1) = digit(R, 1, 1);
    out.push_back(a);
    Mat b = mat_zero(R, 3);
    b.at(0, 2) = R.qone();
    b.at(1, 0) = digit(R, 3, 1);
    b.at(2, 1) = digit(R, 2, 1);
    out.push_back(b);
    if (unitary)
        for (auto& x : out) x = mat_scale(R, R.rho(), x);
    return out;
}

nlohmann::json uniform_payload(CharKind kind, const std::string& what) {
    nlohmann::json out;
    if (what == "small censuses") {
        for (const auto& g : kSmall)
            for (int ell = 1; ell <= 2; ++ell)
                out[tag(g, 5, ell)] = census_signature(brute_force_census(parse_group(g), LocalRing(5, 1, ell, kind)));
        for (const auto& g : {"sl2", "su2"})
            out[tag(g, 5, 3)] = census_signature(brute_force_census(parse_group(g), LocalRing(5, 1, 3, kind)));
    } else if (what == "branching fibres") {
        for (int ell : {2, 3})
            for (int eps : {1, -1})
                for (bool dp : {false, true})
                    out[tag("eps" + std::to_string(eps) + (dp ? " pi" : " 0"), 5, ell)] =
                        census_signature(branching_fiber_brute(LocalRing(5, 1, ell, kind), eps, dp));
    } else if (what == "fibre census") {
        LocalRing R2(5, 1, 2, kind), R1(5, 1, 1, kind);
        Mat xi = mat_diag(R1, {R1.qone(), R1.qone(), R1.embed(R1.from_int(2))});
        out["gl3 over diag(1,1,2)"] = census_signature(fibre_census(R2, parse_group("gl3"), xi));
    } else if (what == "stabilizer orders") {
        for (int ell : {2, 3}) {
            LocalRing R(5, 1, ell, kind);
            // lifts with m < l2 only exist from l = 3 on
            LocalRing Rl2 = R.at_level(ell - ell / 2);
            for (bool unitary : {false, true}) {
                if (Rl2.ell() < 2) break;
                GroupId G = parse_group(unitary ? "gu3" : "gl3");
                const QuadElem z = Rl2.qzero(), p1 = digit(Rl2, 1, 1);
                const std::vector<std::array<QuadElem, 3>> abg = {{p1, z, z}, {z, p1, z}, {z, z, p1}, {p1, p1, p1}};
                for (std::size_t i = 0; i < abg.size(); ++i) {
                    QuadElem beta = unitary ? Rl2.conj(abg[i][0]) : abg[i][1];
                    if (Rl2.qis_zero(abg[i][0]) && Rl2.qis_zero(beta) && Rl2.qis_zero(abg[i][2])) continue;
                    NilpotentLift lift = make_lift(Rl2, unitary, z, z, abg[i][0], beta, abg[i][2]);
                    out[tag(G.name() + " lift " + std::to_string(i), 5, ell)] =
                        stabilizer_orders(Rl2, lift, G, ell).to_json();
                }
            }
            for (int eps : {1, -1}) {
                const QuadElem z = R.qzero(), p1 = digit(R, 1, 1), u = R.qone();
                const std::vector<std::array<QuadElem, 3>> stn = {{u, z, z}, {z, z, u}, {p1, p1, z}, {z, z, z}};
                for (std::size_t i = 0; i < stn.size(); ++i) {
                    JCoadjointLift W{ell, z, z, stn[i][0], stn[i][1], stn[i][2]};
                    out[tag("J eps" + std::to_string(eps) + " W" + std::to_string(i), 5, ell)] =
                        j_stabilizer_order(R, W, eps).str();
                }
            }
        }
    } else if (what == "shadows") {
        for (int ell : {2, 3}) {
            LocalRing R(5, 1, ell, kind);
            for (bool unitary : {false, true}) {
                GroupId G = parse_group(unitary ? "gu3" : "gl3");
                auto xs = shadow_samples(R, unitary);
                for (std::size_t i = 0; i < xs.size(); ++i)
                    out[tag(G.name() + " sample " + std::to_string(i), 5, ell)] = shadow(R, xs[i], G, 20'000'000).to_json();
            }
        }
    } else if (what == "zeta outputs") {
        BaseProvider builtin;
        for (const auto& g : kBig)
            for (int ell = 1; ell <= 3; ++ell) {
                LocalRing R(5, 1, ell, kind);
                ZetaReport rep = zeta_full(parse_group(g), R, builtin);
                nlohmann::json comps;
                for (const auto& [n, z] : rep.components) comps[n] = z.str();
                out[tag(g, 5, ell)] = {{"total", rep.total.str()}, {"components", comps}};
                if (ell >= 2) out[tag(g, 5, ell) + " explicit"] = zeta_E_explicit(parse_group(g), R).str();
            }
    } else if (what == "J class counts") {
        LocalRing R2(5, 1, 2, kind);
        for (const auto& s : {"jl", "ju", "jl'", "ju'"})
            out[s] = oracle_class_count(GroupSpec::parse(s), R2).str();
    }
    return out;
}

void uniformity(Ledger& L) {
    for (const auto& what :
         {"small censuses", "branching fibres", "fibre census", "stabilizer orders", "shadows", "zeta outputs", "J class counts"}) {
        nlohmann::json a = uniform_payload(CharKind::Mixed, what);
        nlohmann::json b = uniform_payload(CharKind::Equal, what);
        for (auto it = a.begin(); it != a.end(); ++it) {
            const std::string other = b.contains(it.key()) ? b[it.key()].dump() : "missing";
            L.same(std::string(what) + ": " + it.key() + " Z/5^l vs F5[t]/t^l", it.value().dump(), other);
        }
        if (std::string(what) == "J class counts") {
            L.same("class count J_L(Z/25)", "13600", a["jl"].get<std::string>());
            L.same("class count J_L(F5[t]/t^2)", "13600", b["jl"].get<std::string>());
        }
    }
}

void class_counts(Ledger& L) {
    BaseProvider builtin;
    for (int ell = 1; ell <= 2; ++ell) {
        LocalRing R(5, 1, ell, CharKind::Mixed);
        for (int eps : {1, -1}) {
            GroupSpec J = GroupSpec::j(eps), Jp = GroupSpec::j(eps, false, true);
            L.same("zeta(0) = class count " + J.name() + " l=" + std::to_string(ell),
                   oracle_class_count(J, R).str(), zeta_J(5, eps, ell).at_zero().str());
            L.same("zeta(0) = class count " + Jp.name() + " l=" + std::to_string(ell),
                   oracle_class_count(Jp, R).str(), zeta_Jprime(5, eps, ell).at_zero().str());
        }
        for (const auto& g : kSmall) {
            GroupId G = parse_group(g);
            L.same("zeta(0) = class count " + tag(g, 5, ell), oracle_class_count(GroupSpec::classical(G), R).str(),
                   zeta_full(G, R, builtin).total.at_zero().str());
        }
    }
    LocalRing R1(5, 1, 1, CharKind::Mixed);
    for (const auto& g : kBig) {
        GroupId G = parse_group(g);
        L.same("zeta(0) = class count " + tag(g, 5, 1), oracle_class_count(GroupSpec::classical(G), R1).str(),
               zeta_full(G, R1, builtin).total.at_zero().str());
    }
    for (const auto& g : {"gl1", "gu1", "gl2", "gu2", "sl2", "su2", "gl3", "gu3", "sl3", "su3"}) {
        GroupId G = parse_group(g);
        L.same("builtin degrees = Dixon degrees " + tag(g, 5, 1), oracle_degrees(GroupSpec::classical(G), R1).str(),
               builtin_degrees(G, 5).str());
    }
}

void shadow_lifts(Ledger& L) {
    for (const auto& g : {"gl3", "gu3"})
        for (int ell : {3, 4})
            for (bool dp : {false, true}) {
                ShadowLiftCheck t = shadow_lift_check(parse_group(g), LocalRing(5, 1, ell, CharKind::Mixed), dp);
                L.same(std::string("shadow-preserving lift ") + tag(g, 5, ell) + (dp ? " delta=pi" : " delta=0"),
                       t.lhs.str(), t.rhs.str());
            }
}

void fibre_bijection(Ledger& L) {
    LocalRing R2(5, 1, 2, CharKind::Mixed), R1(5, 1, 1, CharKind::Mixed);
    const QuadElem one = R1.qone(), two = R1.embed(R1.from_int(2));
    OrbitCensus big = fibre_census(R2, parse_group("gl3"), mat_diag(R1, {one, one, two}));
    OrbitCensus f1 = fibre_census(R2, parse_group("gl1"), mat_diag(R1, {two}));
    OrbitCensus f2 = fibre_census(R2, parse_group("gl2"), mat_diag(R1, {one, one}));
    L.same("gl3 fibre orbits over diag(1,1,2) = gl1 fibre x gl2 fibre",
           BigInt(f1.orbits() * f2.orbits()).str() + " (" + f1.orbits().str() + " x " + f2.orbits().str() + ")",
           big.orbits().str() + " (" + f1.orbits().str() + " x " + f2.orbits().str() + ")");
    L.add("gl3 fibre census closes", "true", big.closed() ? "true" : "false", big.closed());
}

void global_layer(Ledger& L) {
    GroupId G = parse_group("sl3");
    PoleProbe pr = pole_probe(G, GlobalField::FunctionField, 5, 8);
    for (const auto& [c, r] : pr.r_values)
        if (c >= 6) {
            std::ostringstream os;
            os << std::setprecision(6) << r;
            L.add("R statistic at degree " + std::to_string(c), "[0.8, 1.2]", os.str(), r >= 0.8 && r <= 1.2);
        }
    L.add("local factors converged (s=1)", "true", pr.at_one.all_converged ? "true" : "false", pr.at_one.all_converged);
    EulerEstimate e = partial_product(G, GlobalField::FunctionField, 5, 1.2, 12);
    for (std::size_t i = 1; i < e.trace.size(); ++i) {
        const int c = e.trace[i].cutoff;
        if (c < 10) continue;
        const double delta = std::fabs(e.trace[i].value - e.trace[i - 1].value);
        std::ostringstream os;
        os << std::setprecision(3) << delta;
        L.add("s=1.2 partial product delta at degree " + std::to_string(c), "< 1e-3", os.str(), delta < 1e-3);
    }
}

struct Criterion {
    const char* name;
    const char* unit;
    void (*run)(Ledger&);
};

const Criterion kTable[kCriteria] = {
    {"order identity zeta(-2) = |G(o_l)|", "identities", order_identity},
    {"J-group degrees from Dixon", "comparisons", j_ground_truth},
    {"nilpotent component, two routes", "equalities", nilpotent_routes},
    {"J zeta closed vs recursive", "equalities", j_recursion},
    {"level-1 census reconciliation", "comparisons", census_reconciliation},
    {"branching and J coadjoint tables", "tables", branching_tables},
    {"uniformity across Z/5^l and F5[t]/t^l", "comparisons", uniformity},
    {"class-count identity at s=0", "identities", class_counts},
    {"shadow-preserving lifts", "equalities", shadow_lifts},
    {"fibre orbit bijection", "comparisons", fibre_bijection},
    {"global layer pole probe", "properties", global_layer},
};

}  // namespace

nlohmann::json CheckResult::to_json() const {
    return {{"id", id},           {"name", name},       {"pass", pass},  {"expected", expected},
            {"actual", actual},   {"seconds", seconds}, {"detail", detail}};
}

std::string CheckResult::line() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << "  [" << std::setw(2) << id << "] " << name << "  (expected " << expected
       << ", got " << actual << ")  " << std::fixed << std::setprecision(1) << seconds << "s";
    return os.str();
}

std::string criterion_name(int id) {
    if (id < 1 || id > kCriteria) throw Error("BadArgument", "criterion must be 1.." + std::to_string(kCriteria));
    return kTable[id - 1].name;
}

CheckResult run_criterion(int id) {
    CheckResult r;
    r.id = id;
    r.name = criterion_name(id);
    Ledger L(r);
    auto t0 = Clock::now();
    try {
        kTable[id - 1].run(L);
        L.finish(kTable[id - 1].unit);
    } catch (const std::exception& e) {
        L.add("exception", "no error", e.what(), false);
        L.finish(kTable[id - 1].unit);
    }
    r.seconds = since(t0);
    return r;
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "identities") return {1, 2, 4, 8};
    if (suite == "uniformity") return {7};
    if (suite == "nilpotent") return {3, 9};
    if (suite == "censuses") return {5, 6, 10};
    if (suite == "euler") return {11};
    if (suite == "all") {
        std::vector<int> all;
        for (int i = 1; i <= kCriteria; ++i) all.push_back(i);
        return all;
    }
    throw Error("BadArgument", "unknown suite " + suite + " (identities, uniformity, nilpotent, censuses, euler, all)");
}

std::vector<CheckResult> run_suite(const std::string& suite, const std::function<void(const CheckResult&)>& on_result) {
    std::vector<CheckResult> out;
    for (int id : suite_criteria(suite)) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

nlohmann::json suite_json(const std::string& suite, const std::vector<CheckResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    bool ok = true;
    for (const auto& r : results) {
        arr.push_back(r.to_json());
        ok = ok && r.pass;
    }
    return {{"suite", suite}, {"pass", ok}, {"criteria", arr}};
}

}  // namespace repzeta
