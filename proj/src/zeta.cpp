#include "repzeta/zeta.hpp"

#include "repzeta/fastring.hpp"
#include "repzeta/orbits.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace repzeta {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

LevelSplit LevelSplit::make(int ell, int m) {
    if (ell < 0 || m < 0 || m > ell) throw Error("Domain", "need 0 <= m <= l");
    LevelSplit s;
    s.ell = ell;
    s.m = m;
    s.ell1 = ell / 2;
    s.ell2 = ell - s.ell1;
    s.m1 = (ell - m) / 2;
    s.m2 = ell - m - s.m1;
    return s;
}

std::vector<std::string> LevelSplit::violations() const {
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char* what) {
        if (!ok) bad.emplace_back(what);
    };
    need(0 <= m2 - m1 && m2 - m1 <= 1, "0 <= m2-m1 <= 1");
    need(2 * m2 + m >= ell, "2 m2 + m >= l");
    need(m2 != m1 + 1 || 2 * m1 + m == ell - 1, "m2 = m1+1 => 2 m1 + m = l-1");
    need(m >= ell1 || 2 * m1 + ell1 >= ell, "m < l1 => 2 m1 + l1 >= l");
    need(m >= ell1 || 4 * m1 >= ell, "m < l1 => 4 m1 >= l");
    need(m2 + m >= ell2, "m2 + m >= l2");
    need(m != ell1 || m1 == ell2 / 2, "m = l1 => m1 = floor(l2/2)");
    return bad;
}

namespace {

BigInt iota_of(std::int64_t q, int eps) { return (q - eps) % 3 == 0 ? 3 : 1; }

void add(DirichletPoly& z, const BigInt& dim, const BigInt& mult) {
    if (mult < 0) throw Error("Internal", "negative multiplicity");
    if (mult != 0) z.add_term(dim, mult);
}

BigInt exact_div(const BigInt& a, const BigInt& b, const char* what) {
    if (b == 0 || a % b != 0) throw Error("NonIntegral", std::string(what) + " is not an integer");
    return a / b;
}

}  // namespace

DirichletPoly builtin_degrees(const GroupId& G, std::int64_t qq) {
    const BigInt q = qq;
    const int e = G.eps();
    const BigInt qe = q - e;
    DirichletPoly z;
    if (G.d == 1) {
        add(z, 1, G.special() ? BigInt(1) : qe);
        return z;
    }
    if (G.d == 2) {
        if (G.special()) {
            // SL2 and SU2 are isomorphic
            add(z, 1, 1);
            add(z, q, 1);
            add(z, q + 1, (q - 3) / 2);
            add(z, q - 1, (q - 1) / 2);
            add(z, (q + 1) / 2, 2);
            add(z, (q - 1) / 2, 2);
        } else if (e > 0) {
            add(z, 1, q - 1);
            add(z, q, q - 1);
            add(z, q + 1, (q - 1) * (q - 2) / 2);
            add(z, q - 1, (q * q - q) / 2);
        } else {
            add(z, 1, q + 1);
            add(z, q, q + 1);
            add(z, q - 1, q * (q + 1) / 2);
            add(z, q + 1, (q + 1) * (q - 2) / 2);
        }
        return z;
    }
    if (G.d != 3) throw Error("Domain", "built-in tables cover d <= 3");
    const BigInt phi = q * q + e * q + 1;  // q^2+q+1 or q^2-q+1
    // family counts for GL3/GU3, each a union of (q-eps) twists
    struct Fam {
        BigInt dim, count;
        int split;  // 0: never splits, 1: split torus triple, 2: Coxeter torus
    };
    std::vector<Fam> fams = {
        {1, qe, 0},
        {q * (q + e), qe, 0},
        {q * q * q, qe, 0},
        {phi, qe * (q - 1 - e), 0},
        {q * phi, qe * (q - 1 - e), 0},
        {(q + e) * phi, qe * (q - 1 - e) * (q - 2 - e) / 6, 1},
        {qe * phi, qe * (q * q - q - (1 - e)) / 2, 0},
        {qe * qe * (q + e), (q * q * q - q) / 3, 2},
    };
    if (!G.special()) {
        for (const auto& f : fams) add(z, f.dim, f.count);
        return z;
    }
    const BigInt iota = iota_of(qq, e);
    for (const auto& f : fams) {
        BigInt fixed = 0;  // characters fixed by a cubic twist
        if (iota == 3 && f.split == 1) fixed = qe / 3;
        if (iota == 3 && f.split == 2) fixed = 2 * qe / 3;
        add(z, f.dim, exact_div(f.count - fixed, qe, "SL/SU family count"));
        if (fixed != 0) add(z, f.dim / 3, 3 * fixed / (qe / 3));
    }
    return z;
}

BaseProvider::BaseProvider(Kind kind, std::string file, OracleBudget budget)
    : kind_(kind),
      file_(std::move(file)),
      budget_(budget),
      memo_(std::make_shared<std::map<std::string, BaseCensus>>()),
      mu_(std::make_shared<std::mutex>()) {
    if (kind_ == Kind::File && file_.empty()) throw Error("BadArgument", "file base provider needs a path");
}

BaseProvider BaseProvider::parse(const std::string& name, const std::string& file) {
    if (name == "builtin") return BaseProvider(Kind::Builtin);
    if (name == "oracle") return BaseProvider(Kind::Oracle);
    if (name == "file") return BaseProvider(Kind::File, file);
    throw Error("BadArgument", "base provider must be builtin, oracle or file; got " + name);
}

std::string BaseProvider::name() const {
    switch (kind_) {
        case Kind::Oracle: return "oracle";
        case Kind::File: return "file:" + file_;
        case Kind::Builtin: break;
    }
    return "builtin";
}

DirichletPoly BaseProvider::from_file(const GroupId& G, std::int64_t q) const {
    std::ifstream in(file_);
    if (!in) throw Error("IoError", "cannot read base census file " + file_);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("ParseError", file_ + ": " + e.what());
    }
    const nlohmann::json& list = j.is_array() ? j : j.value("censuses", nlohmann::json::array());
    for (const auto& entry : list) {
        if (!entry.contains("group") || !entry.contains("q") || !entry.contains("degrees")) continue;
        if (parse_group(entry["group"].get<std::string>()) == G && entry["q"].get<std::int64_t>() == q)
            return DirichletPoly::from_json(entry["degrees"]);
    }
    throw Error("MissingBase", "no level-1 census for " + G.name() + " at q=" + std::to_string(q) + " in " + file_);
}

BaseCensus BaseProvider::get(const GroupId& G, const LocalRing& R1) const {
    const std::int64_t q = R1.q();
    const std::string key = G.name() + "/" + std::to_string(q) + "/" + kind_name(R1.kind());
    {
        std::lock_guard<std::mutex> lock(*mu_);
        auto it = memo_->find(key);
        if (it != memo_->end()) return it->second;
    }
    BaseCensus b;
    b.group = G;
    b.q = q;
    if (G.d == 1) {
        // every character of an abelian group is linear; no table needed
        b.degrees = builtin_degrees(G, q);
        b.provenance = "builtin";
    } else if (kind_ == Kind::Builtin) {
        b.degrees = builtin_degrees(G, q);
        b.provenance = "builtin";
    } else if (kind_ == Kind::Oracle) {
        b.degrees = oracle_degrees(GroupSpec::classical(G), R1.at_level(1), budget_);
        b.provenance = "oracle";
    } else {
        b.degrees = from_file(G, q);
        b.provenance = "file";
    }
    const BigInt order = group_order_k(G, q);
    if (b.degrees.at_neg(2) != order)
        throw Error("BaseRejected", G.name() + " base census has sum d^2 = " + b.degrees.at_neg(2).str() + ", expected " +
                                        order.str());
    if (b.provenance == "file") {
        BigInt classes = order <= budget_.count_bound
                             ? class_count_only(GroupSpec::classical(G), FastRing(R1.at_level(1)), budget_.count_bound)
                             : builtin_degrees(G, q).at_zero();
        if (b.degrees.at_zero() != classes)
            throw Error("BaseRejected", G.name() + " base census has " + b.degrees.at_zero().str() + " characters, expected " +
                                            classes.str() + " classes");
    }
    std::lock_guard<std::mutex> lock(*mu_);
    memo_->emplace(key, b);
    return b;
}

DirichletPoly zeta_regular(const GroupId& G, std::int64_t qq, int ell) {
    if (ell < 2) throw Error("Domain", "the regular formula needs l >= 2; level 1 comes from the base census");
    const BigInt q = qq;
    const int rank = G.rank();
    const int half = (G.dim() - rank) / 2;
    const BigInt order = group_order_k(G, qq);
    DirichletPoly z;
    for (const auto& rc : regular_classes(G, qq)) {
        BigInt mult = rc.count * bpow(q, static_cast<long>(ell - 2) * rank) * rc.centralizer;
        BigInt dim = bpow(q, static_cast<long>(half) * (ell - 2)) * exact_div(order, rc.centralizer, "regular dimension");
        add(z, dim, mult);
    }
    return z;
}

DirichletPoly zeta_J(std::int64_t qq, int eps, int ell, bool recursive) {
    if (ell < 1) throw Error("Domain", "zeta_J needs l >= 1");
    const BigInt q = qq, qe = q - eps;
    DirichletPoly z;
    if (ell == 1 || recursive) {
        add(z, 1, qe * qe);
        add(z, qe, q * q - 1);
        add(z, q, (q - 1) * qe * qe);
        for (int l = 2; l <= (recursive ? ell : 1); ++l) {
            z = z.scale(q * q);
            add(z, bpow(q, l), bpow(q, 3L * l - 3) * qe * qe * (q - 1));
            add(z, bpow(q, l - 1) * qe, bpow(q, 3L * l - 3) * (q * q - 1));
        }
        return z;
    }
    add(z, 1, bpow(q, 2L * ell - 2) * qe * qe);
    for (int i = 1; i <= ell; ++i) add(z, bpow(q, i), qe * qe * (q - 1) * bpow(q, i + 2L * ell - 3));
    for (int i = 0; i < ell; ++i) add(z, bpow(q, i) * qe, (q * q - 1) * bpow(q, i + 2L * ell - 2));
    return z;
}

DirichletPoly zeta_Jprime(std::int64_t qq, int eps, int ell) {
    if (ell < 1) throw Error("Domain", "zeta_Jprime needs l >= 1");
    const BigInt q = qq, qe = q - eps, iota = iota_of(qq, eps);
    const BigInt lead = bpow(q, ell - 1);
    DirichletPoly z;
    add(z, 1, lead * qe);
    for (int i = 1; i <= ell; ++i) add(z, bpow(q, i), lead * qe * (q - 1) * bpow(q, i - 1));
    for (int i = 0; i < ell; ++i) add(z, exact_div(bpow(q, i) * qe, iota, "J' dimension"), lead * (q + eps) * iota * iota * bpow(q, i));
    return z;
}

BigInt j_order(std::int64_t qq, int eps, int ell, bool special) {
    const BigInt q = qq, qe = q - eps;
    return special ? qe * bpow(q, 4L * ell - 1) : qe * qe * bpow(q, 5L * ell - 2);
}

namespace {

DirichletPoly j_zeta_for(const GroupId& G, std::int64_t q, int ell) {
    return G.special() ? zeta_Jprime(q, G.eps(), ell) : zeta_J(q, G.eps(), ell);
}

void require_d3(const GroupId& G) {
    if (G.d != 3) throw Error("Domain", "this component exists for d = 3 only");
}

}  // namespace

DirichletPoly zeta_E_closed(const GroupId& G, std::int64_t q, int ell) {
    require_d3(G);
    if (ell < 2) throw Error("Domain", "zeta_E needs l >= 2");
    const int l1 = ell / 2, l2 = ell - l1;
    BigInt index = exact_div(group_order(G, q, l1), j_order(q, G.eps(), l1, G.special()), "[G(o_l1):J(o_l1)]");
    return j_zeta_for(G, q, ell - 1).dilate(index * bpow(BigInt(q), 2L * (l2 - l1)));
}

DirichletPoly zeta_E_explicit(const GroupId& G, const LocalRing& R, double bound) {
    require_d3(G);
    const int ell = R.ell();
    if (ell < 2) throw Error("Domain", "zeta_E needs l >= 2");
    const std::int64_t q = R.q();
    const int eps = G.eps();
    const int l1 = ell / 2, l2 = ell - l1;
    if (std::pow(static_cast<double>(q), 5.0 * l2) > bound)
        throw Error("TooLarge", "parameter space q^{5 l2} = " + std::to_string(q) + "^" + std::to_string(5 * l2) +
                                    " exceeds the bound");

    // count the tuples (delta or omega, alpha, beta, gamma) in p^4 at level l2 by (m, split)
    LocalRing R2 = R.at_level(l2);
    FastRing F(R2);
    std::vector<int> base_vals, quad_vals;
    for (std::uint32_t u = 0; u < F.base_size(); ++u)
        if (F.val(u) >= 1) base_vals.push_back(F.val(u));
    for (std::uint32_t u = 0; u < F.size(); ++u)
        if (F.val(u) >= 1) quad_vals.push_back(F.val(u));
    std::map<std::pair<int, bool>, BigInt> strata;
    const BigInt free_param = base_vals.size();  // delta for GL/GU, omega for SL/SU (delta = -3 omega)
    if (!G.unitary()) {
        for (int va : base_vals)
            for (int vb : base_vals)
                for (int vg : base_vals) {
                    int m = std::min({va, vb, vg});
                    strata[{m, vg == m}] += free_param;
                }
    } else {
        // beta = conj(alpha) has the valuation of alpha
        for (int va : quad_vals)
            for (int vg : base_vals) {
                int m = std::min(va, vg);
                strata[{m, vg == m}] += free_param;
            }
    }
    // omega never changes a term; for GL/GU it is a further free parameter
    const BigInt omega_count = G.special() ? BigInt(1) : BigInt(base_vals.size());

    const BigInt Q = q;
    const BigInt P = exact_div(group_order_k(G.general(), q), j_order(q, eps, 1, false), "[G(k):J(k)]") *
                     bpow(Q, 4L * (l1 - 1));
    std::map<BigInt, Rational> acc;
    BigInt final_count = 0;
    for (const auto& [key, cnt] : strata) {
        const auto [m, split] = key;
        if (m == l2) {
            final_count += cnt * omega_count;
            continue;
        }
        NilpotentStabilizers st = nilpotent_stabilizers(G, q, ell, m, split);
        LevelSplit ls = LevelSplit::make(ell, m);
        Rational mult = Rational(P * cnt * omega_count * st.stabilizer * st.stabilizer) /
                        Rational(st.group * st.congruence * bpow(Q, 2L * (ls.m2 - ls.m1)));
        BigInt dim = exact_div(bpow(Q, 2L * (l2 - l1) + (ls.m2 - ls.m1)) * st.group, st.stabilizer, "explicit dimension");
        acc[dim] += mult;
    }
    // A(l2, l2): the J-group term
    BigInt index = exact_div(group_order(G, q, l1), j_order(q, eps, l1, G.special()), "[G(o_l1):J(o_l1)]");
    DirichletPoly tail = j_zeta_for(G, q, l1).dilate(index * bpow(Q, 2L * (l2 - l1))).scale(final_count);
    for (const auto& [d, m] : tail.terms()) acc[d] += Rational(m);

    DirichletPoly z;
    for (const auto& [d, m] : acc) {
        if (denominator(m) != 1) throw Error("NonIntegral", "explicit multiplicity at dimension " + d.str() + " is not an integer");
        add(z, d, numerator(m));
    }
    return z;
}

DirichletPoly zeta_small(const GroupId& G, const LocalRing& R, const BaseProvider& base) {
    return zeta_small_at(G, R.at_level(1), R.ell(), base);
}

DirichletPoly zeta_small_at(const GroupId& G, const LocalRing& R1, int ell, const BaseProvider& base) {
    if (G.d > 2) throw Error("Domain", "zeta_small covers d <= 2");
    if (ell < 1) throw Error("Domain", "level must be >= 1");
    const std::int64_t q = R1.q();
    if (G.d == 1) {
        DirichletPoly z;
        add(z, 1, G.special() ? BigInt(1) : (BigInt(q) - G.eps()) * bpow(BigInt(q), ell - 1));
        return z;
    }
    if (ell == 1) return base.get(G, R1).degrees;
    DirichletPoly lower = zeta_small_at(G, R1, ell - 1, base);
    return zeta_regular(G, q, ell) + lower.scale(G.special() ? BigInt(1) : BigInt(q));
}

DecomposableReading zeta_decomposable(const GroupId& G, const LocalRing& R, const BaseProvider& base) {
    return zeta_decomposable_at(G, R.at_level(1), R.ell(), base);
}

DecomposableReading zeta_decomposable_at(const GroupId& G, const LocalRing& R1, int ell, const BaseProvider& base) {
    require_d3(G);
    if (ell < 2) throw Error("Domain", "zeta_decomposable needs l >= 2");
    const std::int64_t q = R1.q();
    const BigInt Q = q;
    const int l1 = ell / 2;
    const GroupId G2 = G.general().with_d(2);
    const GroupId G1 = G.general().with_d(1);
    const bool has_g1 = !G.special();

    DirichletPoly z1;
    add(z1, 1, 1);
    if (has_g1) z1 = zeta_small_at(G1, R1, ell - 1, base);
    DirichletPoly prod = z1 * zeta_small_at(G2, R1, ell - 1, base);

    DecomposableReading r;
    const BigInt I = decomposable_orbit_size(G, q);
    const int ddim = G.dim() - (G2.dim() + (has_g1 ? 1 : 0));
    if (ddim % 2) throw Error("Internal", "odd dimension difference");
    r.orbit_constant = I * bpow(Q, static_cast<long>(ddim / 2) * (ell - 2));
    BigInt sub = group_order(G2, q, l1) * (has_g1 ? group_order(G1, q, l1) : BigInt(1));
    r.level_constant = exact_div(group_order(G, q, l1), sub, "[G(o_l1):G1xG2(o_l1)]");

    // block-sum law for one orbit: component(-2) q^{dim g} = |G(o_l)| |Omega|
    const BigInt target = group_order(G, q, ell) * I;
    const BigInt qdim = bpow(Q, G.dim());
    auto law = [&](const BigInt& c) { return prod.at_neg(2) * c * c * qdim == target; };
    r.orbit_block_sum = law(r.orbit_constant);
    r.level_block_sum = law(r.level_constant);
    if (r.orbit_block_sum) r.chosen = r.orbit_constant;
    else if (r.level_block_sum) r.chosen = r.level_constant;
    else
        throw Error("Inconsistent", "decomposable dilation: neither reading satisfies the block-sum law (orbit reading " +
                                        r.orbit_constant.str() + ", level reading " + r.level_constant.str() + ")");
    r.component = prod.dilate(r.chosen);
    r.orbit_count = decomposable_orbit_count(G, q);
    return r;
}

nlohmann::json ZetaReport::to_json() const {
    nlohmann::json comps = nlohmann::json::object();
    for (const auto& [name, z] : components) comps[name] = z.to_json();
    nlohmann::json bs = nlohmann::json::object();
    bool all = true;
    for (const auto& [name, ok] : block_sum) {
        bs[name] = ok;
        all = all && ok;
    }
    const BigInt neg2 = total.at_neg(2);
    return {{"group", group.name()},
            {"q", q},
            {"level", ell},
            {"ring_kind", kind_name(kind)},
            {"base", base},
            {"components", comps},
            {"total", total.to_json()},
            {"checks",
             {{"at_zero", total.at_zero().str()},
              {"at_neg2", neg2.str()},
              {"group_order", group_order.str()},
              {"order_identity", neg2 == group_order},
              {"block_sum", bs},
              {"block_sum_ok", all},
              {"decomposable_readings", decomposable_readings}}}};
}

ZetaReport zeta_full(const GroupId& G, const LocalRing& R, const BaseProvider& base) {
    return zeta_full_at(G, R.at_level(1), R.ell(), base);
}

ZetaReport zeta_full_at(const GroupId& G, const LocalRing& R1, int ell, const BaseProvider& base) {
    if (ell < 1) throw Error("Domain", "level must be >= 1");
    const std::int64_t q = R1.q();
    const BigInt Q = q;
    ZetaReport rep;
    rep.group = G;
    rep.q = q;
    rep.ell = ell;
    rep.kind = R1.kind();
    rep.base = base.name();
    rep.group_order = group_order(G, q, ell);
    rep.decomposable_readings = nlohmann::json::object();
    if (ell == 1) {
        rep.total = G.d <= 2 ? zeta_small_at(G, R1, 1, base) : base.get(G, R1).degrees;
        rep.components.emplace_back("base", rep.total);
        return rep;
    }
    if (G.d == 1) {
        rep.total = zeta_small_at(G, R1, ell, base);
        rep.components.emplace_back("regular", rep.total);
        rep.block_sum["regular"] = rep.total.at_neg(2) == rep.group_order;
        return rep;
    }
    const BigInt qdim = bpow(Q, G.dim());
    auto law = [&](const std::string& name, const DirichletPoly& c, const BigInt& elements) {
        rep.block_sum[name] = c.at_neg(2) * qdim == rep.group_order * elements;
    };

    DirichletPoly reg = zeta_regular(G, q, ell);
    rep.components.emplace_back("regular", reg);
    law("regular", reg, regular_element_count(G, q));

    if (G.d == 3) {
        DecomposableReading dec = zeta_decomposable_at(G, R1, ell, base);
        DirichletPoly dc = dec.component.scale(dec.orbit_count);
        rep.components.emplace_back("decomposable", dc);
        law("decomposable", dc, dec.orbit_count * decomposable_orbit_size(G, q));
        rep.decomposable_readings = {{"orbit_constant", dec.orbit_constant.str()},
                                     {"level_constant", dec.level_constant.str()},
                                     {"orbit_block_sum", dec.orbit_block_sum},
                                     {"level_block_sum", dec.level_block_sum},
                                     {"readings_agree", dec.orbit_constant == dec.level_constant},
                                     {"chosen", dec.chosen.str()}};

        const BigInt translates = translate_orbit_count(G, q);
        DirichletPoly ze = zeta_E_closed(G, q, ell).scale(translates);
        rep.components.emplace_back("nilpotentE", ze);
        law("nilpotentE", ze, translates * nilpotent_orbit_size(G, q));
    }

    const BigInt scalars = G.special() ? BigInt(1) : Q;
    DirichletPoly lower = zeta_full_at(G, R1, ell - 1, base).total.scale(scalars);
    rep.components.emplace_back("scalar", lower);
    law("scalar", lower, scalars);

    for (const auto& [name, c] : rep.components) rep.total += c;
    return rep;
}

DirichletPoly zeta_total(const GroupId& G, const LocalRing& R, const BaseProvider& base) {
    return zeta_full(G, R, base).total;
}

nlohmann::json ShadowLiftCheck::to_json() const {
    return {{"lhs", lhs.to_json()}, {"rhs", rhs.to_json()}, {"equal", equal}, {"shadow", shadow}};
}

ShadowLiftCheck shadow_lift_check(const GroupId& G, const LocalRing& R, bool delta_pi) {
    require_d3(G);
    if (G.special()) throw Error("Domain", "the shadow test is implemented for GL3 and GU3");
    const int ell = R.ell();
    if (ell < 2) throw Error("Domain", "shadow_lift_check needs l >= 2");
    const std::int64_t q = R.q();
    LocalRing Rl = R.at_level(ell - 1);
    const QuadElem delta = delta_pi ? Rl.embed(Rl.pi_pow(1)) : Rl.qzero();
    Mat xi = mat_zero(Rl, 3);
    xi.at(0, 2) = Rl.qone();
    xi.at(1, 1) = delta;
    xi.at(2, 0) = Rl.qmul(delta, delta);
    if (G.unitary()) xi = mat_scale(Rl, Rl.rho(), xi);

    ShadowReport sh = shadow(Rl, xi, G, 20'000'000);
    if (!sh.preserving) throw Error("Precondition", "the lift is not shadow-preserving");
    if (!sh.order) throw Error("TooLarge", "centralizer in G(k) too large to count");
    if (!is_j_centralizer(Rl, xi, G.unitary(), delta_pi))
        throw Error("Precondition", "the centralizer of the lift is not a J-group");

    ShadowLiftCheck out;
    out.shadow = sh.to_json();
    out.lhs = zeta_E_closed(G, q, ell);
    const BigInt index = exact_div(group_order_k(G, q), *sh.order, "[G(k):Z(xi)]");
    const int codim = G.dim() - sh.centralizer_dim;
    if (codim % 2) throw Error("Internal", "odd orbit dimension");
    out.rhs = zeta_J(q, G.eps(), ell - 1).dilate(index * bpow(BigInt(q), static_cast<long>(codim / 2) * (ell - 2)));
    out.equal = out.lhs == out.rhs;
    return out;
}

}  // namespace repzeta
