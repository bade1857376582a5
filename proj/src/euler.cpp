#include "repzeta/euler.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace repzeta {

GlobalField parse_field(const std::string& s) {
    if (s == "Fp(t)" || s == "fpt" || s == "function" || s == "Fpt") return GlobalField::FunctionField;
    if (s == "Q" || s == "q" || s == "rationals") return GlobalField::Rationals;
    throw Error("BadArgument", "field must be Fp(t) or Q; got " + s);
}

namespace {

int mobius(int n) {
    int mu = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

// log of a positive big integer, usable beyond the double range
double log_big(const BigInt& x) {
    if (x <= 0) throw Error("Internal", "log of a non-positive integer");
    const unsigned bits = msb(x) + 1;
    if (bits <= 1000) return std::log(x.convert_to<double>());
    const unsigned shift = bits - 64;
    BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

double eval_log(const DirichletPoly& z, double s) {
    // log of sum mult * dim^{-s}, log-sum-exp
    double mx = -std::numeric_limits<double>::infinity();
    std::vector<double> ls;
    ls.reserve(z.size());
    for (const auto& [d, m] : z.terms()) {
        double v = log_big(m) - s * log_big(d);
        ls.push_back(v);
        mx = std::max(mx, v);
    }
    if (ls.empty()) return mx;
    double acc = 0;
    for (double v : ls) acc += std::exp(v - mx);
    return mx + std::log(acc);
}

double eval(const DirichletPoly& z, double s) { return z.empty() ? 0.0 : std::exp(eval_log(z, s)); }

}  // namespace

std::int64_t irreducible_count(int p, int n) {
    if (n < 1) throw Error("Domain", "degree must be positive");
    BigInt acc = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) acc += mobius(d) * bpow(BigInt(p), n / d);
    return (acc / n).convert_to<std::int64_t>();
}

std::vector<PlaceClass> places(GlobalField field, int p, int cutoff) {
    std::vector<PlaceClass> out;
    if (field == GlobalField::FunctionField) {
        if (!is_prime(p) || p <= 3) throw Error("BadArgument", "need a prime p > 3");
        for (int n = 1; n <= cutoff; ++n) out.push_back({ipow(p, n), irreducible_count(p, n), n});
    } else {
        for (int l = 5; l <= cutoff; ++l)
            if (is_prime(l)) out.push_back({l, 1, 1});
    }
    return out;
}

LocalValue local_profinite(const GroupId& G, int p, int f, CharKind kind, double s, double tol, int max_level,
                           const BaseProvider& base) {
    if (!G.special()) throw Error("DivergentFamily", G.name() + " has a divergent profinite zeta function (centre)");
    if (!(s >= 1.0)) throw Error("Domain", "s must be real and >= 1");
    LocalRing R1(p, f, 1, kind);
    LocalValue lv;
    DirichletPoly top;
    double prev = 0;
    for (int ell = 1; ell <= max_level; ++ell) {
        ZetaReport rep = zeta_full_at(G, R1, ell, base);
        if (rep.total.at_neg(2) != rep.group_order) throw Error("Internal", "order identity failed inside the local factor");
        double v = eval(rep.total, s);
        double inc = v - prev;
        if (inc < -1e-12 * v) throw Error("Internal", "negative level increment");
        lv.increments.push_back(inc);
        lv.value = v;
        lv.last_increment = inc;
        lv.levels = ell;
        prev = v;
        top = rep.total;
        if (ell > 1 && inc <= tol * v) {
            lv.converged = true;
            break;
        }
    }
    for (const auto& [d, m] : top.terms())
        if (d > 1) {
            lv.smallest_dim = d.str();
            lv.smallest_mult = m.str();
            break;
        }
    return lv;
}

EulerEngine::EulerEngine(GroupId G, GlobalField field, int p, double tol, int level_cap)
    : G_(G), field_(field), p_(p), tol_(tol), level_cap_(level_cap) {
    if (!G_.special()) throw Error("DivergentFamily", G_.name() + " has a divergent profinite zeta function (centre)");
}

const LocalValue& EulerEngine::local(std::int64_t qv, int degree, double s) {
    auto key = std::make_pair(qv, s);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int p = field_ == GlobalField::FunctionField ? p_ : static_cast<int>(qv);
    int f = field_ == GlobalField::FunctionField ? degree : 1;
    CharKind kind = field_ == GlobalField::FunctionField ? CharKind::Equal : CharKind::Mixed;
    // the level filtration converges slowly near s = 1 for small q; tol is relative
    LocalValue lv = local_profinite(G_, p, f, kind, s, tol_, level_cap_, base_);
    return memo_.emplace(key, std::move(lv)).first->second;
}

double EulerEngine::log_local(std::int64_t qv, int degree, double s) { return std::log(local(qv, degree, s).value); }

EulerEstimate EulerEngine::partial_products(double s, int max_cutoff) {
    EulerEstimate est;
    est.group = G_.name();
    est.field = field_ == GlobalField::FunctionField ? "Fp(t)" : "Q";
    est.p = p_;
    est.s = s;
    double logp = 0, harmonic = 0;
    auto pl = places(field_, p_, max_cutoff);
    std::size_t next = 0;
    for (int cut = 1; cut <= max_cutoff; ++cut) {
        bool any = false;
        while (next < pl.size() && (field_ == GlobalField::FunctionField ? pl[next].degree <= cut : pl[next].qv <= cut)) {
            const auto& pc = pl[next++];
            const LocalValue& lv = local(pc.qv, pc.degree, s);
            est.all_converged = est.all_converged && lv.converged;
            logp += static_cast<double>(pc.count) * std::log(lv.value);
            harmonic += static_cast<double>(pc.count) / static_cast<double>(pc.qv);
            any = true;
        }
        if (field_ == GlobalField::Rationals && !any && cut != max_cutoff) continue;
        EulerStep st;
        st.cutoff = cut;
        st.log_value = logp;
        st.value = std::exp(logp);
        st.r_statistic = harmonic > 0 ? logp / (2 * harmonic) : 0;
        est.trace.push_back(st);
    }
    return est;
}

nlohmann::json EulerEstimate::to_json() const {
    nlohmann::json tr = nlohmann::json::array();
    for (const auto& st : trace)
        tr.push_back({{"cutoff", st.cutoff}, {"value", st.value}, {"log_value", st.log_value}, {"r_statistic", st.r_statistic}});
    return {{"group", group},
            {"field", field},
            {"p", p},
            {"s", s},
            {"excluded_places", field == "Fp(t)" ? "infinite place (in S)" : "p <= 3 and the archimedean factor (finite part)"},
            {"all_converged", all_converged},
            {"trace", tr}};
}

std::string EulerEstimate::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "cutoff,s,partial_product,r_statistic\n";
    for (const auto& st : trace) os << st.cutoff << "," << s << "," << st.value << "," << st.r_statistic << "\n";
    return os.str();
}

EulerEstimate partial_product(const GroupId& G, GlobalField field, int p, double s, int cutoff, int level_cap) {
    EulerEngine eng(G, field, p, 1e-15, level_cap);
    if (cutoff <= 0) {
        EulerEstimate e;
        e.group = G.name();
        e.field = field == GlobalField::FunctionField ? "Fp(t)" : "Q";
        e.p = p;
        e.s = s;
        e.trace.push_back({0, 0.0, 1.0, 0.0});
        return e;
    }
    return eng.partial_products(s, cutoff);
}

nlohmann::json PoleProbe::to_json() const {
    nlohmann::json rv = nlohmann::json::array();
    for (const auto& [c, r] : r_values) rv.push_back({{"cutoff", c}, {"R", r}});
    return {{"at_one", at_one.to_json()}, {"r_values", rv}, {"leading_terms", leading_terms}};
}

PoleProbe pole_probe(const GroupId& G, GlobalField field, int p, int max_cutoff, int level_cap) {
    EulerEngine eng(G, field, p, 1e-15, level_cap);
    PoleProbe pr;
    pr.at_one = eng.partial_products(1.0, max_cutoff);
    for (const auto& st : pr.at_one.trace) pr.r_values.emplace_back(st.cutoff, st.r_statistic);
    for (const auto& pc : places(field, p, max_cutoff)) {
        const LocalValue& lv = eng.local(pc.qv, pc.degree, 1.0);
        pr.leading_terms.push_back({{"qv", pc.qv},
                                    {"levels", lv.levels},
                                    {"converged", lv.converged},
                                    {"local_value", lv.value},
                                    {"smallest_dim", lv.smallest_dim},
                                    {"smallest_mult", lv.smallest_mult}});
    }
    return pr;
}

}  // namespace repzeta
