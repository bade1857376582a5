#include "repzeta/orbits.hpp"

#include "repzeta/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace repzeta {

std::string OrbitType::tag() const {
    switch (kind) {
        case OrbitKind::Scalar: return "scalar";
        case OrbitKind::Decomposable: return "decomposable";
        case OrbitKind::NilpotentTranslate: return "nilpotent_translate";
        case OrbitKind::Regular: break;
    }
    return "regular:" + pattern;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // ascending, monic

// Faddeev-LeVerrier over the residue field.
Poly charpoly_codes(const FastRing& F, const SMat& A) {
    const int d = A.d;
    Poly c(d + 1, 0);
    c[d] = 1;
    SMat M = sm_zero(d);
    SMat I = sm_identity(d);
    for (int k = 1; k <= d; ++k) {
        M = sm_add(F, sm_mul(F, A, M), sm_scale(F, c[d - k + 1], I));
        std::uint32_t t = sm_trace(F, sm_mul(F, A, M));
        c[d - k] = F.neg(F.mul(t, F.inv(F.from_int(k))));
    }
    return c;
}

std::uint32_t poly_eval(const FastRing& F, const Poly& f, std::uint32_t x) {
    std::uint32_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
    return acc;
}

// f / (t - a), assuming a is a root.
Poly deflate(const FastRing& F, const Poly& f, std::uint32_t a) {
    Poly q(f.size() - 1, 0);
    std::uint32_t carry = 0;
    for (std::size_t i = f.size(); i-- > 1;) {
        carry = F.add(f[i], F.mul(carry, a));
        q[i - 1] = carry;
    }
    return q;
}

struct Factorisation {
    std::vector<std::pair<std::uint32_t, int>> roots;  // base-field roots with multiplicity
    int rest = 0;                                       // degree of the root-free cofactor
};

Factorisation factor_base(const FastRing& F, Poly f) {
    Factorisation out;
    for (std::uint32_t a = 0; a < F.base_size() && f.size() > 1; ++a) {
        int mult = 0;
        while (f.size() > 1 && poly_eval(F, f, a) == 0) {
            f = deflate(F, f, a);
            ++mult;
        }
        if (mult) out.roots.emplace_back(a, mult);
    }
    out.rest = static_cast<int>(f.size()) - 1;
    return out;
}

std::string pattern_of(const Factorisation& fac) {
    std::vector<std::pair<int, int>> parts;  // (degree, multiplicity)
    for (auto [a, m] : fac.roots) parts.emplace_back(1, m);
    if (fac.rest) parts.emplace_back(fac.rest, 1);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    std::string s;
    for (auto [deg, m] : parts) {
        if (!s.empty()) s += ",";
        s += std::to_string(deg);
        if (m > 1) s += "^" + std::to_string(m);
    }
    return s;
}

// Rank over the residue field of a list of vectors of codes.
int rank_codes(const FastRing& F, std::vector<std::vector<std::uint32_t>> rows) {
    int rank = 0;
    const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                piv = static_cast<int>(r);
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint32_t inv = F.inv(rows[rank][col]);
        for (auto& x : rows[rank]) x = F.mul(x, inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || rows[r][col] == 0) continue;
            std::uint32_t f = rows[r][col];
            for (std::size_t j = 0; j < ncols; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// Null space over the residue field (vectors of length ncols).
std::vector<std::vector<std::uint32_t>> kernel_codes(const FastRing& F, std::vector<std::vector<std::uint32_t>> rows,
                                                     std::size_t ncols) {
    std::vector<int> where(ncols, -1);
    int rank = 0;
    for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                piv = static_cast<int>(r);
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint32_t inv = F.inv(rows[rank][col]);
        for (auto& x : rows[rank]) x = F.mul(x, inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || rows[r][col] == 0) continue;
            std::uint32_t f = rows[r][col];
            for (std::size_t j = 0; j < ncols; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
        }
        where[col] = rank++;
    }
    std::vector<std::vector<std::uint32_t>> ker;
    for (std::size_t fr = 0; fr < ncols; ++fr) {
        if (where[fr] != -1) continue;
        std::vector<std::uint32_t> v(ncols, 0);
        v[fr] = 1;
        for (std::size_t col = 0; col < ncols; ++col)
            if (where[col] != -1) v[col] = F.neg(rows[where[col]][fr]);
        ker.push_back(std::move(v));
    }
    return ker;
}

bool is_scalar(const SMat& x) {
    for (int i = 0; i < x.d; ++i)
        for (int j = 0; j < x.d; ++j) {
            if (i != j && x.at(i, j) != 0) return false;
            if (x.at(i, i) != x.at(0, 0)) return false;
        }
    return true;
}

}  // namespace

OrbitType classify_level1(const FastRing& F1, const SMat& x, const GroupId& lie) {
    if (F1.ring().ell() != 1) throw Error("Domain", "classify_level1 needs a level-1 ring");
    OrbitType t;
    SMat h = lie.unitary() ? sm_scale(F1, F1.inv(F1.rho()), x) : x;
    Factorisation fac = factor_base(F1, charpoly_codes(F1, h));
    t.pattern = pattern_of(fac);
    std::vector<std::vector<std::uint32_t>> krylov;
    SMat P = sm_identity(x.d);
    for (int i = 0; i < x.d; ++i) {
        krylov.emplace_back(P.e.begin(), P.e.begin() + x.d * x.d);
        P = sm_mul(F1, P, x);
    }
    if (x.d == 1 || rank_codes(F1, krylov) == x.d) {
        t.kind = OrbitKind::Regular;
    } else if (is_scalar(x)) {
        t.kind = OrbitKind::Scalar;
    } else {
        t.kind = fac.roots.size() >= 2 ? OrbitKind::Decomposable : OrbitKind::NilpotentTranslate;
    }
    return t;
}

OrbitType classify_level1(const LocalRing& R1, const Mat& x, const GroupId& lie) {
    FastRing F1(R1);
    return classify_level1(F1, sm_from_mat(F1, x), lie);
}

BigInt OrbitCensus::points() const {
    BigInt s = 0;
    for (const auto& r : rows) s += r.count * r.size;
    return s;
}

BigInt OrbitCensus::orbits() const {
    BigInt s = 0;
    for (const auto& r : rows) s += r.count;
    return s;
}

bool OrbitCensus::closed() const {
    if (points() != space_size) return false;
    for (const auto& r : rows)
        if (r.stabilizer * r.size != group_order) return false;
    return true;
}

OrbitCensus OrbitCensus::grouped() const {
    std::map<std::pair<std::string, BigInt>, CensusRow> m;
    for (const auto& r : rows) {
        auto key = std::make_pair(r.type, r.size);
        auto it = m.find(key);
        if (it == m.end()) m.emplace(key, r);
        else it->second.count += r.count;
    }
    OrbitCensus out = *this;
    out.rows.clear();
    for (auto& [k, r] : m) out.rows.push_back(r);
    return out;
}

bool OrbitCensus::same_rows(const OrbitCensus& o) const {
    OrbitCensus a = grouped(), b = o.grouped();
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto &x = a.rows[i], &y = b.rows[i];
        if (x.type != y.type || x.count != y.count || x.size != y.size || x.stabilizer != y.stabilizer) return false;
    }
    return a.space_size == b.space_size && a.group_order == b.group_order;
}

nlohmann::json OrbitCensus::to_json() const {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : rows)
        rs.push_back({{"type", r.type},
                      {"count", r.count.str()},
                      {"size", r.size.str()},
                      {"stabilizer_order", r.stabilizer.str()},
                      {"representative", r.representative}});
    return {{"name", name},
            {"space_size", space_size.str()},
            {"group_order", group_order.str()},
            {"orbits", orbits().str()},
            {"closed", closed()},
            {"rows", rs}};
}

std::string OrbitCensus::to_csv() const {
    std::ostringstream os;
    os << "type,count,size,stabilizer_order,representative\n";
    for (const auto& r : rows)
        os << r.type << "," << r.count << "," << r.size << "," << r.stabilizer << ",\"" << r.representative << "\"\n";
    return os.str();
}

std::vector<RegularClass> regular_classes(const GroupId& G, std::int64_t qq) {
    const BigInt q = qq;
    const int eps = G.eps();
    const BigInt qe = q - eps;  // q - eps
    const BigInt iota = (G.eps() > 0 ? (qq - 1) : (qq + 1)) % 3 == 0 ? 3 : 1;
    std::vector<RegularClass> v;
    auto add = [&](const char* pat, BigInt count, BigInt cent) { v.push_back({pat, count, cent}); };
    if (G.d == 1) {
        if (G.special()) add("1", 1, 1);
        else add("1", q, qe);
        return v;
    }
    if (G.d == 2) {
        if (!G.special()) {
            if (eps > 0) {
                add("1,1", q * (q - 1) / 2, (q - 1) * (q - 1));
                add("1^2", q, q * (q - 1));
            } else {
                add("1,1", q * (q - 1) / 2, (q + 1) * (q + 1));
                add("1^2", q, q * (q + 1));
            }
            add("2", (q * q - q) / 2, q * q - 1);
        } else {
            add("1^2", 2, 2 * q);
            add("1,1", (q - 1) / 2, eps > 0 ? q - 1 : q + 1);
            add("2", (q - 1) / 2, eps > 0 ? q + 1 : q - 1);
        }
        return v;
    }
    if (!G.special()) {
        add("1,1,1", q * (q - 1) * (q - 2) / 6, qe * qe * qe);
        add("1^2,1", q * (q - 1), q * qe * qe);
        add("1^3", q, q * q * qe);
        add("2,1", q * (q * q - q) / 2, (q * q - 1) * qe);
        add("3", (q * q * q - q) / 3, q * q * q - eps);
    } else {
        add("1,1,1", (q - 1) * (q - 2) / 6, qe * qe);
        add("1^2,1", q - 1, q * qe);
        add("1^3", iota, q * q * iota);
        add("2,1", (q * q - q) / 2, q * q - 1);
        add("3", (q * q - 1) / 3, eps > 0 ? q * q + q + 1 : q * q - q + 1);
    }
    return v;
}

OrbitCensus regular_census(const GroupId& G, std::int64_t q) {
    OrbitCensus c;
    c.name = G.name() + " regular, q=" + std::to_string(q);
    c.group_order = group_order_k(G, q);
    for (const auto& rc : regular_classes(G, q)) {
        if (rc.count == 0) continue;
        if (c.group_order % rc.centralizer != 0) throw Error("Internal", "centralizer order does not divide |G(k)|");
        c.rows.push_back({"regular:" + rc.pattern, rc.count, c.group_order / rc.centralizer, rc.centralizer, ""});
    }
    c.space_size = c.points();
    return c;
}

BigInt regular_element_count(const GroupId& G, std::int64_t q) { return regular_census(G, q).points(); }

BigInt decomposable_orbit_count(const GroupId& G, std::int64_t q) {
    if (G.d != 3) return 0;
    return G.special() ? BigInt(q - 1) : BigInt(q) * (q - 1);
}

BigInt translate_orbit_count(const GroupId& G, std::int64_t q) {
    if (G.d != 3) return 0;
    return G.special() ? BigInt(1) : BigInt(q);
}

BigInt decomposable_orbit_size(const GroupId& G, std::int64_t q) {
    GroupId g2 = G.general().with_d(2), g1 = G.general().with_d(1);
    BigInt sub = group_order_k(g2, q);
    if (!G.special()) sub *= group_order_k(g1, q);
    return group_order_k(G, q) / sub;
}

BigInt nilpotent_orbit_size(const GroupId& G, std::int64_t q) {
    BigInt Q = q, qe = Q - G.eps();
    BigInt j = qe * bpow(Q, 3);
    if (!G.special()) j *= qe;
    return group_order_k(G, q) / j;
}

OrbitCensus level1_census(const GroupId& G, std::int64_t q) {
    OrbitCensus c = regular_census(G, q);
    c.name = G.name() + " level-1 census, q=" + std::to_string(q);
    const BigInt order = c.group_order;
    if (G.d >= 2) {
        BigInt scalars = G.special() ? BigInt(1) : BigInt(q);
        c.rows.push_back({"scalar", scalars, 1, order, "aI"});
    }
    if (G.d == 3) {
        BigInt s = decomposable_orbit_size(G, q);
        c.rows.push_back({"decomposable", decomposable_orbit_count(G, q), s, order / s, "diag(a,a,b)"});
        s = nilpotent_orbit_size(G, q);
        c.rows.push_back({"nilpotent_translate", translate_orbit_count(G, q), s, order / s, "aI+rE"});
    }
    c.space_size = bpow(BigInt(q), G.dim());
    return c;
}

std::vector<SMat> lie_basis(const FastRing& F, const GroupId& G) {
    const int d = G.d;
    std::vector<SMat> basis;
    auto unit = [&](int i, int j, std::uint32_t v) {
        SMat m = sm_zero(d);
        m.at(i, j) = v;
        return m;
    };
    if (!G.unitary()) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!G.special() || i != j) basis.push_back(unit(i, j, 1));
        if (G.special())
            for (int i = 0; i + 1 < d; ++i) {
                SMat m = unit(i, i, 1);
                m.at(i + 1, i + 1) = F.neg(1);
                basis.push_back(m);
            }
        return basis;
    }
    const std::uint32_t rho = F.rho();
    std::vector<std::pair<SMat, std::uint32_t>> traced;  // diagonal elements with trace c*rho
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            int i2 = d - 1 - j, j2 = d - 1 - i;
            if (std::make_pair(i2, j2) < std::make_pair(i, j)) continue;
            std::vector<SMat> here;
            if (i2 == i && j2 == j) {
                here.push_back(unit(i, j, rho));
            } else {
                SMat a = unit(i, j, 1);
                a.at(i2, j2) = F.neg(1);
                SMat b = unit(i, j, rho);
                b.at(i2, j2) = rho;
                here.push_back(a);
                here.push_back(b);
            }
            for (SMat& m : here) {
                std::uint32_t tr = sm_trace(F, m);
                if (!G.special() || tr == 0) basis.push_back(m);
                else traced.emplace_back(m, F.hi(tr));
            }
        }
    if (G.special() && !traced.empty()) {
        std::size_t piv = 0;
        while (piv < traced.size() && !F.is_unit(traced[piv].second)) ++piv;
        if (piv == traced.size()) throw Error("Internal", "no unit trace among diagonal basis elements");
        std::uint32_t cinv = F.inv(traced[piv].second);
        for (std::size_t t = 0; t < traced.size(); ++t) {
            if (t == piv) continue;
            std::uint32_t f = F.mul(traced[t].second, cinv);
            basis.push_back(sm_sub(F, traced[t].first, sm_scale(F, f, traced[piv].first)));
        }
    }
    return basis;
}

namespace {

std::string smat_str(const FastRing& F, const SMat& A) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < A.d; ++i) {
        if (i) os << ";";
        for (int j = 0; j < A.d; ++j) {
            if (j) os << " ";
            std::uint32_t u = A.at(i, j);
            os << F.lo(u);
            if (F.hi(u)) os << "+" << F.hi(u) << "r";
        }
    }
    os << "]";
    return os.str();
}

// Enumerates sum c_i * basis_i over all coefficient tuples in o_l.
template <class Fn>
void for_each_combination(const FastRing& F, const std::vector<SMat>& basis, int d, Fn&& fn) {
    const std::uint32_t B = F.base_size();
    std::vector<std::uint32_t> c(basis.size(), 0);
    for (;;) {
        SMat X = sm_zero(d);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (c[i]) X = sm_add(F, X, sm_scale(F, c[i], basis[i]));
        fn(X);
        std::size_t k = 0;
        while (k < c.size() && ++c[k] == B) c[k++] = 0;
        if (k == c.size()) break;
    }
}

}  // namespace

OrbitCensus brute_force_census(const GroupId& G, const LocalRing& R, std::uint64_t bound) {
    FastRing F(R);
    auto basis = lie_basis(F, G);
    long double n = std::pow(static_cast<long double>(F.base_size()), basis.size());
    if (n > bound) throw Error("TooLarge", G.name() + " Lie algebra has " + std::to_string(static_cast<double>(n)) + " points");
    Codec codec = Codec::full(F, G.d);
    std::vector<std::uint64_t> keys;
    CodeIndex index;
    keys.reserve(static_cast<std::size_t>(n));
    index.reserve(static_cast<std::size_t>(n));
    for_each_combination(F, basis, G.d, [&](const SMat& X) { index.insert(codec.encode(X), keys); });

    auto T = build_group(GroupSpec::classical(G), F);
    std::vector<std::pair<SMat, SMat>> conj;
    for (const SMat& g : T->gens) {
        SMat gi;
        sm_inverse(F, g, gi);
        conj.emplace_back(g, gi);
    }
    Partition P = bfs_partition(keys.size(), [&](std::uint32_t i, std::vector<std::uint32_t>& out) {
        SMat x = codec.decode(F, keys[i]);
        for (const auto& [g, gi] : conj) out.push_back(index.find(codec.encode(sm_mul(F, sm_mul(F, g, x), gi)), keys));
    });

    OrbitCensus c;
    c.name = G.name() + " brute force, " + std::string(kind_name(R.kind())) + " q=" + std::to_string(R.q()) +
             " l=" + std::to_string(R.ell());
    c.space_size = keys.size();
    c.group_order = T->size();
    std::map<std::pair<std::string, std::uint64_t>, std::pair<std::uint64_t, std::string>> rows;
    for (std::size_t b = 0; b < P.count(); ++b) {
        SMat rep = codec.decode(F, keys[P.reps[b]]);
        std::string type = R.ell() == 1 ? classify_level1(F, rep, G).tag() : "orbit";
        auto& slot = rows[{type, P.sizes[b]}];
        if (slot.first++ == 0) slot.second = smat_str(F, rep);
    }
    for (const auto& [key, val] : rows) {
        if (c.group_order % key.second != 0) throw Error("Internal", "orbit size does not divide the group order");
        c.rows.push_back({key.first, val.first, key.second, c.group_order / key.second, val.second});
    }
    return c;
}

NilpotentLift make_lift(const LocalRing& R, bool unitary, const QuadElem& omega, const QuadElem& delta,
                        const QuadElem& alpha, const QuadElem& beta, const QuadElem& gamma) {
    NilpotentLift L;
    L.ell = R.ell();
    L.unitary = unitary;
    L.omega = omega;
    L.delta = delta;
    L.alpha = alpha;
    L.beta = beta;
    L.gamma = gamma;
    L.m = std::min({R.qvaluation(alpha), R.qvaluation(beta), R.qvaluation(gamma)});
    validate_lift(R, L);
    return L;
}

void validate_lift(const LocalRing& R, const NilpotentLift& L) {
    if (L.ell != R.ell()) throw Error("Domain", "lift level does not match the ring");
    int m = std::min({R.qvaluation(L.alpha), R.qvaluation(L.beta), R.qvaluation(L.gamma)});
    if (m != L.m) throw Error("Domain", "m must be min{val alpha, val beta, val gamma}");
    if (L.m < 1 || L.m > L.ell) throw Error("Domain", "need 1 <= m <= l");
    if (R.qvaluation(L.omega) < 1 || R.qvaluation(L.delta) < 1) throw Error("Domain", "omega and delta must lie in p");
    auto in_base = [&](const QuadElem& x) { return R.is_zero(x.b); };
    if (!L.unitary) {
        for (const QuadElem* x : {&L.omega, &L.delta, &L.alpha, &L.beta, &L.gamma})
            if (!in_base(*x)) throw Error("Domain", "linear lift parameters must lie in o");
    } else {
        if (!in_base(L.omega) || !in_base(L.delta) || !in_base(L.gamma))
            throw Error("Domain", "unitary lift needs omega, delta, gamma fixed by conjugation");
        if (!(L.beta == R.conj(L.alpha))) throw Error("Domain", "unitary lift needs beta = conj(alpha)");
    }
}

Mat nilpotent_lift_matrix(const LocalRing& R, const NilpotentLift& L) {
    validate_lift(R, L);
    Mat A = mat_zero(R, 3);
    A.at(0, 2) = R.qone();
    for (int i = 0; i < 3; ++i) A.at(i, i) = L.omega;
    A.at(1, 1) = R.qadd(A.at(1, 1), L.delta);
    A.at(2, 0) = R.qadd(R.qmul(L.delta, L.delta), L.gamma);
    A.at(1, 0) = L.alpha;
    A.at(2, 1) = L.beta;
    if (L.unitary) A = mat_scale(R, R.rho(), A);
    return A;
}

namespace {

OrbitCensus three_family_table(std::int64_t qq, int eps, const std::string& name) {
    BigInt q = qq;
    OrbitCensus c;
    c.name = name;
    c.space_size = bpow(q, 5);
    c.group_order = (q - eps) * (q - eps) * bpow(q, 3);
    auto row = [&](const char* t, BigInt count, BigInt size, const char* rep) {
        c.rows.push_back({t, count, size, c.group_order / size, rep});
    };
    row("trivial", q * q, 1, "W(alpha,beta|0,0,0)");
    row("nu_unit", q * q * (q - 1), q * q, "W(alpha,beta|0,0,nu)");
    row("sigma_unit", q * (q + eps), q * (q - eps), "W(alpha,beta|sigma,tau,0)");
    return c;
}

// Transversal h^T of [g, E] in g(k): [[w,0,0],[a,v,0],[c,b,w]] (times the gu constraints).
std::vector<SMat> transversal(const FastRing& F1, int eps) {
    std::vector<SMat> pts;
    const std::uint32_t q = F1.base_size();
    auto make = [&](std::uint32_t w, std::uint32_t v, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        SMat X = sm_zero(3);
        X.at(0, 0) = w;
        X.at(2, 2) = w;
        X.at(1, 1) = v;
        X.at(1, 0) = a;
        X.at(2, 1) = b;
        X.at(2, 0) = c;
        return X;
    };
    if (eps > 0) {
        for (std::uint32_t w = 0; w < q; ++w)
            for (std::uint32_t v = 0; v < q; ++v)
                for (std::uint32_t a = 0; a < q; ++a)
                    for (std::uint32_t b = 0; b < q; ++b)
                        for (std::uint32_t c = 0; c < q; ++c) pts.push_back(make(w, v, a, b, c));
    } else {
        const std::uint32_t rho = F1.rho();
        for (std::uint32_t w = 0; w < q; ++w)
            for (std::uint32_t v = 0; v < q; ++v)
                for (std::uint32_t a = 0; a < F1.size(); ++a)
                    for (std::uint32_t c = 0; c < q; ++c)
                        pts.push_back(make(F1.mul(rho, w), F1.mul(rho, v), a, F1.neg(F1.conj(a)), F1.mul(rho, c)));
    }
    return pts;
}

SMat project_transversal(const FastRing& F1, const SMat& M) {
    SMat X = sm_zero(3);
    std::uint32_t w = F1.mul(F1.add(M.at(0, 0), M.at(2, 2)), F1.inv(F1.from_int(2)));
    X.at(0, 0) = w;
    X.at(2, 2) = w;
    X.at(1, 1) = M.at(1, 1);
    X.at(1, 0) = M.at(1, 0);
    X.at(2, 1) = M.at(2, 1);
    X.at(2, 0) = M.at(2, 0);
    return X;
}

std::string family_of(const SMat& X) {
    if (X.at(2, 0) != 0) return "nu_unit";
    if (X.at(1, 0) != 0 || X.at(2, 1) != 0) return "sigma_unit";
    return "trivial";
}

// Orbits on the fibre above X0 (level L-1 data, level L arithmetic) or, for L = 1,
// the coadjoint orbits of J(k) on the transversal.
OrbitCensus transversal_orbits(const LocalRing& R, int eps, bool delta_pi, const std::string& name) {
    const int L = R.ell();
    const int shift = L - 1;
    LocalRing R1 = R.at_level(1);
    FastRing F1(R1);
    FastRing F(R);

    std::vector<std::uint32_t> lift(F1.size());
    for (std::uint32_t u = 0; u < F1.size(); ++u) lift[u] = F.from_quad(R.qlift(F1.to_quad(u), R1));
    // entries of pi^shift * y reduced to y mod pi; kNone when not divisible
    std::vector<std::uint32_t> down(F.size(), kNone);
    for (std::uint32_t u = 0; u < F.size(); ++u) {
        if (F.val(u) < shift) continue;
        QuadElem x = R.qdiv_pi(F.to_quad(u), shift);
        down[u] = F1.from_quad(R.qreduce(x, R1));
    }

    SMat X0 = shift == 0 ? sm_zero(3) : j_center(F, eps, delta_pi);
    const std::uint32_t pis = F.pi_pow(shift);

    std::mt19937_64 rng(0xb4a2c0ULL + static_cast<std::uint64_t>(L));
    GroupSpec spec = GroupSpec::j(eps, delta_pi);
    GroupSpec spec1 = GroupSpec::j(eps, false);
    auto T1 = build_group(spec1, F1);
    std::vector<SMat> gens = group_generators(F, spec, rng);
    auto reduce_mat = [&](const SMat& g) {
        SMat r = sm_zero(3);
        for (int i = 0; i < 9; ++i) r.e[i] = F1.from_quad(R.qreduce(F.to_quad(g.e[i]), R1));
        return r;
    };
    for (int round = 0;; ++round) {
        std::vector<SMat> red;
        for (const SMat& g : gens) red.push_back(reduce_mat(g));
        if (generates(*T1, red)) break;
        if (round > 20) throw Error("Internal", "random J elements do not generate J(k)");
        auto more = group_generators(F, spec, rng);
        gens.insert(gens.end(), more.begin(), more.end());
    }
    for (const SMat& g : gens)
        if (!group_contains(F, spec, g)) throw Error("Internal", "generator outside J");

    std::vector<SMat> pts = transversal(F1, eps);
    Codec codec = Codec::full(F1, 3);
    std::vector<std::uint64_t> keys;
    CodeIndex index;
    index.reserve(pts.size());
    for (const SMat& p : pts) index.insert(codec.encode(p), keys);

    std::vector<std::pair<SMat, SMat>> conj;
    for (const SMat& g : gens) {
        SMat gi;
        sm_inverse(F, g, gi);
        conj.emplace_back(g, gi);
    }
    Partition P = bfs_partition(pts.size(), [&](std::uint32_t i, std::vector<std::uint32_t>& out) {
        SMat Xh = sm_zero(3);
        for (int t = 0; t < 9; ++t) Xh.e[t] = F.add(X0.e[t], F.mul(pis, lift[pts[i].e[t]]));
        for (const auto& [g, gi] : conj) {
            SMat Y = sm_sub(F, sm_mul(F, sm_mul(F, g, Xh), gi), X0);
            SMat D = sm_zero(3);
            for (int t = 0; t < 9; ++t) {
                D.e[t] = down[Y.e[t]];
                if (D.e[t] == kNone) throw Error("Internal", "conjugate left the fibre");
            }
            out.push_back(index.find(codec.encode(project_transversal(F1, D)), keys));
        }
    });

    OrbitCensus c;
    c.name = name;
    c.space_size = pts.size();
    c.group_order = (BigInt(R.q()) - eps) * (BigInt(R.q()) - eps) * bpow(BigInt(R.q()), 3);
    std::map<std::pair<std::string, std::uint64_t>, std::pair<std::uint64_t, std::string>> rows;
    for (std::size_t b = 0; b < P.count(); ++b) {
        const SMat& rep = pts[P.reps[b]];
        auto& slot = rows[{family_of(rep), P.sizes[b]}];
        if (slot.first++ == 0) slot.second = smat_str(F1, rep);
    }
    for (const auto& [key, val] : rows) {
        if (c.group_order % key.second != 0) throw Error("Internal", "orbit size does not divide |J(k)|");
        c.rows.push_back({key.first, val.first, key.second, c.group_order / key.second, val.second});
    }
    return c;
}

}  // namespace

OrbitCensus branching_fiber(int eps, std::int64_t q) {
    return three_family_table(q, eps, std::string(eps > 0 ? "linear" : "unitary") + " branching fibre, q=" + std::to_string(q));
}

OrbitCensus branching_fiber_brute(const LocalRing& R, int eps, bool delta_pi) {
    if (R.ell() < 2) throw Error("Domain", "the fibre ring must have level >= 2");
    return transversal_orbits(R, eps, delta_pi,
                              std::string(eps > 0 ? "linear" : "unitary") + " branching fibre brute force, " +
                                  kind_name(R.kind()) + " q=" + std::to_string(R.q()) + " l=" +
                                  std::to_string(R.ell() - 1) + "->" + std::to_string(R.ell()) +
                                  (delta_pi ? " delta=pi" : " delta=0"));
}

OrbitCensus j_coadjoint_census(std::int64_t q, int eps) {
    return three_family_table(q, eps, std::string(eps > 0 ? "J_L" : "J_U") + " coadjoint orbits, q=" + std::to_string(q));
}

OrbitCensus j_coadjoint_brute(const LocalRing& R1, int eps) {
    if (R1.ell() != 1) throw Error("Domain", "coadjoint census is a level-1 computation");
    return transversal_orbits(R1, eps, false,
                              std::string(eps > 0 ? "J_L" : "J_U") + " coadjoint brute force, q=" + std::to_string(R1.q()));
}

nlohmann::json NilpotentStabilizers::to_json() const {
    return {{"m", m},         {"m1", m1},
            {"m2", m2},       {"ell1", ell1},
            {"ell2", ell2},   {"split", split},
            {"scheme", scheme}, {"inertia_order", inertia.str()},
            {"stabilizer_order", stabilizer.str()}, {"group_order", group.str()},
            {"congruence_order", congruence.str()}};
}

NilpotentStabilizers nilpotent_stabilizers(const GroupId& G, std::int64_t qq, int ell, int m, bool split,
                                           const std::string& scheme) {
    if (G.d != 3) throw Error("Domain", "nilpotent lifts live in d = 3");
    NilpotentStabilizers s;
    s.m = m;
    s.ell1 = ell / 2;
    s.ell2 = ell - s.ell1;
    s.m1 = (ell - m) / 2;
    s.m2 = ell - m - s.m1;
    s.split = split;
    s.scheme = scheme;
    const BigInt q = qq;
    const int eps = G.eps();
    const BigInt qe = q - eps;
    s.group = group_order(G, qq, ell);
    s.congruence = bpow(q, static_cast<long>(G.dim()) * s.ell2);
    // f = (q-eps)^2/q^2 (split) or (q-eps)/q, kept as numerator over q^fd
    BigInt fnum = split ? qe * qe : qe;
    int fden = split ? 2 : 1;
    auto with_f = [&](long qexp) {
        if (qexp < fden) throw Error("Internal", "stabiliser order is not integral");
        return bpow(q, qexp - fden) * fnum;
    };
    BigInt stab = with_f(9L * s.ell2 + 5L * s.ell1 - 2L * s.m1);
    BigInt inert;
    if (m < s.ell1) {
        inert = with_f(9L * s.ell2 + 3L * s.ell1 + 2L * m);
    } else {
        inert = qe * qe * bpow(q, 5L * s.ell1 - 2 + 9L * s.ell2);
    }
    if (G.special()) {
        const std::int64_t qm = eps > 0 ? qq - 1 : qq + 1;
        BigInt iota = qm % 3 == 0 ? 3 : 1;
        BigInt det_image = qe * bpow(q, ell - 1);
        if (!split) det_image /= iota;
        if (stab % det_image != 0 || inert % det_image != 0) throw Error("Internal", "determinant image does not divide");
        stab /= det_image;
        inert /= det_image;
    }
    s.stabilizer = stab;
    s.inertia = inert;
    if (s.group % s.stabilizer != 0) throw Error("Internal", "stabiliser order does not divide |G(o_l)|");
    return s;
}

NilpotentStabilizers stabilizer_orders(const LocalRing& R, const NilpotentLift& L, const GroupId& G, int ell) {
    validate_lift(R, L);
    if (L.unitary != G.unitary()) throw Error("Domain", "lift and group disagree on linear/unitary");
    if (L.m >= L.ell) throw Error("Domain", "m = l2 is the zeta_J term, not a stabiliser stratum");
    const int va = R.qvaluation(L.alpha), vb = R.qvaluation(L.beta), vg = R.qvaluation(L.gamma);
    std::string scheme = va == L.m ? "H0" : vb == L.m ? "Hinf" : "H*";
    return nilpotent_stabilizers(G, R.q(), ell, L.m, vg == L.m, scheme);
}

BigInt j_stabilizer_order(const LocalRing& R, const JCoadjointLift& W, int eps) {
    const int ell = R.ell();
    if (W.ell != ell) throw Error("Domain", "lift level does not match the ring");
    const BigInt q = R.q(), qe = q - eps;
    const int vs = R.qvaluation(W.sigma), vt = R.qvaluation(W.tau), vn = R.qvaluation(W.nu);
    const int m = std::min({vs, vt, vn});
    if (m == ell) return qe * qe * bpow(q, 5L * ell - 2);
    if (vn == m) return qe * qe * bpow(q, 2L * (ell - 1) + ell + 2L * m);
    return qe * bpow(q, (ell - 1) + 2L * ell + 2L * m);
}

nlohmann::json ShadowReport::to_json() const {
    nlohmann::json j = {{"centralizer_dim", centralizer_dim},
                        {"shadow_dim", shadow_dim},
                        {"module_size", module_size.str()},
                        {"preserving", preserving}};
    if (order) j["order"] = order->str();
    return j;
}

namespace {

struct SmithResult {
    std::vector<int> diag;                      // valuations; ell means zero
    std::vector<std::vector<QuadElem>> Q;       // column transform, n x n
};

// U A Q = diag(pi^{e_i}) over the chain ring (o_l, or O_l when entries use rho).
SmithResult smith(const LocalRing& R, std::vector<std::vector<QuadElem>> A) {
    const std::size_t n = A.size();
    const int ell = R.ell();
    SmithResult S;
    S.Q.assign(n, std::vector<QuadElem>(n, R.qzero()));
    for (std::size_t i = 0; i < n; ++i) S.Q[i][i] = R.qone();
    S.diag.assign(n, ell);
    for (std::size_t t = 0; t < n; ++t) {
        int best = ell;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < n; ++j) {
                int v = R.qvaluation(A[i][j]);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best == ell) break;
        std::swap(A[t], A[bi]);
        for (auto& row : A) std::swap(row[t], row[bj]);
        for (auto& row : S.Q) std::swap(row[t], row[bj]);
        QuadElem uinv = R.qinv(R.qdiv_pi(A[t][t], best));
        for (std::size_t i = t + 1; i < n; ++i) {
            if (R.qis_zero(A[i][t])) continue;
            QuadElem c = R.qmul(R.qdiv_pi(A[i][t], best), uinv);
            for (std::size_t j = t; j < n; ++j) A[i][j] = R.qsub(A[i][j], R.qmul(c, A[t][j]));
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (R.qis_zero(A[t][j])) continue;
            QuadElem c = R.qmul(R.qdiv_pi(A[t][j], best), uinv);
            for (std::size_t i = 0; i < n; ++i) A[i][j] = R.qsub(A[i][j], R.qmul(c, A[i][t]));
            for (std::size_t i = 0; i < n; ++i) S.Q[i][j] = R.qsub(S.Q[i][j], R.qmul(c, S.Q[i][t]));
        }
        S.diag[t] = best;
    }
    return S;
}

// Matrix of X -> X xi - xi X on Mat_d, columns indexed by (a,b) -> a*d+b.
std::vector<std::vector<QuadElem>> commutator_matrix(const LocalRing& R, const Mat& xi) {
    const int d = xi.d, n = d * d;
    std::vector<std::vector<QuadElem>> M(n, std::vector<QuadElem>(n, R.qzero()));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    QuadElem v = R.qzero();
                    if (i == a) v = R.qadd(v, xi.at(b, j));
                    if (b == j) v = R.qsub(v, xi.at(i, a));
                    M[i * d + j][a * d + b] = v;
                }
    return M;
}

}  // namespace

ShadowReport shadow(const LocalRing& R, const Mat& xi, const GroupId& G, std::uint64_t count_limit) {
    if (G.special()) throw Error("Domain", "shadow is implemented for GL and GU");
    const int d = xi.d, n = d * d;
    const bool unitary = G.unitary();
    ShadowReport rep;
    auto M = commutator_matrix(R, xi);
    SmithResult S = smith(R, M);
    const int per = unitary ? 2 : 1;
    BigInt size = 1;
    std::vector<int> free_cols;
    for (int i = 0; i < n; ++i) {
        size *= bpow(BigInt(R.q()), static_cast<long>(per) * S.diag[i]);
        if (S.diag[i] == R.ell()) free_cols.push_back(i);
    }
    rep.module_size = size;
    rep.shadow_dim = static_cast<int>(free_cols.size());
    rep.centralizer_dim = n - residue_rank(R, M);
    rep.preserving = rep.shadow_dim == rep.centralizer_dim;

    LocalRing R1 = R.at_level(1);
    FastRing F1(R1);
    std::vector<SMat> basis;
    for (int col : free_cols) {
        SMat b = sm_zero(d);
        for (int r = 0; r < n; ++r) b.e[r] = F1.from_quad(R.qreduce(S.Q[r][col], R1));
        basis.push_back(b);
    }
    const std::uint32_t range = unitary ? F1.size() : F1.base_size();
    long double total = std::pow(static_cast<long double>(range), basis.size());
    if (total > count_limit) return rep;
    BigInt count = 0;
    std::vector<std::uint32_t> c(basis.size(), 0);
    const SMat I = sm_identity(d);
    for (;;) {
        SMat X = sm_zero(d);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (c[i]) X = sm_add(F1, X, sm_scale(F1, c[i], basis[i]));
        bool ok = unitary ? sm_mul(F1, sm_star(F1, X), X) == I : F1.is_unit(sm_det(F1, X));
        if (ok) ++count;
        std::size_t k = 0;
        while (k < c.size() && ++c[k] == range) c[k++] = 0;
        if (k == c.size()) break;
    }
    rep.order = count;
    return rep;
}

bool is_j_centralizer(const LocalRing& R, const Mat& xi, bool unitary, bool delta_pi) {
    const QuadElem delta = delta_pi ? R.embed(R.pi_pow(1)) : R.qzero();
    const QuadElem d2 = R.qmul(delta, delta);
    std::vector<Mat> shape;
    auto m = [&](std::initializer_list<std::tuple<int, int, QuadElem>> entries) {
        Mat A = mat_zero(R, 3);
        for (const auto& [i, j, v] : entries) A.at(i, j) = v;
        shape.push_back(A);
    };
    m({{0, 0, R.qone()}, {2, 2, R.qone()}});
    m({{1, 1, R.qone()}});
    m({{0, 1, R.qone()}, {2, 1, delta}});
    m({{0, 2, R.qone()}, {2, 0, d2}});
    m({{1, 2, R.qone()}, {1, 0, delta}});
    for (const Mat& A : shape)
        if (!mat_is_zero(R, mat_commutator(R, A, xi))) return false;
    SmithResult S = smith(R, commutator_matrix(R, xi));
    long total = 0;
    for (int e : S.diag) total += e;
    // |ker| = |R'|^5 exactly when the valuations add up to 5 l
    (void)unitary;
    return total == 5L * R.ell();
}

namespace {

// Solves A x = b over the local ring when A is invertible mod pi.
std::vector<QuadElem> solve_unit(const LocalRing& R, std::vector<std::vector<QuadElem>> A, std::vector<QuadElem> b) {
    const std::size_t n = A.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && !R.qis_unit(A[p][c])) ++p;
        if (p == n) throw Error("NotDecomposable", "Sylvester system is singular mod pi");
        std::swap(A[p], A[c]);
        std::swap(b[p], b[c]);
        QuadElem inv = R.qinv(A[c][c]);
        for (auto& x : A[c]) x = R.qmul(x, inv);
        b[c] = R.qmul(b[c], inv);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || R.qis_zero(A[r][c])) continue;
            QuadElem f = A[r][c];
            for (std::size_t j = 0; j < n; ++j) A[r][j] = R.qsub(A[r][j], R.qmul(f, A[c][j]));
            b[r] = R.qsub(b[r], R.qmul(f, b[c]));
        }
    }
    return b;
}

// Solves X A2 - A1 X = C for X (n1 x n2), blocks stored row-major.
std::vector<QuadElem> sylvester(const LocalRing& R, const Mat& A, int n1, const std::vector<QuadElem>& C) {
    const int d = A.d, n2 = d - n1, n = n1 * n2;
    std::vector<std::vector<QuadElem>> M(n, std::vector<QuadElem>(n, R.qzero()));
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            int row = i * n2 + j;
            // (X A2)_{ij} = sum_k X_{ik} A2_{kj}
            for (int k = 0; k < n2; ++k) M[row][i * n2 + k] = R.qadd(M[row][i * n2 + k], A.at(n1 + k, n1 + j));
            // (A1 X)_{ij} = sum_k A1_{ik} X_{kj}
            for (int k = 0; k < n1; ++k) M[row][k * n2 + j] = R.qsub(M[row][k * n2 + j], A.at(i, k));
        }
    return solve_unit(R, M, C);
}

bool off_blocks_zero(const LocalRing& R, const Mat& A, int n1) {
    for (int i = 0; i < A.d; ++i)
        for (int j = 0; j < A.d; ++j)
            if ((i < n1) != (j < n1) && !R.qis_zero(A.at(i, j))) return false;
    return true;
}

}  // namespace

BlockDiag block_diagonalize(const LocalRing& R, const Mat& xi) {
    const int d = xi.d;
    LocalRing R1 = R.at_level(1);
    FastRing F1(R1);
    SMat x1 = sm_from_mat(F1, mat_reduce(R, xi, R1));
    Poly chi = charpoly_codes(F1, x1);
    // factor over the field containing the entries
    std::vector<std::pair<std::uint32_t, int>> roots;
    Poly f = chi;
    const std::uint32_t range = std::all_of(xi.e.begin(), xi.e.end(), [&](const QuadElem& x) { return R.is_zero(x.b); }) ? F1.base_size() : F1.size();
    for (std::uint32_t a = 0; a < range && f.size() > 1; ++a) {
        int mult = 0;
        while (f.size() > 1 && poly_eval(F1, f, a) == 0) {
            f = deflate(F1, f, a);
            ++mult;
        }
        if (mult) roots.emplace_back(a, mult);
    }
    if (roots.empty() || (roots.size() == 1 && f.size() == 1))
        throw Error("NotDecomposable", "characteristic polynomial has no coprime factorisation mod pi");
    const auto [a, mult] = roots.front();
    // kernels of (x - a)^mult and of the cofactor evaluated at x
    SMat P1 = sm_identity(d), xa = sm_sub(F1, x1, sm_scale(F1, a, sm_identity(d)));
    for (int i = 0; i < mult; ++i) P1 = sm_mul(F1, P1, xa);
    Poly cof = chi;
    for (int i = 0; i < mult; ++i) cof = deflate(F1, cof, a);
    SMat P2 = sm_zero(d), pw = sm_identity(d);
    for (std::uint32_t c : cof) {
        P2 = sm_add(F1, P2, sm_scale(F1, c, pw));
        pw = sm_mul(F1, pw, x1);
    }
    auto rows_of = [&](const SMat& P) {
        std::vector<std::vector<std::uint32_t>> rows(d, std::vector<std::uint32_t>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) rows[i][j] = P.at(i, j);
        return rows;
    };
    auto K1 = kernel_codes(F1, rows_of(P1), d);
    auto K2 = kernel_codes(F1, rows_of(P2), d);
    const int n1 = static_cast<int>(K1.size());
    if (n1 + static_cast<int>(K2.size()) != d) throw Error("Internal", "generalised eigenspaces do not span");

    BlockDiag out;
    out.g = mat_identity(R, d);
    // already block diagonal in the given order
    for (int split : {n1, d - n1}) {
        if (!off_blocks_zero(R, xi, split)) continue;
        SMat t1 = sm_zero(split);
        for (int i = 0; i < split; ++i)
            for (int j = 0; j < split; ++j) t1.at(i, j) = F1.from_quad(R.qreduce(xi.at(i, j), R1));
        // the blocks are coprime when the top one holds all or none of the root a
        Poly tt = charpoly_codes(F1, t1);
        int ma = 0;
        while (tt.size() > 1 && poly_eval(F1, tt, a) == 0) {
            tt = deflate(F1, tt, a);
            ++ma;
        }
        bool top_pure = (ma == split && split == n1) || (ma == 0 && split == d - n1);
        if (!top_pure) continue;
        out.xi1 = mat_zero(R, split);
        out.xi2 = mat_zero(R, d - split);
        for (int i = 0; i < split; ++i)
            for (int j = 0; j < split; ++j) out.xi1.at(i, j) = xi.at(i, j);
        for (int i = split; i < d; ++i)
            for (int j = split; j < d; ++j) out.xi2.at(i - split, j - split) = xi.at(i, j);
        return out;
    }

    Mat g0 = mat_zero(R, d);
    for (int c = 0; c < d; ++c) {
        const auto& v = c < n1 ? K1[c] : K2[c - n1];
        for (int r = 0; r < d; ++r) g0.at(r, c) = R.qlift(F1.to_quad(v[r]), R1);
    }
    Mat g0i = mat_inverse(R, g0);
    Mat A = mat_mul(R, mat_mul(R, g0i, xi), g0);
    Mat S = mat_identity(R, d);
    const int n2 = d - n1;
    for (int it = 0; it < 4 * R.ell() + 4 && !off_blocks_zero(R, A, n1); ++it) {
        ++out.iterations;
        // upper block: X A2 - A1 X = -B
        std::vector<QuadElem> Bv;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) Bv.push_back(R.qneg(A.at(i, n1 + j)));
        auto X = sylvester(R, A, n1, Bv);
        Mat U = mat_identity(R, d), Ui = mat_identity(R, d);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                U.at(i, n1 + j) = X[i * n2 + j];
                Ui.at(i, n1 + j) = R.qneg(X[i * n2 + j]);
            }
        A = mat_mul(R, mat_mul(R, U, A), Ui);
        S = mat_mul(R, U, S);
        // lower block: Y A1 - A2 Y = -C, solved as the transposed Sylvester problem
        Mat At = mat_transpose(A);
        std::vector<QuadElem> Cv;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) Cv.push_back(A.at(n1 + j, i));
        // Y^T A2^T - A1^T Y^T = C^T
        auto Yt = sylvester(R, At, n1, Cv);
        Mat Lm = mat_identity(R, d), Li = mat_identity(R, d);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                Lm.at(n1 + j, i) = Yt[i * n2 + j];
                Li.at(n1 + j, i) = R.qneg(Yt[i * n2 + j]);
            }
        A = mat_mul(R, mat_mul(R, Lm, A), Li);
        S = mat_mul(R, Lm, S);
    }
    if (!off_blocks_zero(R, A, n1)) throw Error("Internal", "block iteration did not converge");
    out.g = mat_mul(R, S, g0i);
    out.xi1 = mat_zero(R, n1);
    out.xi2 = mat_zero(R, n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) out.xi1.at(i, j) = A.at(i, j);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) out.xi2.at(i, j) = A.at(n1 + i, n1 + j);
    return out;
}

OrbitCensus fibre_census(const LocalRing& R2, const GroupId& G, const Mat& xi) {
    if (G.family != Family::GL) throw Error("Domain", "fibre census is implemented for GL");
    if (R2.ell() != 2) throw Error("Domain", "fibre census runs at level 2");
    const int d = G.d;
    LocalRing R1 = R2.at_level(1);
    FastRing F1(R1), F2(R2);
    SMat x1 = sm_from_mat(F1, xi);

    // Z_{G(k)}(xi) as a table, with a verified generating set
    auto Tk = build_group(GroupSpec::classical(G), F1);
    GroupTable Z(F1, Codec::full(F1, d), "centralizer");
    for (std::uint32_t i = 0; i < Tk->size(); ++i) {
        SMat g = Tk->elem(i);
        if (sm_mul(F1, g, x1) == sm_mul(F1, x1, g)) Z.insert(g);
    }
    std::mt19937_64 rng(77);
    std::vector<SMat> zgens;
    for (int round = 0; !generates(Z, zgens); ++round) {
        if (round > 64) throw Error("Internal", "no generating set for the centralizer");
        zgens.push_back(Z.elem(static_cast<std::uint32_t>(rng() % Z.size())));
    }

    std::vector<std::uint32_t> lift(F1.size());
    for (std::uint32_t u = 0; u < F1.size(); ++u) lift[u] = F2.from_quad(R2.qlift(F1.to_quad(u), R1));
    std::vector<std::uint32_t> down(F2.size(), kNone);
    for (std::uint32_t u = 0; u < F2.size(); ++u)
        if (F2.val(u) >= 1) down[u] = F1.from_quad(R2.qreduce(R2.qdiv_pi(F2.to_quad(u), 1), R1));
    auto lift_mat = [&](const SMat& A) {
        SMat B = sm_zero(d);
        for (int i = 0; i < d * d; ++i) B.e[i] = lift[A.e[i]];
        return B;
    };

    std::vector<std::pair<SMat, SMat>> conj;
    auto add_gen = [&](const SMat& g) {
        SMat gi;
        if (!sm_inverse(F2, g, gi)) throw Error("Internal", "singular lifted generator");
        conj.emplace_back(g, gi);
    };
    for (const SMat& g : zgens) add_gen(lift_mat(g));
    const std::uint32_t pi = F2.pi_pow(1);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            SMat k = sm_identity(d);
            k.at(i, j) = F2.add(k.at(i, j), pi);
            add_gen(k);
        }

    const SMat X0 = lift_mat(x1);
    auto basis = lie_basis(F1, G);
    Codec codec = Codec::full(F1, d);
    std::vector<std::uint64_t> keys;
    CodeIndex index;
    index.reserve(static_cast<std::size_t>(std::pow(F1.base_size(), basis.size())));
    for_each_combination(F1, basis, d, [&](const SMat& Y) { index.insert(codec.encode(Y), keys); });

    Partition P = bfs_partition(keys.size(), [&](std::uint32_t i, std::vector<std::uint32_t>& out) {
        SMat Y = codec.decode(F1, keys[i]);
        SMat X = X0;
        for (int t = 0; t < d * d; ++t) X.e[t] = F2.add(X.e[t], F2.mul(pi, lift[Y.e[t]]));
        for (const auto& [g, gi] : conj) {
            SMat Z2 = sm_sub(F2, sm_mul(F2, sm_mul(F2, g, X), gi), X0);
            SMat Y2 = sm_zero(d);
            for (int t = 0; t < d * d; ++t) {
                Y2.e[t] = down[Z2.e[t]];
                if (Y2.e[t] == kNone) throw Error("Internal", "conjugate left the fibre");
            }
            out.push_back(index.find(codec.encode(Y2), keys));
        }
    });

    OrbitCensus c;
    c.name = G.name() + " fibre over " + smat_str(F1, x1) + ", q=" + std::to_string(R2.q()) + " l=2";
    c.space_size = keys.size();
    c.group_order = BigInt(Z.size()) * bpow(BigInt(R2.q()), G.dim());
    std::map<std::uint64_t, std::uint64_t> sizes;
    for (auto s : P.sizes) ++sizes[s];
    for (const auto& [s, n] : sizes) c.rows.push_back({"orbit", n, s, c.group_order / s, ""});
    return c;
}

}  // namespace repzeta
