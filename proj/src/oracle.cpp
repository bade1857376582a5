#include "repzeta/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>

namespace repzeta {

GroupSpec GroupSpec::parse(const std::string& s, bool delta_pi) {
    std::string t;
    for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "jl" || t == "j_l") return j(1, delta_pi);
    if (t == "ju" || t == "j_u") return j(-1, delta_pi);
    if (t == "jl'" || t == "jlp" || t == "jsl") return j(1, delta_pi, true);
    if (t == "ju'" || t == "jup" || t == "jsu") return j(-1, delta_pi, true);
    return classical(parse_group(t));
}

std::string GroupSpec::name() const {
    if (kind == Kind::Classical) return G.name();
    std::string n = eps > 0 ? "jL" : "jU";
    if (special) n += "'";
    if (delta_pi) n += "_pi";
    return n;
}

BigInt GroupSpec::order(std::int64_t q, int ell) const {
    if (kind == Kind::Classical) return group_order(G, q, ell);
    BigInt Q = q;
    BigInt qe = Q - eps;
    if (special) return qe * bpow(Q, 4 * ell - 1);
    return qe * qe * bpow(Q, 5 * ell - 2);
}

namespace {

std::uint32_t random_base(const FastRing& F, std::mt19937_64& rng) {
    return static_cast<std::uint32_t>(rng() % F.base_size());
}

std::uint32_t random_base_unit(const FastRing& F, std::mt19937_64& rng) {
    for (;;) {
        std::uint32_t u = random_base(F, rng);
        if (F.is_unit(u)) return u;
    }
}

std::uint32_t random_full(const FastRing& F, std::mt19937_64& rng) {
    return static_cast<std::uint32_t>(rng() % F.size());
}

std::uint32_t delta_code(const FastRing& F, bool delta_pi) { return delta_pi ? F.pi_pow(1) : 0; }

// [[a,x,z],[d*y,b,y],[d^2*z,d*x,a]]
SMat j_shape(const FastRing& F, std::uint32_t delta, std::uint32_t a, std::uint32_t x, std::uint32_t z,
             std::uint32_t b, std::uint32_t y) {
    SMat A = sm_zero(3);
    A.at(0, 0) = a;
    A.at(0, 1) = x;
    A.at(0, 2) = z;
    A.at(1, 0) = F.mul(delta, y);
    A.at(1, 1) = b;
    A.at(1, 2) = y;
    A.at(2, 0) = F.mul(F.mul(delta, delta), z);
    A.at(2, 1) = F.mul(delta, x);
    A.at(2, 2) = a;
    return A;
}

bool entries_in_base(const FastRing& F, const SMat& A) {
    for (int i = 0; i < A.d * A.d; ++i)
        if (F.hi(A.e[i]) != 0) return false;
    return true;
}

// Multiplies A by diag(1, det(A)^{-1}, 1) (or its d-dimensional analogue) so that det = 1.
SMat to_special(const FastRing& F, const SMat& A) {
    std::uint32_t di = F.inv(sm_det(F, A));
    if (di == kNone) throw Error("Internal", "singular matrix in generator projection");
    SMat D = sm_identity(A.d);
    D.at(A.d / 2, A.d / 2) = di;
    return sm_mul(F, A, D);
}

bool gl_element(const FastRing& F, int d, std::mt19937_64& rng, SMat& out) {
    SMat A = sm_zero(d);
    for (int i = 0; i < d * d; ++i) A.e[i] = random_base(F, rng);
    out = A;
    return F.is_unit(sm_det(F, A));
}

SMat random_general_element(const FastRing& F, const GroupSpec& spec, std::mt19937_64& rng) {
    const int d = spec.kind == GroupSpec::Kind::J ? 3 : spec.G.d;
    for (int tries = 0; tries < 100000; ++tries) {
        SMat g;
        if (spec.kind == GroupSpec::Kind::J) {
            if (spec.eps > 0) {
                g = j_shape(F, delta_code(F, spec.delta_pi), random_base_unit(F, rng), random_base(F, rng),
                            random_base(F, rng), random_base_unit(F, rng), random_base(F, rng));
            } else if (!cayley(F, random_j_lie_element(F, -1, spec.delta_pi, rng), g)) {
                continue;
            }
        } else if (spec.eps > 0) {
            if (!gl_element(F, d, rng, g)) continue;
        } else if (spec.special && d == 2) {
            // diag(1, u) is not unitary here; a traceless Cayley transform already has det 1
            if (!cayley(F, random_lie_element(F, spec.G, rng), g) || sm_det(F, g) != 1) continue;
            return g;
        } else {
            if (!cayley(F, random_lie_element(F, spec.G.general(), rng), g)) continue;
        }
        return spec.special ? to_special(F, g) : g;
    }
    throw Error("Internal", "could not sample a group element");
}

// Right-multiplication closure from the identity.
void close_under(GroupTable& T, const std::vector<SMat>& gens, std::uint64_t bound) {
    const FastRing& F = T.ring();
    const int d = gens.empty() ? 3 : gens[0].d;
    T.insert(sm_identity(d));
    for (std::size_t head = 0; head < T.size(); ++head) {
        SMat x = T.elem(static_cast<std::uint32_t>(head));
        for (const SMat& g : gens) {
            T.insert(sm_mul(F, x, g));
            if (T.size() > bound) throw Error("TooLarge", "closure exceeded " + std::to_string(bound) + " elements");
        }
    }
}

Codec codec_for(const FastRing& F, const GroupSpec& spec) {
    if (spec.kind == GroupSpec::Kind::J) return Codec::jshape(F, delta_code(F, spec.delta_pi));
    return Codec::full(F, spec.G.d);
}

}  // namespace

SMat j_center(const FastRing& F, int eps, bool delta_pi) {
    std::uint32_t delta = delta_code(F, delta_pi);
    SMat c = sm_zero(3);
    c.at(0, 2) = 1;
    c.at(1, 1) = delta;
    c.at(2, 0) = F.mul(delta, delta);
    if (eps < 0) c = sm_scale(F, F.rho(), c);
    return c;
}

SMat random_lie_element(const FastRing& F, const GroupId& G, std::mt19937_64& rng) {
    const int d = G.d;
    SMat X = sm_zero(d);
    if (!G.unitary()) {
        for (int i = 0; i < d * d; ++i) X.e[i] = random_base(F, rng);
    } else {
        SMat M = sm_zero(d);
        for (int i = 0; i < d * d; ++i) M.e[i] = random_full(F, rng);
        X = sm_sub(F, M, sm_star(F, M));
    }
    if (G.special()) {
        std::uint32_t t = F.mul(sm_trace(F, X), F.inv(F.from_int(d)));
        for (int i = 0; i < d; ++i) X.at(i, i) = F.sub(X.at(i, i), t);
    }
    return X;
}

SMat random_j_lie_element(const FastRing& F, int eps, bool delta_pi, std::mt19937_64& rng) {
    std::uint32_t delta = delta_code(F, delta_pi);
    if (eps > 0)
        return j_shape(F, delta, random_base(F, rng), random_base(F, rng), random_base(F, rng), random_base(F, rng),
                       random_base(F, rng));
    auto imag = [&] { return F.mul(F.rho(), random_base(F, rng)); };
    std::uint32_t x = random_full(F, rng);
    return j_shape(F, delta, imag(), x, imag(), imag(), F.neg(F.conj(x)));
}

bool cayley(const FastRing& F, const SMat& X, SMat& out) {
    SMat I = sm_identity(X.d);
    SMat inv;
    if (!sm_inverse(F, sm_sub(F, I, X), inv)) return false;
    out = sm_mul(F, sm_add(F, I, X), inv);
    return true;
}

std::vector<SMat> group_generators(const FastRing& F, const GroupSpec& spec, std::mt19937_64& rng) {
    std::vector<SMat> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_general_element(F, spec, rng));
    return gens;
}

bool group_contains(const FastRing& F, const GroupSpec& spec, const SMat& A) {
    const bool unitary = spec.eps < 0;
    if (spec.kind == GroupSpec::Kind::J) {
        if (A.d != 3) return false;
        if (!(j_shape(F, delta_code(F, spec.delta_pi), A.at(0, 0), A.at(0, 1), A.at(0, 2), A.at(1, 1), A.at(1, 2)) == A))
            return false;
        SMat ctr = j_center(F, spec.eps, spec.delta_pi);
        if (!(sm_mul(F, A, ctr) == sm_mul(F, ctr, A))) return false;
    } else if (A.d != spec.G.d) {
        return false;
    }
    if (unitary) {
        if (!(sm_mul(F, sm_star(F, A), A) == sm_identity(A.d))) return false;
    } else {
        if (!entries_in_base(F, A) || !F.is_unit(sm_det(F, A))) return false;
    }
    if (spec.special && sm_det(F, A) != 1) return false;
    return true;
}

std::unique_ptr<GroupTable> build_group(const GroupSpec& spec, const FastRing& F, std::uint64_t bound) {
    const std::int64_t q = F.ring().q();
    const int ell = F.ring().ell();
    BigInt order = spec.order(q, ell);
    if (order > bound)
        throw Error("TooLarge", spec.name() + " has " + order.str() + " elements (bound " + std::to_string(bound) + ")");
    const std::uint64_t n = static_cast<std::uint64_t>(order);
    std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(q) * 131 + ell);
    Codec codec = codec_for(F, spec);

    if (spec.kind == GroupSpec::Kind::J && spec.eps > 0) {
        auto T = std::make_unique<GroupTable>(F, codec, spec.name());
        T->reserve(n);
        std::uint32_t delta = delta_code(F, spec.delta_pi);
        const std::uint32_t B = F.base_size();
        T->insert(sm_identity(3));
        for (std::uint32_t a = 0; a < B; ++a) {
            if (!F.is_unit(a)) continue;
            for (std::uint32_t b = 0; b < B; ++b) {
                if (!F.is_unit(b)) continue;
                for (std::uint32_t x = 0; x < B; ++x)
                    for (std::uint32_t y = 0; y < B; ++y)
                        for (std::uint32_t z = 0; z < B; ++z) {
                            SMat A = j_shape(F, delta, a, x, z, b, y);
                            if (spec.special && sm_det(F, A) != 1) continue;
                            T->insert(A);
                        }
            }
        }
        if (T->size() != n) throw Error("Internal", spec.name() + " scan found " + std::to_string(T->size()));
        T->gens = group_generators(F, spec, rng);
        for (int round = 0; !generates(*T, T->gens); ++round) {
            if (round > 20) throw Error("Internal", "no generating set found for " + spec.name());
            T->gens.push_back(random_general_element(F, spec, rng));
        }
        return T;
    }

    std::vector<SMat> gens = group_generators(F, spec, rng);
    for (int round = 0; round < 12; ++round) {
        auto T = std::make_unique<GroupTable>(F, codec, spec.name());
        T->reserve(n);
        close_under(*T, gens, n);
        if (T->size() == n) {
            for (std::uint32_t i = 0; i < std::min<std::size_t>(T->size(), 64); ++i)
                if (!group_contains(F, spec, T->elem(i))) throw Error("Internal", "closure left " + spec.name());
            T->gens = gens;
            return T;
        }
        gens.push_back(random_general_element(F, spec, rng));
        gens.push_back(random_general_element(F, spec, rng));
    }
    throw Error("Internal", "generator closure never reached the order of " + spec.name());
}

bool generates(const GroupTable& T, const std::vector<SMat>& gens) {
    const FastRing& F = T.ring();
    if (T.size() == 0) return false;
    std::uint32_t id = T.find(sm_identity(T.elem(0).d));
    if (id == kNone) return false;
    std::vector<char> seen(T.size(), 0);
    std::vector<std::uint32_t> queue{id};
    seen[id] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        SMat x = T.elem(queue[head]);
        for (const SMat& g : gens) {
            std::uint32_t j = T.find(sm_mul(F, x, g));
            if (j == kNone) return false;
            if (!seen[j]) {
                seen[j] = 1;
                queue.push_back(j);
            }
        }
    }
    return queue.size() == T.size();
}

Partition conjugacy_classes(const GroupTable& T) {
    const FastRing& F = T.ring();
    std::vector<std::pair<SMat, SMat>> conj;
    for (const SMat& g : T.gens) {
        SMat gi;
        if (!sm_inverse(F, g, gi)) throw Error("Internal", "singular generator");
        conj.emplace_back(g, gi);
    }
    Partition P = bfs_partition(T.size(), [&](std::uint32_t i, std::vector<std::uint32_t>& out) {
        SMat x = T.elem(i);
        for (const auto& [g, gi] : conj) out.push_back(T.find(sm_mul(F, sm_mul(F, g, x), gi)));
    });
    // least canonical encoding as representative
    for (std::uint32_t i = 0; i < T.size(); ++i) {
        std::uint32_t b = P.block[i];
        if (T.code(i) < T.code(P.reps[b])) P.reps[b] = i;
    }
    return P;
}

BigInt class_count_only(const GroupSpec& spec, const FastRing& F, std::uint64_t bound) {
    auto T = build_group(spec, F, bound);
    return BigInt(conjugacy_classes(*T).count());
}

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 r) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % r); }

u64 powmod(u64 a, u64 e, u64 r) {
    u64 res = 1 % r;
    a %= r;
    while (e) {
        if (e & 1) res = mulmod(res, a, r);
        a = mulmod(a, a, r);
        e >>= 1;
    }
    return res;
}

u64 invmod(u64 a, u64 r) {
    if (a % r == 0) throw Error("Internal", "division by zero mod r");
    return powmod(a, r - 2, r);
}

using Poly = std::vector<u64>;  // ascending coefficients

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 r) {
    trim(a);
    u64 lead_inv = invmod(m.back(), r);
    while (a.size() >= m.size()) {
        u64 c = mulmod(a.back(), lead_inv, r);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + r - mulmod(c, m[i], r)) % r;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 r) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], r)) % r;
    return poly_mod(c, m, r);
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 r) {
    Poly res{1};
    res = poly_mod(res, m, r);
    base = poly_mod(base, m, r);
    while (e) {
        if (e & 1) res = poly_mulmod(res, base, m, r);
        base = poly_mulmod(base, base, m, r);
        e >>= 1;
    }
    return res;
}

Poly poly_gcd(Poly a, Poly b, u64 r) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly t = poly_mod(a, b, r);
        a = std::move(b);
        b = std::move(t);
    }
    if (!a.empty()) {
        u64 li = invmod(a.back(), r);
        for (auto& c : a) c = mulmod(c, li, r);
    }
    return a;
}

Poly poly_sub(Poly a, const Poly& b, u64 r) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + r - b[i]) % r;
    trim(a);
    return a;
}

Poly poly_div(Poly a, const Poly& m, u64 r) {
    trim(a);
    Poly qt(a.size() >= m.size() ? a.size() - m.size() + 1 : 0, 0);
    u64 lead_inv = invmod(m.back(), r);
    while (a.size() >= m.size()) {
        u64 c = mulmod(a.back(), lead_inv, r);
        std::size_t shift = a.size() - m.size();
        qt[shift] = c;
        for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + r - mulmod(c, m[i], r)) % r;
        trim(a);
    }
    return qt;
}

// Roots of a squarefree split polynomial by Cantor-Zassenhaus.
void split_roots(const Poly& g, u64 r, std::mt19937_64& rng, std::vector<u64>& roots) {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        roots.push_back(mulmod(r - g[0] % r, invmod(g[1], r), r) % r);
        return;
    }
    for (;;) {
        u64 a = rng() % r;
        Poly h = poly_powmod(Poly{a, 1}, (r - 1) / 2, g, r);
        h = poly_sub(h, Poly{1}, r);
        Poly f = poly_gcd(g, h, r);
        if (f.size() > 1 && f.size() < g.size()) {
            split_roots(f, r, rng, roots);
            split_roots(poly_div(g, f, r), r, rng, roots);
            return;
        }
    }
}

// Characteristic polynomial via Hessenberg reduction.
Poly charpoly_mod(std::vector<std::vector<u64>> H, u64 r) {
    const std::size_t n = H.size();
    for (std::size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
        std::size_t piv = m;
        while (piv < n && H[piv][m - 1] == 0) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            std::swap(H[piv], H[m]);
            for (std::size_t i = 0; i < n; ++i) std::swap(H[i][piv], H[i][m]);
        }
        u64 inv = invmod(H[m][m - 1], r);
        for (std::size_t i = m + 1; i < n; ++i) {
            u64 u = mulmod(H[i][m - 1], inv, r);
            if (u == 0) continue;
            for (std::size_t j = 0; j < n; ++j) H[i][j] = (H[i][j] + r - mulmod(u, H[m][j], r)) % r;
            for (std::size_t j = 0; j < n; ++j) H[j][m] = (H[j][m] + mulmod(u, H[j][i], r)) % r;
        }
    }
    std::vector<Poly> p(n + 1);
    p[0] = Poly{1};
    for (std::size_t m = 1; m <= n; ++m) {
        Poly cur(m + 1, 0);
        // (x - h_mm) p_{m-1}
        for (std::size_t i = 0; i < p[m - 1].size(); ++i) {
            cur[i + 1] = (cur[i + 1] + p[m - 1][i]) % r;
            cur[i] = (cur[i] + r - mulmod(H[m - 1][m - 1], p[m - 1][i], r)) % r;
        }
        u64 prod = 1;
        for (std::size_t i = m - 1; i-- > 0;) {
            prod = mulmod(prod, H[i + 1][i], r);
            if (prod == 0) break;
            u64 c = mulmod(H[i][m - 1], prod, r);
            for (std::size_t t = 0; t < p[i].size(); ++t) cur[t] = (cur[t] + r - mulmod(c, p[i][t], r)) % r;
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

// Null space of an n x n matrix over F_r (columns of the returned list).
std::vector<std::vector<u64>> kernel_mod(std::vector<std::vector<u64>> A, u64 r) {
    const std::size_t n = A.size();
    std::vector<int> pivcol_of_row;
    std::vector<int> where(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t sel = row;
        while (sel < n && A[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(A[sel], A[row]);
        u64 inv = invmod(A[row][col], r);
        for (auto& v : A[row]) v = mulmod(v, inv, r);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0) continue;
            u64 c = A[i][col];
            for (std::size_t j = 0; j < n; ++j) A[i][j] = (A[i][j] + r - mulmod(c, A[row][j], r)) % r;
        }
        where[col] = static_cast<int>(row);
        ++row;
    }
    std::vector<std::vector<u64>> ker;
    for (std::size_t free = 0; free < n; ++free) {
        if (where[free] != -1) continue;
        std::vector<u64> v(n, 0);
        v[free] = 1;
        for (std::size_t col = 0; col < n; ++col)
            if (where[col] != -1) v[col] = (r - A[where[col]][free]) % r;
        ker.push_back(std::move(v));
    }
    return ker;
}

// Subspace of F_r^k in reduced echelon form: basis[t][piv[t]] = 1, basis[u][piv[t]] = 0 for u != t.
struct Subspace {
    std::vector<std::vector<u64>> basis;
    std::vector<std::size_t> piv;
};

Subspace echelon(std::vector<std::vector<u64>> vecs, u64 r) {
    Subspace S;
    for (auto& v : vecs) {
        for (std::size_t t = 0; t < S.basis.size(); ++t) {
            u64 c = v[S.piv[t]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + r - mulmod(c, S.basis[t][j], r)) % r;
        }
        std::size_t p = 0;
        while (p < v.size() && v[p] == 0) ++p;
        if (p == v.size()) continue;
        u64 inv = invmod(v[p], r);
        for (auto& x : v) x = mulmod(x, inv, r);
        for (auto& b : S.basis) {
            u64 c = b[p];
            if (c == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) b[j] = (b[j] + r - mulmod(c, v[j], r)) % r;
        }
        S.basis.push_back(std::move(v));
        S.piv.push_back(p);
    }
    return S;
}

std::uint64_t element_order(const FastRing& F, const SMat& x) {
    SMat I = sm_identity(x.d), y = x;
    std::uint64_t n = 1;
    while (!(y == I)) {
        y = sm_mul(F, y, x);
        if (++n > 10'000'000) throw Error("Internal", "element order too large");
    }
    return n;
}

u64 sqrt_mod(u64 a, u64 r) {
    a %= r;
    if (a == 0) return 0;
    if (powmod(a, (r - 1) / 2, r) != 1) throw Error("Internal", "degree square is not a square mod r");
    u64 Q = r - 1, S = 0;
    while (Q % 2 == 0) {
        Q /= 2;
        ++S;
    }
    u64 z = 2;
    while (powmod(z, (r - 1) / 2, r) != r - 1) ++z;
    u64 M = S, c = powmod(z, Q, r), t = powmod(a, Q, r), R = powmod(a, (Q + 1) / 2, r);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, r);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + 1 < M - i; ++j) b = mulmod(b, b, r);
        M = i;
        c = mulmod(b, b, r);
        t = mulmod(t, c, r);
        R = mulmod(R, b, r);
    }
    return R;
}

}  // namespace

DixonResult dixon_degrees(const GroupTable& T, const Partition& P, const OracleBudget& budget) {
    const FastRing& F = T.ring();
    const std::size_t k = P.count();
    const u64 n = T.size();
    if (k > budget.dixon_classes) throw Error("TooLarge", std::to_string(k) + " classes exceed the Dixon budget");
    if (static_cast<long double>(n) * k > static_cast<long double>(budget.dixon_lookups))
        throw Error("TooLarge", "Dixon lookups |G|*k exceed the budget");

    std::vector<std::vector<std::uint32_t>> members(k);
    for (std::uint32_t i = 0; i < n; ++i) members[P.block[i]].push_back(i);

    DixonResult res;
    res.classes = k;
    u64 e = 1;
    std::vector<std::uint32_t> inv_class(k);
    std::vector<SMat> reps(k);
    for (std::size_t c = 0; c < k; ++c) {
        reps[c] = T.elem(P.reps[c]);
        u64 o = element_order(F, reps[c]);
        e = std::lcm(e, o);
        SMat xi;
        sm_inverse(F, reps[c], xi);
        std::uint32_t idx = T.find(xi);
        if (idx == kNone) throw Error("Internal", "group table not closed under inverse");
        inv_class[c] = P.block[idx];
    }
    res.exponent = e;
    u64 r = e + 1;
    long double lim = 2.0L * std::sqrt(static_cast<long double>(n));
    while (!(static_cast<long double>(r) > lim && is_prime(static_cast<std::int64_t>(r)))) r += e;
    res.prime = r;

    const std::uint32_t id_idx = T.find(sm_identity(reps[0].d));
    const std::size_t id_class = P.block[id_idx];

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return P.sizes[a] < P.sizes[b]; });

    std::vector<std::vector<u64>> all(k, std::vector<u64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) all[i][i] = 1;
    std::vector<Subspace> pending{echelon(all, r)};
    std::vector<Subspace> done;
    std::mt19937_64 rng(12345);

    for (std::size_t ci : order) {
        if (pending.empty()) break;
        if (ci == id_class) continue;
        // class matrix M[j][c] = #{x in C_i : x^{-1} z_c in C_j}, only on the pivot rows the
        // pending subspaces need. Row j comes from |C_c| M[j][c] = |C_j| #{x in C_i : x z_j in C_c}.
        std::vector<char> need(k, 0);
        for (const Subspace& S : pending)
            for (std::size_t j : S.piv) need[j] = 1;
        std::vector<std::vector<u64>> M(k);
        std::vector<SMat> elems;
        elems.reserve(members[ci].size());
        for (std::uint32_t xi : members[ci]) elems.push_back(T.elem(xi));
        for (std::size_t j = 0; j < k; ++j) {
            if (!need[j]) continue;
            std::vector<u64> cnt(k, 0);
            for (const SMat& x : elems) {
                std::uint32_t idx = T.find(sm_mul(F, x, reps[j]));
                if (idx == kNone) throw Error("Internal", "product left the group table");
                ++cnt[P.block[idx]];
            }
            M[j].assign(k, 0);
            for (std::size_t c = 0; c < k; ++c) {
                if (!cnt[c]) continue;
                BigInt num = BigInt(cnt[c]) * P.sizes[j];
                if (num % P.sizes[c] != 0) throw Error("Internal", "class multiplication coefficient not integral");
                M[j][c] = static_cast<u64>(num / P.sizes[c]) % r;
            }
        }
        ++res.class_matrices_used;
        std::vector<Subspace> next;
        for (Subspace& S : pending) {
            const std::size_t s = S.basis.size();
            // C = (M B)[piv, :]
            std::vector<std::vector<u64>> C(s, std::vector<u64>(s, 0));
            for (std::size_t a = 0; a < s; ++a) {
                const auto& row = M[S.piv[a]];
                for (std::size_t t = 0; t < s; ++t) {
                    u64 acc = 0;
                    for (std::size_t c = 0; c < k; ++c)
                        if (row[c] && S.basis[t][c]) acc = (acc + mulmod(row[c], S.basis[t][c], r)) % r;
                    C[a][t] = acc;
                }
            }
            Poly f = charpoly_mod(C, r);
            Poly xr = poly_powmod(Poly{0, 1}, r, f, r);
            Poly g = poly_gcd(f, poly_sub(xr, Poly{0, 1}, r), r);
            std::vector<u64> roots;
            split_roots(g, r, rng, roots);
            std::size_t total = 0;
            for (u64 lam : roots) {
                auto A = C;
                for (std::size_t a = 0; a < s; ++a) A[a][a] = (A[a][a] + r - lam) % r;
                auto ker = kernel_mod(A, r);
                total += ker.size();
                std::vector<std::vector<u64>> vecs;
                for (const auto& u : ker) {
                    std::vector<u64> v(k, 0);
                    for (std::size_t t = 0; t < s; ++t)
                        if (u[t])
                            for (std::size_t j = 0; j < k; ++j) v[j] = (v[j] + mulmod(u[t], S.basis[t][j], r)) % r;
                    vecs.push_back(std::move(v));
                }
                Subspace Sub = echelon(vecs, r);
                (Sub.basis.size() == 1 ? done : next).push_back(std::move(Sub));
            }
            if (total != s) throw Error("Internal", "class matrix not diagonalisable mod r");
        }
        pending = std::move(next);
    }
    if (!pending.empty()) throw Error("Internal", "class matrices did not separate all characters");
    if (done.size() != k) throw Error("Internal", "Dixon found " + std::to_string(done.size()) + " characters");

    BigInt sum_sq = 0;
    for (const Subspace& S : done) {
        const auto& v = S.basis[0];
        if (v[id_class] == 0) throw Error("Internal", "eigenvector vanishes at the identity class");
        u64 norm = invmod(v[id_class], r);
        u64 acc = 0;
        for (std::size_t j = 0; j < k; ++j) {
            u64 wj = mulmod(v[j], norm, r), wji = mulmod(v[inv_class[j]], norm, r);
            acc = (acc + mulmod(mulmod(wj, wji, r), invmod(P.sizes[j] % r, r), r)) % r;
        }
        u64 d2 = mulmod(n % r, invmod(acc, r), r);
        u64 d = sqrt_mod(d2, r);
        if (d > r / 2) d = r - d;
        if (d == 0 || n % d != 0) throw Error("Internal", "degree " + std::to_string(d) + " does not divide |G|");
        res.degrees.add_term(BigInt(d), 1);
        sum_sq += BigInt(d) * d;
    }
    if (sum_sq != n) throw Error("Internal", "sum of squared degrees " + sum_sq.str() + " != |G|");
    return res;
}

std::string oracle_cache_key(const GroupSpec& spec, const LocalRing& R, const std::string& what) {
    std::string n = spec.name();
    std::replace(n.begin(), n.end(), '\'', 'p');
    return n + "_p" + std::to_string(R.p()) + "_f" + std::to_string(R.f()) + "_l" + std::to_string(R.ell()) + "_" +
           kind_name(R.kind()) + "_" + what;
}

bool oracle_cache_get(const std::string& key, nlohmann::json& out) {
    const char* dir = std::getenv("REPZETA_CACHE_DIR");
    if (!dir || !*dir) return false;
    std::ifstream in(std::filesystem::path(dir) / (key + ".json"));
    if (!in) return false;
    try {
        in >> out;
    } catch (const nlohmann::json::exception&) {
        return false;
    }
    return true;
}

void oracle_cache_put(const std::string& key, const nlohmann::json& value) {
    const char* dir = std::getenv("REPZETA_CACHE_DIR");
    if (!dir || !*dir) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(std::filesystem::path(dir) / (key + ".json"));
    if (out) out << value.dump(2) << "\n";
}

DirichletPoly oracle_degrees(const GroupSpec& spec, const LocalRing& R, const OracleBudget& budget) {
    std::string key = oracle_cache_key(spec, R, "degrees");
    nlohmann::json cached;
    if (oracle_cache_get(key, cached) && cached.contains("degrees")) {
        DirichletPoly d = DirichletPoly::from_json(cached["degrees"]);
        if (d.at_neg(2) == spec.order(R.q(), R.ell())) return d;
    }
    FastRing F(R);
    auto T = build_group(spec, F, budget.table_bound);
    Partition P = conjugacy_classes(*T);
    DixonResult res = dixon_degrees(*T, P, budget);
    nlohmann::json sizes = nlohmann::json::array();
    for (auto s : P.sizes) sizes.push_back(s);
    oracle_cache_put(key, {{"key", key},
                           {"group", spec.name()},
                           {"ring", R.to_json()},
                           {"order", std::to_string(T->size())},
                           {"class_sizes", sizes},
                           {"degrees", res.degrees.to_json()}});
    return res.degrees;
}

BigInt oracle_class_count(const GroupSpec& spec, const LocalRing& R, const OracleBudget& budget) {
    const BigInt order = spec.order(R.q(), R.ell());
    nlohmann::json cached;
    if (oracle_cache_get(oracle_cache_key(spec, R, "classes"), cached) && cached.value("order", "") == order.str())
        return BigInt(cached["classes"].get<std::string>());
    if (oracle_cache_get(oracle_cache_key(spec, R, "degrees"), cached) && cached.value("order", "") == order.str() &&
        cached.contains("class_sizes"))
        return BigInt(cached["class_sizes"].size());
    FastRing F(R);
    BigInt k = class_count_only(spec, F, budget.count_bound);
    std::string key = oracle_cache_key(spec, R, "classes");
    oracle_cache_put(key, {{"key", key}, {"group", spec.name()}, {"ring", R.to_json()}, {"order", order.str()}, {"classes", k.str()}});
    return k;
}

}  // namespace repzeta
