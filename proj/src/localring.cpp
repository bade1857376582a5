#include "repzeta/localring.hpp"

#include <algorithm>

namespace repzeta {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t pmod(std::int64_t a, std::int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

// Trial division over F_p; only used for tiny degrees.
bool poly_divides(const std::vector<std::int64_t>& d, std::vector<std::int64_t> n, int p) {
    while (n.size() >= d.size()) {
        std::int64_t lead = n.back();
        std::size_t shift = n.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i)
            n[shift + i] = pmod(n[shift + i] - lead * d[i], p);
        n.pop_back();
    }
    return std::all_of(n.begin(), n.end(), [](std::int64_t c) { return c == 0; });
}

}  // namespace

const char* kind_name(CharKind k) { return k == CharKind::Mixed ? "mixed" : "equal"; }

CharKind parse_kind(const std::string& s) {
    if (s == "mixed") return CharKind::Mixed;
    if (s == "equal") return CharKind::Equal;
    throw Error("BadArgument", "ring kind must be mixed or equal, got " + s);
}

std::vector<std::int64_t> least_irreducible(int p, int f) {
    if (f == 1) return {0, 1};
    std::int64_t count = ipow(p, f);
    for (std::int64_t n = 0; n < count; ++n) {
        std::vector<std::int64_t> h(f + 1);
        std::int64_t t = n;
        for (int i = 0; i < f; ++i) {
            h[i] = t % p;
            t /= p;
        }
        h[f] = 1;
        bool irreducible = h[0] != 0;
        for (int deg = 1; irreducible && deg <= f / 2; ++deg) {
            std::int64_t cnt = ipow(p, deg);
            for (std::int64_t m = 0; m < cnt && irreducible; ++m) {
                std::vector<std::int64_t> d(deg + 1);
                std::int64_t u = m;
                for (int i = 0; i < deg; ++i) {
                    d[i] = u % p;
                    u /= p;
                }
                d[deg] = 1;
                if (poly_divides(d, h, p)) irreducible = false;
            }
        }
        if (irreducible) return h;
    }
    throw Error("Internal", "no irreducible polynomial found");
}

LocalRing::LocalRing(int p, int f, int ell, CharKind kind) : p_(p), f_(f), ell_(ell), kind_(kind) {
    if (!is_prime(p)) throw Error("BadRing", "p must be prime, got " + std::to_string(p));
    if (p <= 3) throw Error("BadRing", "residue characteristic must exceed 3, got " + std::to_string(p));
    if (f < 1 || ell < 1) throw Error("BadRing", "f and ell must be at least 1");
    q_ = ipow(p, f);
    pl_ = ipow(p, ell);
    long double approx = 1;
    for (int i = 0; i < f * ell; ++i) approx *= p;
    if (approx > 1.8e19L) throw Error("TooLarge", "ring cardinality exceeds 64 bits");
    size_ = 1;
    for (int i = 0; i < f * ell; ++i) size_ *= static_cast<std::uint64_t>(p);
    h_ = least_irreducible(p, f);
    // nu: first unit in code order whose residue is a non-square.
    for (std::uint64_t c = 1; c < size_; ++c) {
        RingElem x = decode(c);
        if (is_unit(x) && !residue_is_square(x)) {
            nu_ = x;
            break;
        }
    }
}

RingElem LocalRing::zero() const { return RingElem{std::vector<std::int64_t>(width(), 0)}; }

RingElem LocalRing::one() const {
    RingElem r = zero();
    r.c[0] = 1;
    return r;
}

RingElem LocalRing::from_int(std::int64_t n) const {
    RingElem r = zero();
    if (kind_ == CharKind::Mixed) {
        r.c[0] = pmod(n, pl_);
    } else {
        r.c[0] = pmod(n, p_);
    }
    return r;
}

RingElem LocalRing::pi_pow(int k) const { return mul_pi(one(), k); }

RingElem LocalRing::add(const RingElem& x, const RingElem& y) const {
    RingElem r = zero();
    std::int64_t b = digit_base();
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (x.c[i] + y.c[i]) % b;
    return r;
}

RingElem LocalRing::sub(const RingElem& x, const RingElem& y) const {
    RingElem r = zero();
    std::int64_t b = digit_base();
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = pmod(x.c[i] - y.c[i], b);
    return r;
}

RingElem LocalRing::neg(const RingElem& x) const { return sub(zero(), x); }

std::vector<std::int64_t> LocalRing::poly_mulmod(const std::vector<std::int64_t>& x,
                                                 const std::vector<std::int64_t>& y,
                                                 std::int64_t mod) const {
    std::vector<std::int64_t> prod(2 * f_ - 1, 0);
    for (int i = 0; i < f_; ++i)
        for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + mulmod(x[i], y[j], mod)) % mod;
    for (int k = 2 * f_ - 2; k >= f_; --k) {
        std::int64_t lead = prod[k];
        if (lead == 0) continue;
        for (int i = 0; i < f_; ++i)
            prod[k - f_ + i] = pmod(prod[k - f_ + i] - mulmod(lead, h_[i], mod), mod);
        prod[k] = 0;
    }
    prod.resize(f_);
    return prod;
}

std::vector<std::int64_t> LocalRing::fq_mul(const std::int64_t* x, const std::int64_t* y) const {
    return poly_mulmod(std::vector<std::int64_t>(x, x + f_), std::vector<std::int64_t>(y, y + f_), p_);
}

std::vector<std::int64_t> LocalRing::fq_pow(std::vector<std::int64_t> x, std::uint64_t e) const {
    std::vector<std::int64_t> r(f_, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = fq_mul(r.data(), x.data());
        x = fq_mul(x.data(), x.data());
        e >>= 1;
    }
    return r;
}

RingElem LocalRing::mul(const RingElem& x, const RingElem& y) const {
    if (kind_ == CharKind::Mixed) {
        if (f_ == 1) {
            RingElem r = zero();
            r.c[0] = mulmod(x.c[0], y.c[0], pl_);
            return r;
        }
        return RingElem{poly_mulmod(x.c, y.c, pl_)};
    }
    RingElem r = zero();
    for (int i = 0; i < ell_; ++i)
        for (int j = 0; i + j < ell_; ++j) {
            auto prod = fq_mul(&x.c[i * f_], &y.c[j * f_]);
            for (int k = 0; k < f_; ++k)
                r.c[(i + j) * f_ + k] = (r.c[(i + j) * f_ + k] + prod[k]) % p_;
        }
    return r;
}

std::vector<std::int64_t> LocalRing::residue(const RingElem& x) const {
    std::vector<std::int64_t> r(f_);
    for (int k = 0; k < f_; ++k) r[k] = kind_ == CharKind::Mixed ? x.c[k] % p_ : x.c[k];
    return r;
}

bool LocalRing::is_unit(const RingElem& x) const {
    auto r = residue(x);
    return std::any_of(r.begin(), r.end(), [](std::int64_t c) { return c != 0; });
}

bool LocalRing::is_zero(const RingElem& x) const {
    return std::all_of(x.c.begin(), x.c.end(), [](std::int64_t c) { return c == 0; });
}

bool LocalRing::residue_is_square(const RingElem& x) const {
    auto r = residue(x);
    if (std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c == 0; })) return true;
    auto e = fq_pow(r, static_cast<std::uint64_t>((q_ - 1) / 2));
    return e[0] == 1 && std::all_of(e.begin() + 1, e.end(), [](std::int64_t c) { return c == 0; });
}

RingElem LocalRing::inv(const RingElem& x) const {
    if (!is_unit(x)) throw Error("NonUnit", "inverse of a non-unit");
    auto r0 = fq_pow(residue(x), static_cast<std::uint64_t>(q_ - 2));
    RingElem y = zero();
    for (int k = 0; k < f_; ++k) y.c[k] = r0[k];
    // Newton iteration doubles the precision each step.
    RingElem two = from_int(2);
    for (int prec = 1; prec < ell_; prec *= 2) y = mul(y, sub(two, mul(x, y)));
    return y;
}

int LocalRing::valuation(const RingElem& x) const {
    if (kind_ == CharKind::Mixed) {
        int v = ell_;
        for (auto c : x.c) {
            if (c == 0) continue;
            int w = 0;
            while (c % p_ == 0) {
                c /= p_;
                ++w;
            }
            v = std::min(v, w);
        }
        return v;
    }
    for (int j = 0; j < ell_; ++j)
        for (int k = 0; k < f_; ++k)
            if (x.c[j * f_ + k] != 0) return j;
    return ell_;
}

RingElem LocalRing::mul_pi(const RingElem& x, int k) const {
    if (k <= 0) return x;
    if (k >= ell_) return zero();
    RingElem r = zero();
    if (kind_ == CharKind::Mixed) {
        std::int64_t pk = ipow(p_, k);
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = mulmod(x.c[i], pk, pl_);
    } else {
        for (int j = ell_ - 1; j >= k; --j)
            for (int t = 0; t < f_; ++t) r.c[j * f_ + t] = x.c[(j - k) * f_ + t];
    }
    return r;
}

RingElem LocalRing::div_pi(const RingElem& x, int k) const {
    if (k <= 0) return x;
    if (valuation(x) < k) throw Error("Domain", "division by pi^k of an element of smaller valuation");
    RingElem r = zero();
    if (kind_ == CharKind::Mixed) {
        std::int64_t pk = ipow(p_, k);
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = x.c[i] / pk;
    } else {
        for (int j = 0; j + k < ell_; ++j)
            for (int t = 0; t < f_; ++t) r.c[j * f_ + t] = x.c[(j + k) * f_ + t];
    }
    return r;
}

RingElem LocalRing::reduce(const RingElem& x, const LocalRing& target) const {
    if (target.ell_ > ell_ || target.p_ != p_ || target.f_ != f_ || target.kind_ != kind_)
        throw Error("Domain", "reduce needs a lower level of the same ring");
    RingElem r = target.zero();
    if (kind_ == CharKind::Mixed) {
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = x.c[i] % target.pl_;
    } else {
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = x.c[i];
    }
    return r;
}

RingElem LocalRing::lift(const RingElem& x, const LocalRing& source) const {
    if (source.ell_ > ell_ || source.p_ != p_ || source.f_ != f_ || source.kind_ != kind_)
        throw Error("Domain", "lift needs a lower level of the same ring");
    RingElem r = zero();
    for (std::size_t i = 0; i < x.c.size(); ++i) r.c[i] = x.c[i];
    return r;
}

std::uint64_t LocalRing::encode(const RingElem& x) const {
    std::uint64_t code = 0;
    std::uint64_t b = static_cast<std::uint64_t>(digit_base());
    for (std::size_t i = x.c.size(); i-- > 0;) code = code * b + static_cast<std::uint64_t>(x.c[i]);
    return code;
}

RingElem LocalRing::decode(std::uint64_t code) const {
    RingElem r = zero();
    std::uint64_t b = static_cast<std::uint64_t>(digit_base());
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] = static_cast<std::int64_t>(code % b);
        code /= b;
    }
    return r;
}

std::vector<RingElem> LocalRing::enumerate(std::uint64_t bound) const {
    if (size_ > bound)
        throw Error("TooLarge", "ring has " + std::to_string(size_) + " elements, bound " + std::to_string(bound));
    std::vector<RingElem> out;
    out.reserve(size_);
    for (std::uint64_t c = 0; c < size_; ++c) out.push_back(decode(c));
    return out;
}

QuadElem LocalRing::qadd(const QuadElem& x, const QuadElem& y) const { return {add(x.a, y.a), add(x.b, y.b)}; }
QuadElem LocalRing::qsub(const QuadElem& x, const QuadElem& y) const { return {sub(x.a, y.a), sub(x.b, y.b)}; }
QuadElem LocalRing::qneg(const QuadElem& x) const { return {neg(x.a), neg(x.b)}; }

QuadElem LocalRing::qmul(const QuadElem& x, const QuadElem& y) const {
    return {add(mul(x.a, y.a), mul(nu_, mul(x.b, y.b))), add(mul(x.a, y.b), mul(x.b, y.a))};
}

QuadElem LocalRing::conj(const QuadElem& x) const { return {x.a, neg(x.b)}; }

RingElem LocalRing::norm(const QuadElem& x) const { return sub(mul(x.a, x.a), mul(nu_, mul(x.b, x.b))); }

bool LocalRing::qis_unit(const QuadElem& x) const { return is_unit(norm(x)); }

bool LocalRing::qis_zero(const QuadElem& x) const { return is_zero(x.a) && is_zero(x.b); }

QuadElem LocalRing::qinv(const QuadElem& x) const {
    if (!qis_unit(x)) throw Error("NonUnit", "inverse of a non-unit");
    RingElem n = inv(norm(x));
    return {mul(x.a, n), neg(mul(x.b, n))};
}

int LocalRing::qvaluation(const QuadElem& x) const { return std::min(valuation(x.a), valuation(x.b)); }

QuadElem LocalRing::qmul_pi(const QuadElem& x, int k) const { return {mul_pi(x.a, k), mul_pi(x.b, k)}; }
QuadElem LocalRing::qdiv_pi(const QuadElem& x, int k) const { return {div_pi(x.a, k), div_pi(x.b, k)}; }

QuadElem LocalRing::qreduce(const QuadElem& x, const LocalRing& target) const {
    return {reduce(x.a, target), reduce(x.b, target)};
}

QuadElem LocalRing::qlift(const QuadElem& x, const LocalRing& source) const {
    return {lift(x.a, source), lift(x.b, source)};
}

std::int64_t LocalRing::psi_exponent(const RingElem& x) const {
    if (kind_ == CharKind::Mixed) return x.c[0];
    return mulmod(x.c[static_cast<std::size_t>(ell_ - 1) * f_], pl_ / p_, pl_);
}

nlohmann::json LocalRing::to_json() const {
    return {{"p", p_}, {"f", f_}, {"ell", ell_}, {"kind", kind_name(kind_)}, {"nu", elem_json(nu_)}};
}

nlohmann::json LocalRing::elem_json(const RingElem& x) const {
    nlohmann::json arr = nlohmann::json::array();
    for (auto c : x.c) arr.push_back(std::to_string(c));
    return arr;
}

}  // namespace repzeta
