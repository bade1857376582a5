#include "repzeta/fastring.hpp"

namespace repzeta {

FastRing::FastRing(const LocalRing& R) : R_(R) {
    if (R.size() > 4096) throw Error("TooLarge", "fast tables need |o_l| <= 4096");
    B_ = static_cast<std::uint32_t>(R.size());
    N_ = B_ * B_;
    std::vector<RingElem> elems = R.enumerate();
    badd_.resize(static_cast<std::size_t>(B_) * B_);
    bmul_.resize(static_cast<std::size_t>(B_) * B_);
    bneg_.resize(B_);
    for (std::uint32_t a = 0; a < B_; ++a) {
        bneg_[a] = static_cast<std::uint32_t>(R.encode(R.neg(elems[a])));
        for (std::uint32_t b = 0; b < B_; ++b) {
            badd_[a * B_ + b] = static_cast<std::uint32_t>(R.encode(R.add(elems[a], elems[b])));
            bmul_[a * B_ + b] = static_cast<std::uint32_t>(R.encode(R.mul(elems[a], elems[b])));
        }
    }
    nu_ = static_cast<std::uint32_t>(R.encode(R.nu()));
    std::vector<std::uint8_t> bval(B_);
    for (std::uint32_t a = 0; a < B_; ++a) bval[a] = static_cast<std::uint8_t>(R.valuation(elems[a]));
    // Inverses of base units by search in the multiplication table.
    std::vector<std::uint32_t> binv(B_, kNone);
    for (std::uint32_t a = 0; a < B_; ++a) {
        if (bval[a] != 0 || binv[a] != kNone) continue;
        for (std::uint32_t b = 0; b < B_; ++b)
            if (bmul_[a * B_ + b] == 1) {
                binv[a] = b;
                binv[b] = a;
                break;
            }
    }
    inv_.assign(N_, kNone);
    val_.resize(N_);
    for (std::uint32_t u = 0; u < N_; ++u) {
        std::uint32_t a = lo(u), b = hi(u);
        val_[u] = std::min(bval[a], bval[b]);
        // (a + b rho)^{-1} = (a - b rho) / (a^2 - nu b^2)
        std::uint32_t n = badd_[bmul_[a * B_ + a] * B_ + bneg_[bmul_[nu_ * B_ + bmul_[b * B_ + b]]]];
        if (bval[n] == 0) {
            std::uint32_t ni = binv[n];
            inv_[u] = bmul_[a * B_ + ni] + B_ * bneg_[bmul_[b * B_ + ni]];
        }
    }
    if (static_cast<std::uint64_t>(N_) * N_ <= 6'250'000ULL) {
        full_.resize(static_cast<std::size_t>(N_) * N_);
        for (std::uint32_t u = 0; u < N_; ++u)
            for (std::uint32_t v = 0; v < N_; ++v) full_[static_cast<std::size_t>(u) * N_ + v] = mul_slow(u, v);
    }
    pi_pow_.resize(R.ell() + 1);
    for (int k = 0; k <= R.ell(); ++k) pi_pow_[k] = static_cast<std::uint32_t>(R.encode(R.pi_pow(k)));
}

std::uint32_t FastRing::mul_slow(std::uint32_t u, std::uint32_t v) const {
    std::uint32_t a = lo(u), b = hi(u), c = lo(v), d = hi(v);
    std::uint32_t re = badd_[bmul_[a * B_ + c] * B_ + bmul_[nu_ * B_ + bmul_[b * B_ + d]]];
    std::uint32_t im = badd_[bmul_[a * B_ + d] * B_ + bmul_[b * B_ + c]];
    return re + B_ * im;
}

std::uint32_t FastRing::from_quad(const QuadElem& x) const {
    return static_cast<std::uint32_t>(R_.encode(x.a) + B_ * R_.encode(x.b));
}

QuadElem FastRing::to_quad(std::uint32_t u) const { return {R_.decode(lo(u)), R_.decode(hi(u))}; }

std::uint32_t FastRing::from_int(std::int64_t n) const { return static_cast<std::uint32_t>(R_.encode(R_.from_int(n))); }

SMat sm_identity(int d) {
    SMat m = sm_zero(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
}

SMat sm_zero(int d) {
    SMat m;
    m.d = d;
    m.e.fill(0);
    return m;
}

SMat sm_mul(const FastRing& F, const SMat& A, const SMat& B) {
    SMat C;
    C.d = A.d;
    int d = A.d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::uint32_t s = 0;
            for (int k = 0; k < d; ++k) {
                std::uint32_t a = A.e[i * d + k];
                if (a == 0) continue;
                std::uint32_t b = B.e[k * d + j];
                if (b == 0) continue;
                s = F.add(s, F.mul(a, b));
            }
            C.e[i * d + j] = s;
        }
    return C;
}

SMat sm_add(const FastRing& F, const SMat& A, const SMat& B) {
    SMat C = A;
    for (int i = 0; i < A.d * A.d; ++i) C.e[i] = F.add(A.e[i], B.e[i]);
    return C;
}

SMat sm_sub(const FastRing& F, const SMat& A, const SMat& B) {
    SMat C = A;
    for (int i = 0; i < A.d * A.d; ++i) C.e[i] = F.sub(A.e[i], B.e[i]);
    return C;
}

SMat sm_scale(const FastRing& F, std::uint32_t s, const SMat& A) {
    SMat C = A;
    for (int i = 0; i < A.d * A.d; ++i) C.e[i] = F.mul(s, A.e[i]);
    return C;
}

std::uint32_t sm_det(const FastRing& F, const SMat& A) {
    if (A.d == 1) return A.e[0];
    if (A.d == 2) return F.sub(F.mul(A.e[0], A.e[3]), F.mul(A.e[1], A.e[2]));
    auto m = [&](int i, int j) { return A.e[i * 3 + j]; };
    std::uint32_t t0 = F.mul(m(0, 0), F.sub(F.mul(m(1, 1), m(2, 2)), F.mul(m(1, 2), m(2, 1))));
    std::uint32_t t1 = F.mul(m(0, 1), F.sub(F.mul(m(1, 0), m(2, 2)), F.mul(m(1, 2), m(2, 0))));
    std::uint32_t t2 = F.mul(m(0, 2), F.sub(F.mul(m(1, 0), m(2, 1)), F.mul(m(1, 1), m(2, 0))));
    return F.add(F.sub(t0, t1), t2);
}

std::uint32_t sm_trace(const FastRing& F, const SMat& A) {
    std::uint32_t t = 0;
    for (int i = 0; i < A.d; ++i) t = F.add(t, A.at(i, i));
    return t;
}

bool sm_inverse(const FastRing& F, const SMat& A, SMat& out) {
    std::uint32_t det = sm_det(F, A);
    std::uint32_t di = F.inv(det);
    if (di == kNone) return false;
    out.d = A.d;
    if (A.d == 1) {
        out.e[0] = di;
        return true;
    }
    if (A.d == 2) {
        out.e[0] = F.mul(A.e[3], di);
        out.e[1] = F.mul(F.neg(A.e[1]), di);
        out.e[2] = F.mul(F.neg(A.e[2]), di);
        out.e[3] = F.mul(A.e[0], di);
        return true;
    }
    auto m = [&](int i, int j) { return A.e[i * 3 + j]; };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // cofactor of (j, i)
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            std::uint32_t cof = F.sub(F.mul(m(r0, c0), m(r1, c1)), F.mul(m(r0, c1), m(r1, c0)));
            out.e[i * 3 + j] = F.mul(cof, di);
        }
    return true;
}

SMat sm_star(const FastRing& F, const SMat& A) {
    SMat C;
    C.d = A.d;
    int d = A.d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) C.e[i * d + j] = F.conj(A.e[(d - 1 - j) * d + (d - 1 - i)]);
    return C;
}

SMat sm_from_mat(const FastRing& F, const Mat& A) {
    SMat C;
    C.d = A.d;
    for (int i = 0; i < A.d * A.d; ++i) C.e[i] = F.from_quad(A.e[i]);
    return C;
}

Mat sm_to_mat(const FastRing& F, const SMat& A) {
    Mat C;
    C.d = A.d;
    for (int i = 0; i < A.d * A.d; ++i) C.e.push_back(F.to_quad(A.e[i]));
    return C;
}

int sm_valuation(const FastRing& F, const SMat& A) {
    int v = F.ring().ell();
    for (int i = 0; i < A.d * A.d; ++i) v = std::min(v, F.val(A.e[i]));
    return v;
}

std::uint64_t Codec::encode(const SMat& A) const {
    std::uint64_t code = 0;
    if (kind == Kind::Full) {
        for (int i = d * d; i-- > 0;) code = code * base + A.e[i];
    } else {
        // a, x, z, b, y
        const int pos[5] = {0, 1, 2, 4, 5};
        for (int i = 5; i-- > 0;) code = code * base + A.e[pos[i]];
    }
    return code;
}

SMat Codec::decode(const FastRing& F, std::uint64_t code) const {
    SMat A = sm_zero(d);
    if (kind == Kind::Full) {
        for (int i = 0; i < d * d; ++i) {
            A.e[i] = static_cast<std::uint32_t>(code % base);
            code /= base;
        }
        return A;
    }
    std::uint32_t v[5];
    for (auto& x : v) {
        x = static_cast<std::uint32_t>(code % base);
        code /= base;
    }
    std::uint32_t a = v[0], x = v[1], z = v[2], b = v[3], y = v[4];
    A.at(0, 0) = a;
    A.at(0, 1) = x;
    A.at(0, 2) = z;
    A.at(1, 1) = b;
    A.at(1, 2) = y;
    A.at(2, 2) = a;
    if (delta != 0) {
        A.at(1, 0) = F.mul(delta, y);
        A.at(2, 0) = F.mul(F.mul(delta, delta), z);
        A.at(2, 1) = F.mul(delta, x);
    }
    return A;
}

Codec Codec::full(const FastRing& F, int d) {
    Codec c;
    c.kind = Kind::Full;
    c.d = d;
    c.base = F.size();
    long double cap = 1;
    for (int i = 0; i < d * d; ++i) cap *= F.size();
    if (cap > 1.8e19L) throw Error("TooLarge", "matrix encoding exceeds 64 bits");
    return c;
}

Codec Codec::jshape(const FastRing& F, std::uint32_t delta) {
    Codec c;
    c.kind = Kind::JShape;
    c.d = 3;
    c.delta = delta;
    c.base = F.size();
    long double cap = 1;
    for (int i = 0; i < 5; ++i) cap *= F.size();
    if (cap > 1.8e19L) throw Error("TooLarge", "J-shape encoding exceeds 64 bits");
    return c;
}

void CodeIndex::reserve(std::size_t n) {
    std::size_t cap = 16;
    while (cap < 2 * n) cap <<= 1;
    if (cap > slots_.size()) {
        slots_.assign(cap, kNone);
        mask_ = cap - 1;
    }
}

void CodeIndex::rehash(const std::vector<std::uint64_t>& keys, std::size_t capacity) {
    slots_.assign(capacity, kNone);
    mask_ = capacity - 1;
    for (std::uint32_t i = 0; i < keys.size(); ++i) {
        std::uint64_t h = mix(keys[i]) & mask_;
        while (slots_[h] != kNone) h = (h + 1) & mask_;
        slots_[h] = i;
    }
}

std::uint32_t CodeIndex::insert(std::uint64_t key, std::vector<std::uint64_t>& keys) {
    if (slots_.empty() || 2 * (keys.size() + 1) > slots_.size()) rehash(keys, std::max<std::size_t>(16, slots_.size() * 2));
    std::uint64_t h = mix(key) & mask_;
    while (slots_[h] != kNone) {
        if (keys[slots_[h]] == key) return slots_[h];
        h = (h + 1) & mask_;
    }
    std::uint32_t pos = static_cast<std::uint32_t>(keys.size());
    slots_[h] = pos;
    keys.push_back(key);
    return pos;
}

std::uint32_t CodeIndex::find(std::uint64_t key, const std::vector<std::uint64_t>& keys) const {
    if (slots_.empty()) return kNone;
    std::uint64_t h = mix(key) & mask_;
    while (slots_[h] != kNone) {
        if (keys[slots_[h]] == key) return slots_[h];
        h = (h + 1) & mask_;
    }
    return kNone;
}

}  // namespace repzeta
