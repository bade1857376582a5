#pragma once

#include "repzeta/localring.hpp"
#include "repzeta/matalg.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace repzeta {

constexpr std::uint32_t kNone = 0xffffffffu;

// Table-driven arithmetic on integer codes of O_l = o_l[rho].
// A code u encodes a + b*rho as code(a) + B*code(b) with B = |o_l|.
class FastRing {
public:
    explicit FastRing(const LocalRing& R);

    const LocalRing& ring() const { return R_; }
    std::uint32_t base_size() const { return B_; }
    std::uint32_t size() const { return N_; }

    std::uint32_t add(std::uint32_t u, std::uint32_t v) const {
        return badd_[lo(u) * B_ + lo(v)] + B_ * badd_[hi(u) * B_ + hi(v)];
    }
    std::uint32_t neg(std::uint32_t u) const { return bneg_[lo(u)] + B_ * bneg_[hi(u)]; }
    std::uint32_t sub(std::uint32_t u, std::uint32_t v) const { return add(u, neg(v)); }
    std::uint32_t mul(std::uint32_t u, std::uint32_t v) const {
        if (!full_.empty()) return full_[static_cast<std::size_t>(u) * N_ + v];
        return mul_slow(u, v);
    }
    std::uint32_t conj(std::uint32_t u) const { return lo(u) + B_ * bneg_[hi(u)]; }
    std::uint32_t inv(std::uint32_t u) const { return inv_[u]; }
    bool is_unit(std::uint32_t u) const { return inv_[u] != kNone; }
    int val(std::uint32_t u) const { return val_[u]; }
    std::uint32_t norm(std::uint32_t u) const { return mul(u, conj(u)); }

    std::uint32_t bmul(std::uint32_t a, std::uint32_t b) const { return bmul_[a * B_ + b]; }
    std::uint32_t badd(std::uint32_t a, std::uint32_t b) const { return badd_[a * B_ + b]; }

    std::uint32_t from_quad(const QuadElem& x) const;
    QuadElem to_quad(std::uint32_t u) const;
    std::uint32_t from_int(std::int64_t n) const;
    std::uint32_t rho() const { return B_; }
    std::uint32_t pi_pow(int k) const { return pi_pow_[std::min(k, R_.ell())]; }

    std::uint32_t lo(std::uint32_t u) const { return u % B_; }
    std::uint32_t hi(std::uint32_t u) const { return u / B_; }

private:
    LocalRing R_;
    std::uint32_t B_, N_;
    std::vector<std::uint32_t> badd_, bmul_, bneg_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::uint8_t> val_;
    std::vector<std::uint32_t> full_;
    std::vector<std::uint32_t> pi_pow_;
    std::uint32_t nu_;

    std::uint32_t mul_slow(std::uint32_t u, std::uint32_t v) const;
};

// Small square matrix of ring codes, d <= 3.
struct SMat {
    int d = 0;
    std::array<std::uint32_t, 9> e{};
    std::uint32_t& at(int i, int j) { return e[i * d + j]; }
    std::uint32_t at(int i, int j) const { return e[i * d + j]; }
    bool operator==(const SMat& o) const {
        if (d != o.d) return false;
        for (int i = 0; i < d * d; ++i)
            if (e[i] != o.e[i]) return false;
        return true;
    }
};

SMat sm_identity(int d);
SMat sm_zero(int d);
SMat sm_mul(const FastRing& F, const SMat& A, const SMat& B);
SMat sm_add(const FastRing& F, const SMat& A, const SMat& B);
SMat sm_sub(const FastRing& F, const SMat& A, const SMat& B);
SMat sm_scale(const FastRing& F, std::uint32_t s, const SMat& A);
std::uint32_t sm_det(const FastRing& F, const SMat& A);
std::uint32_t sm_trace(const FastRing& F, const SMat& A);
// Returns false when A is not invertible.
bool sm_inverse(const FastRing& F, const SMat& A, SMat& out);
SMat sm_star(const FastRing& F, const SMat& A);
SMat sm_from_mat(const FastRing& F, const Mat& A);
Mat sm_to_mat(const FastRing& F, const SMat& A);
int sm_valuation(const FastRing& F, const SMat& A);

// Packs a fixed set of matrix positions into one 64-bit key (base |O_l|).
// For J-type groups only the five free entries are stored and the rest are
// rebuilt from delta: [[a,x,z],[delta*y,b,y],[delta^2*z,delta*x,a]].
struct Codec {
    enum class Kind { Full, JShape };
    Kind kind = Kind::Full;
    int d = 3;
    std::uint32_t delta = 0;
    std::uint64_t base = 0;

    std::uint64_t encode(const SMat& A) const;
    SMat decode(const FastRing& F, std::uint64_t code) const;
    static Codec full(const FastRing& F, int d);
    static Codec jshape(const FastRing& F, std::uint32_t delta);
};

// Open-addressing index from 64-bit keys to dense positions.
class CodeIndex {
public:
    void reserve(std::size_t n);
    // Returns the position of key, inserting it at position keys.size() if absent.
    std::uint32_t insert(std::uint64_t key, std::vector<std::uint64_t>& keys);
    std::uint32_t find(std::uint64_t key, const std::vector<std::uint64_t>& keys) const;

private:
    std::vector<std::uint32_t> slots_;
    std::uint64_t mask_ = 0;
    void rehash(const std::vector<std::uint64_t>& keys, std::size_t capacity);
    static std::uint64_t mix(std::uint64_t k) {
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        k *= 0xc4ceb9fe1a85ec53ULL;
        k ^= k >> 33;
        return k;
    }
};

// Partition of {0..n-1} into connected components of a graph given by a
// neighbour callback. Blocks are numbered in order of their least element.
struct Partition {
    std::vector<std::uint32_t> block;
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint32_t> reps;
    std::size_t count() const { return sizes.size(); }
};

template <class Neighbours>
Partition bfs_partition(std::size_t n, Neighbours&& neighbours) {
    Partition P;
    P.block.assign(n, kNone);
    std::vector<std::uint32_t> queue;
    std::vector<std::uint32_t> out;
    for (std::size_t start = 0; start < n; ++start) {
        if (P.block[start] != kNone) continue;
        std::uint32_t id = static_cast<std::uint32_t>(P.sizes.size());
        P.block[start] = id;
        P.reps.push_back(static_cast<std::uint32_t>(start));
        queue.clear();
        queue.push_back(static_cast<std::uint32_t>(start));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            out.clear();
            neighbours(queue[head], out);
            for (std::uint32_t v : out) {
                if (v == kNone) throw Error("Internal", "neighbour outside the enumerated set");
                if (P.block[v] == kNone) {
                    P.block[v] = id;
                    queue.push_back(v);
                }
            }
        }
        P.sizes.push_back(queue.size());
    }
    return P;
}

}  // namespace repzeta
