#pragma once

#include "repzeta/common.hpp"

#include "json.hpp"

#include <cstdint>
#include <vector>

namespace repzeta {

enum class CharKind { Mixed, Equal };

const char* kind_name(CharKind k);
CharKind parse_kind(const std::string& s);

// Coefficient vector of an element of o_l.
//   mixed: f residues mod p^l (coefficients of 1, x, ..., x^{f-1} modulo h)
//   equal: l blocks of f residues mod p (t-adic digits, each an element of F_q)
struct RingElem {
    std::vector<std::int64_t> c;
    bool operator==(const RingElem&) const = default;
};

// a + b*rho in O_l = o_l[rho], rho^2 = nu.
struct QuadElem {
    RingElem a, b;
    bool operator==(const QuadElem&) const = default;
};

class LocalRing {
public:
    LocalRing(int p, int f, int ell, CharKind kind);

    int p() const { return p_; }
    int f() const { return f_; }
    int ell() const { return ell_; }
    CharKind kind() const { return kind_; }
    std::int64_t q() const { return q_; }
    // |o_l| = q^l
    std::uint64_t size() const { return size_; }
    const RingElem& nu() const { return nu_; }
    const std::vector<std::int64_t>& modulus() const { return h_; }

    LocalRing at_level(int m) const { return LocalRing(p_, f_, m, kind_); }

    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(std::int64_t n) const;
    RingElem pi_pow(int k) const;

    RingElem add(const RingElem& x, const RingElem& y) const;
    RingElem sub(const RingElem& x, const RingElem& y) const;
    RingElem neg(const RingElem& x) const;
    RingElem mul(const RingElem& x, const RingElem& y) const;
    RingElem inv(const RingElem& x) const;
    bool is_unit(const RingElem& x) const;
    bool is_zero(const RingElem& x) const;
    int valuation(const RingElem& x) const;

    // x * pi^k, and x / pi^k for val(x) >= k (result has zero top digits).
    RingElem mul_pi(const RingElem& x, int k) const;
    RingElem div_pi(const RingElem& x, int k) const;

    // Residue in F_q as f coefficients mod p.
    std::vector<std::int64_t> residue(const RingElem& x) const;
    bool residue_is_square(const RingElem& x) const;

    RingElem reduce(const RingElem& x, const LocalRing& target) const;
    RingElem lift(const RingElem& x, const LocalRing& source) const;

    std::uint64_t encode(const RingElem& x) const;
    RingElem decode(std::uint64_t code) const;
    std::vector<RingElem> enumerate(std::uint64_t bound = 100000000ULL) const;

    // Quadratic extension.
    QuadElem qzero() const { return {zero(), zero()}; }
    QuadElem qone() const { return {one(), zero()}; }
    QuadElem rho() const { return {zero(), one()}; }
    QuadElem embed(const RingElem& x) const { return {x, zero()}; }
    QuadElem qadd(const QuadElem& x, const QuadElem& y) const;
    QuadElem qsub(const QuadElem& x, const QuadElem& y) const;
    QuadElem qneg(const QuadElem& x) const;
    QuadElem qmul(const QuadElem& x, const QuadElem& y) const;
    QuadElem qinv(const QuadElem& x) const;
    QuadElem conj(const QuadElem& x) const;
    RingElem norm(const QuadElem& x) const;
    bool qis_unit(const QuadElem& x) const;
    bool qis_zero(const QuadElem& x) const;
    int qvaluation(const QuadElem& x) const;
    QuadElem qmul_pi(const QuadElem& x, int k) const;
    QuadElem qdiv_pi(const QuadElem& x, int k) const;
    QuadElem qreduce(const QuadElem& x, const LocalRing& target) const;
    QuadElem qlift(const QuadElem& x, const LocalRing& source) const;
    std::uint64_t qencode(const QuadElem& x) const { return encode(x.a) + size_ * encode(x.b); }
    QuadElem qdecode(std::uint64_t c) const { return {decode(c % size_), decode(c / size_)}; }

    // Primitive additive character exponent e(x) in Z/p^l.
    std::int64_t psi_exponent(const RingElem& x) const;

    nlohmann::json to_json() const;
    nlohmann::json elem_json(const RingElem& x) const;

    bool same(const LocalRing& o) const {
        return p_ == o.p_ && f_ == o.f_ && ell_ == o.ell_ && kind_ == o.kind_;
    }

private:
    int p_, f_, ell_;
    CharKind kind_;
    std::int64_t q_;
    std::int64_t pl_;  // p^l
    std::uint64_t size_;
    std::vector<std::int64_t> h_;  // monic modulus of degree f, coefficients in [0,p)
    RingElem nu_;

    std::size_t width() const { return kind_ == CharKind::Mixed ? f_ : std::size_t(f_) * ell_; }
    std::int64_t digit_base() const { return kind_ == CharKind::Mixed ? pl_ : p_; }

    std::vector<std::int64_t> fq_mul(const std::int64_t* x, const std::int64_t* y) const;
    std::vector<std::int64_t> fq_pow(std::vector<std::int64_t> x, std::uint64_t e) const;
    std::vector<std::int64_t> poly_mulmod(const std::vector<std::int64_t>& x,
                                          const std::vector<std::int64_t>& y,
                                          std::int64_t mod) const;
};

std::vector<std::int64_t> least_irreducible(int p, int f);

}  // namespace repzeta
