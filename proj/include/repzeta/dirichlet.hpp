#pragma once

#include "repzeta/common.hpp"

#include "json.hpp"

#include <complex>
#include <map>
#include <string>

namespace repzeta {

// Finite Dirichlet polynomial sum mult * dim^{-s}; dims strictly increasing, mults positive.
class DirichletPoly {
public:
    DirichletPoly() = default;
    static DirichletPoly term(const BigInt& dim, const BigInt& mult);

    void add_term(const BigInt& dim, const BigInt& mult);
    const std::map<BigInt, BigInt>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    DirichletPoly operator+(const DirichletPoly& o) const;
    DirichletPoly operator*(const DirichletPoly& o) const;
    DirichletPoly& operator+=(const DirichletPoly& o);
    bool operator==(const DirichletPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const DirichletPoly& o) const { return terms_ != o.terms_; }

    DirichletPoly scale(const BigInt& c) const;
    DirichletPoly dilate(const BigInt& c) const;

    // Exact value at s = -k (k >= 0): sum mult * dim^k.
    BigInt at_neg(int k) const;
    BigInt at_zero() const { return at_neg(0); }
    Real eval(const Real& s) const;
    std::complex<Real> eval(const Real& sigma, const Real& t) const;

    nlohmann::json to_json() const;
    static DirichletPoly from_json(const nlohmann::json& j);
    static DirichletPoly parse(const std::string& text);
    std::string str() const;

private:
    std::map<BigInt, BigInt> terms_;
};

}  // namespace repzeta
