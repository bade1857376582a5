#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace repzeta {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Real = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<50>, boost::multiprecision::et_off>;

// Errors carry a short machine-readable code ("NonUnit", "TooLarge", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline BigInt bpow(const BigInt& b, long e) {
    if (e < 0) throw Error("Domain", "negative exponent");
    BigInt r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace repzeta
