#include "repzeta/dirichlet.hpp"

#include <sstream>

namespace repzeta {

namespace {

BigInt parse_decimal(const nlohmann::json& v, const char* field) {
    std::string s;
    if (v.is_string()) s = v.get<std::string>();
    else if (v.is_number_integer()) s = std::to_string(v.get<long long>());
    else throw Error("ParseError", std::string("field '") + field + "' must be a decimal string");
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw Error("ParseError", std::string("field '") + field + "' is not a non-negative decimal: " + s);
    return BigInt(s);
}

}  // namespace

DirichletPoly DirichletPoly::term(const BigInt& dim, const BigInt& mult) {
    DirichletPoly p;
    p.add_term(dim, mult);
    return p;
}

void DirichletPoly::add_term(const BigInt& dim, const BigInt& mult) {
    if (dim < 1) throw Error("Domain", "dimension must be positive");
    if (mult < 0) throw Error("Domain", "multiplicity must be non-negative");
    if (mult == 0) return;
    terms_[dim] += mult;
}

DirichletPoly DirichletPoly::operator+(const DirichletPoly& o) const {
    DirichletPoly r = *this;
    r += o;
    return r;
}

DirichletPoly& DirichletPoly::operator+=(const DirichletPoly& o) {
    for (const auto& [d, m] : o.terms_) terms_[d] += m;
    return *this;
}

DirichletPoly DirichletPoly::operator*(const DirichletPoly& o) const {
    DirichletPoly r;
    for (const auto& [d1, m1] : terms_)
        for (const auto& [d2, m2] : o.terms_) r.terms_[d1 * d2] += m1 * m2;
    return r;
}

DirichletPoly DirichletPoly::scale(const BigInt& c) const {
    if (c < 0) throw Error("Domain", "scale factor must be non-negative");
    DirichletPoly r;
    if (c == 0) return r;
    for (const auto& [d, m] : terms_) r.terms_[d] = m * c;
    return r;
}

DirichletPoly DirichletPoly::dilate(const BigInt& c) const {
    if (c < 1) throw Error("Domain", "dilation constant must be positive");
    DirichletPoly r;
    for (const auto& [d, m] : terms_) r.terms_[d * c] = m;
    return r;
}

BigInt DirichletPoly::at_neg(int k) const {
    BigInt s = 0;
    for (const auto& [d, m] : terms_) s += m * bpow(d, k);
    return s;
}

Real DirichletPoly::eval(const Real& s) const {
    // Kahan summation in ascending dimension order.
    Real sum = 0, comp = 0;
    for (const auto& [d, m] : terms_) {
        Real dd(d.str());
        Real term = Real(m.str()) * boost::multiprecision::exp(-s * boost::multiprecision::log(dd));
        Real y = term - comp;
        Real t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

std::complex<Real> DirichletPoly::eval(const Real& sigma, const Real& t) const {
    Real re = 0, im = 0;
    for (const auto& [d, m] : terms_) {
        Real ld = boost::multiprecision::log(Real(d.str()));
        Real mag = Real(m.str()) * boost::multiprecision::exp(-sigma * ld);
        re += mag * boost::multiprecision::cos(t * ld);
        im -= mag * boost::multiprecision::sin(t * ld);
    }
    return {re, im};
}

nlohmann::json DirichletPoly::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [d, m] : terms_) arr.push_back({{"dim", d.str()}, {"mult", m.str()}});
    return {{"terms", arr}};
}

DirichletPoly DirichletPoly::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw Error("ParseError", "expected an object with a 'terms' array");
    DirichletPoly p;
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("dim") || !t.contains("mult"))
            throw Error("ParseError", "each term needs 'dim' and 'mult'");
        if (t["mult"].is_string() && !t["mult"].get<std::string>().empty() && t["mult"].get<std::string>()[0] == '-')
            throw Error("ParseError", "negative multiplicity");
        if (t["mult"].is_number_integer() && t["mult"].get<long long>() < 0)
            throw Error("ParseError", "negative multiplicity");
        BigInt d = parse_decimal(t["dim"], "dim");
        BigInt m = parse_decimal(t["mult"], "mult");
        if (d == 0) throw Error("ParseError", "dimension must be positive");
        if (m == 0) throw Error("ParseError", "zero multiplicity");
        p.add_term(d, m);
    }
    return p;
}

DirichletPoly DirichletPoly::parse(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("ParseError", "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return from_json(j);
}

std::string DirichletPoly::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [d, m] : terms_) {
        if (!first) os << ", ";
        os << d << ":" << m;
        first = false;
    }
    os << "}";
    return os.str();
}

}  // namespace repzeta
