#pragma once

#include "repzeta/zeta.hpp"

#include <map>
#include <string>
#include <vector>

namespace repzeta {

enum class GlobalField { FunctionField, Rationals };
GlobalField parse_field(const std::string& s);

struct PlaceClass {
    std::int64_t qv = 0;     // residue field size
    std::int64_t count = 0;  // number of places with that residue size
    int degree = 1;          // degree over F_p (function field) or 1
};

// Places outside S up to cutoff: max degree for F_p(t) (the infinite place is in S),
// max prime for Q (primes <= 3 are in S).
std::vector<PlaceClass> places(GlobalField field, int p, int cutoff);
// Number of monic irreducibles of degree n over F_p.
std::int64_t irreducible_count(int p, int n);

struct LocalValue {
    double value = 0;
    double last_increment = 0;
    int levels = 0;
    bool converged = false;
    std::vector<double> increments;
    // smallest dimension > 1 at the last level and its multiplicity (decimal strings)
    std::string smallest_dim, smallest_mult;
};

// zeta_{G(o)}(s) as the limit over levels; G must be SL3 or SU3, s >= 1 real.
// The residue ring is F_q[[t]] for the function field, Z_p-type for Q.
LocalValue local_profinite(const GroupId& G, int p, int f, CharKind kind, double s, double tol = 1e-15,
                           int max_level = 40, const BaseProvider& base = BaseProvider());

struct EulerStep {
    int cutoff = 0;
    double log_value = 0;
    double value = 0;
    double r_statistic = 0;  // log P / (2 sum q_v^{-1}); 0 when undefined
};

struct EulerEstimate {
    std::string group, field;
    int p = 0;
    double s = 0;
    std::vector<EulerStep> trace;
    bool all_converged = true;
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

class EulerEngine {
public:
    EulerEngine(GroupId G, GlobalField field, int p, double tol = 1e-15, int level_cap = 40);
    // Partial products for cutoffs 1..max_cutoff (degrees or primes).
    EulerEstimate partial_products(double s, int max_cutoff);
    double log_local(std::int64_t qv, int degree, double s);
    const LocalValue& local(std::int64_t qv, int degree, double s);

private:
    GroupId G_;
    GlobalField field_;
    int p_;
    double tol_;
    int level_cap_;
    BaseProvider base_;
    std::map<std::pair<std::int64_t, double>, LocalValue> memo_;
};

EulerEstimate partial_product(const GroupId& G, GlobalField field, int p, double s, int cutoff, int level_cap = 40);

struct PoleProbe {
    EulerEstimate at_one;
    std::vector<std::pair<int, double>> r_values;  // (cutoff, R)
    std::vector<nlohmann::json> leading_terms;      // per residue size
    nlohmann::json to_json() const;
};
PoleProbe pole_probe(const GroupId& G, GlobalField field, int p, int max_cutoff, int level_cap = 40);

}  // namespace repzeta
