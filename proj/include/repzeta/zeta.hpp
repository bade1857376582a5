#pragma once

#include "repzeta/dirichlet.hpp"
#include "repzeta/matalg.hpp"
#include "repzeta/oracle.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace repzeta {

struct LevelSplit {
    int ell = 0, m = 0, ell1 = 0, ell2 = 0, m1 = 0, m2 = 0;
    static LevelSplit make(int ell, int m);
    // Names of the violated properties (empty when all seven hold).
    std::vector<std::string> violations() const;
};

struct BaseCensus {
    GroupId group;
    std::int64_t q = 0;
    DirichletPoly degrees;
    std::string provenance;  // builtin, oracle or file
};

// Generic level-1 degree tables for d <= 3.
DirichletPoly builtin_degrees(const GroupId& G, std::int64_t q);

// Supplies level-1 degree multisets. Every table is gated by sum d^2 = |G(k)| and a
// class-count check before it is handed out.
class BaseProvider {
public:
    enum class Kind { Builtin, Oracle, File };
    explicit BaseProvider(Kind kind = Kind::Builtin, std::string file = {}, OracleBudget budget = {});
    static BaseProvider parse(const std::string& name, const std::string& file = {});

    Kind kind() const { return kind_; }
    std::string name() const;
    // R1 fixes p, f and the ring kind used by the oracle.
    BaseCensus get(const GroupId& G, const LocalRing& R1) const;

private:
    Kind kind_;
    std::string file_;
    OracleBudget budget_;
    std::shared_ptr<std::map<std::string, BaseCensus>> memo_;
    std::shared_ptr<std::mutex> mu_;
    DirichletPoly from_file(const GroupId& G, std::int64_t q) const;
};

DirichletPoly zeta_regular(const GroupId& G, std::int64_t q, int ell);
DirichletPoly zeta_J(std::int64_t q, int eps, int ell, bool recursive = false);
DirichletPoly zeta_Jprime(std::int64_t q, int eps, int ell);
BigInt j_order(std::int64_t q, int eps, int ell, bool special);

DirichletPoly zeta_E_closed(const GroupId& G, std::int64_t q, int ell);
// Enumerates the level-l2 parameter tuples; TooLarge when q^{5 l2} exceeds bound.
DirichletPoly zeta_E_explicit(const GroupId& G, const LocalRing& R, double bound = 1e8);

struct DecomposableReading {
    BigInt orbit_constant;  // [G(k):G1xG2(k)] q^{(dim G - dim G1xG2)(l-2)/2}
    BigInt level_constant;  // [G(o_l1):G1xG2(o_l1)]
    bool orbit_block_sum = false;
    bool level_block_sum = false;
    BigInt chosen;
    DirichletPoly component;  // single-orbit component
    BigInt orbit_count;
};
DecomposableReading zeta_decomposable(const GroupId& G, const LocalRing& R, const BaseProvider& base);
// The *_at forms take the level-1 ring and the level separately, so that levels beyond
// 64-bit ring sizes can be reached.
DecomposableReading zeta_decomposable_at(const GroupId& G, const LocalRing& R1, int ell, const BaseProvider& base);

// Level-l zeta function of a d <= 2 group (d = 1 closed, d = 2 by the A1 recursion).
DirichletPoly zeta_small(const GroupId& G, const LocalRing& R, const BaseProvider& base);
DirichletPoly zeta_small_at(const GroupId& G, const LocalRing& R1, int ell, const BaseProvider& base);

struct ZetaReport {
    GroupId group;
    std::int64_t q = 0;
    int ell = 0;
    CharKind kind = CharKind::Mixed;
    std::string base;
    std::vector<std::pair<std::string, DirichletPoly>> components;
    DirichletPoly total;
    BigInt group_order;
    std::map<std::string, bool> block_sum;
    nlohmann::json decomposable_readings;
    nlohmann::json to_json() const;
};

ZetaReport zeta_full(const GroupId& G, const LocalRing& R, const BaseProvider& base);
ZetaReport zeta_full_at(const GroupId& G, const LocalRing& R1, int ell, const BaseProvider& base);
DirichletPoly zeta_total(const GroupId& G, const LocalRing& R, const BaseProvider& base);

struct ShadowLiftCheck {
    DirichletPoly lhs, rhs;
    bool equal = false;
    nlohmann::json shadow;
    nlohmann::json to_json() const;
};
// The lift is E + Delta(delta) (times rho for GU) at level l-1, delta in {0, pi}.
ShadowLiftCheck shadow_lift_check(const GroupId& G, const LocalRing& R, bool delta_pi);

}  // namespace repzeta
