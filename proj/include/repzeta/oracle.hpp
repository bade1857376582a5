#pragma once

#include "repzeta/dirichlet.hpp"
#include "repzeta/fastring.hpp"
#include "repzeta/matalg.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace repzeta {

// Which finite group to enumerate: a classical group G(o_l), or a J-group
// J_{L,delta} / J_{U,delta} with delta in {0, pi}; special selects J' = J cap SL3.
struct GroupSpec {
    enum class Kind { Classical, J };
    Kind kind = Kind::Classical;
    GroupId G;
    int eps = 1;
    bool delta_pi = false;
    bool special = false;

    static GroupSpec classical(GroupId g) { return {Kind::Classical, g, g.eps(), false, g.special()}; }
    static GroupSpec j(int eps, bool delta_pi = false, bool special = false) {
        return {Kind::J, GroupId{}, eps, delta_pi, special};
    }
    static GroupSpec parse(const std::string& s, bool delta_pi = false);
    std::string name() const;
    BigInt order(std::int64_t q, int ell) const;
};

class GroupTable {
public:
    GroupTable(const FastRing& F, Codec codec, std::string name) : F_(&F), codec_(codec), name_(std::move(name)) {}

    const FastRing& ring() const { return *F_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return codes_.size(); }
    SMat elem(std::uint32_t i) const { return codec_.decode(*F_, codes_[i]); }
    std::uint32_t find(const SMat& A) const { return index_.find(codec_.encode(A), codes_); }
    std::uint32_t insert(const SMat& A) { return index_.insert(codec_.encode(A), codes_); }
    std::uint64_t code(std::uint32_t i) const { return codes_[i]; }
    void reserve(std::size_t n) {
        codes_.reserve(n);
        index_.reserve(n);
    }

    std::vector<SMat> gens;

private:
    const FastRing* F_;
    Codec codec_;
    std::string name_;
    std::vector<std::uint64_t> codes_;
    CodeIndex index_;
};

struct OracleBudget {
    std::uint64_t table_bound = 4'000'000;
    std::uint64_t count_bound = 20'000'000;
    std::uint64_t dixon_lookups = 2'000'000'000;
    std::size_t dixon_classes = 512;
};

// Center element c = E + Delta(delta) of the J-group (times rho in the unitary case).
SMat j_center(const FastRing& F, int eps, bool delta_pi);
// Random element of the Lie algebra g(o_l) (GL/GU/SL/SU) or of the J Lie algebra.
SMat random_lie_element(const FastRing& F, const GroupId& G, std::mt19937_64& rng);
SMat random_j_lie_element(const FastRing& F, int eps, bool delta_pi, std::mt19937_64& rng);
// (1+X)(1-X)^{-1}; returns false if 1-X is singular.
bool cayley(const FastRing& F, const SMat& X, SMat& out);
// A generating set for the group (verified by closure when tables are built).
std::vector<SMat> group_generators(const FastRing& F, const GroupSpec& spec, std::mt19937_64& rng);
bool group_contains(const FastRing& F, const GroupSpec& spec, const SMat& A);

std::unique_ptr<GroupTable> build_group(const GroupSpec& spec, const FastRing& F,
                                        std::uint64_t bound = OracleBudget{}.table_bound);
// True when closure of gens from the identity is the whole table.
bool generates(const GroupTable& T, const std::vector<SMat>& gens);

Partition conjugacy_classes(const GroupTable& T);
BigInt class_count_only(const GroupSpec& spec, const FastRing& F,
                        std::uint64_t bound = OracleBudget{}.count_bound);

struct DixonResult {
    DirichletPoly degrees;
    std::uint64_t prime = 0;
    std::uint64_t exponent = 0;
    std::size_t classes = 0;
    std::size_t class_matrices_used = 0;
};
DixonResult dixon_degrees(const GroupTable& T, const Partition& classes, const OracleBudget& budget = {});

// Convenience: level-1 (or level-l) Dixon degrees of a classical group at prime-power q.
DirichletPoly oracle_degrees(const GroupSpec& spec, const LocalRing& R, const OracleBudget& budget = {});
// Class count by conjugation closure (no character table), cached like the degrees.
BigInt oracle_class_count(const GroupSpec& spec, const LocalRing& R, const OracleBudget& budget = {});

// Disk cache (JSON files keyed by group and ring) used when REPZETA_CACHE_DIR is set.
std::string oracle_cache_key(const GroupSpec& spec, const LocalRing& R, const std::string& what);
bool oracle_cache_get(const std::string& key, nlohmann::json& out);
void oracle_cache_put(const std::string& key, const nlohmann::json& value);

}  // namespace repzeta
