#pragma once

#include "repzeta/fastring.hpp"
#include "repzeta/matalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace repzeta {

enum class OrbitKind { Scalar, Regular, Decomposable, NilpotentTranslate };

// Level-1 orbit type. For regular orbits, pattern lists the factorisation of the
// characteristic polynomial over F_q, e.g. "1,1,1", "1^2,1", "2,1", "3". In the
// unitary case the polynomial is that of the hermitian matrix rho^{-1} x.
struct OrbitType {
    OrbitKind kind = OrbitKind::Regular;
    std::string pattern;
    std::string tag() const;
};

OrbitType classify_level1(const FastRing& F1, const SMat& x, const GroupId& lie);
OrbitType classify_level1(const LocalRing& R1, const Mat& x, const GroupId& lie);

struct CensusRow {
    std::string type;
    BigInt count;
    BigInt size;
    BigInt stabilizer;
    std::string representative;
};

struct OrbitCensus {
    std::string name;
    BigInt space_size;
    BigInt group_order;
    std::vector<CensusRow> rows;

    BigInt points() const;
    BigInt orbits() const;
    // sum count*size == space_size and stabilizer*size == group_order on every row
    bool closed() const;
    // rows merged by (type, size), sorted
    OrbitCensus grouped() const;
    bool same_rows(const OrbitCensus& o) const;
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

struct RegularClass {
    std::string pattern;
    BigInt count;
    BigInt centralizer;
};

// Closed-form regular classes of G(k) on g(k), d <= 3.
std::vector<RegularClass> regular_classes(const GroupId& G, std::int64_t q);
OrbitCensus regular_census(const GroupId& G, std::int64_t q);
// Regular rows plus the scalar / decomposable / nilpotent-translate rows.
OrbitCensus level1_census(const GroupId& G, std::int64_t q);
BigInt regular_element_count(const GroupId& G, std::int64_t q);
BigInt decomposable_orbit_count(const GroupId& G, std::int64_t q);
BigInt translate_orbit_count(const GroupId& G, std::int64_t q);
// [G(k) : G1 x G2(k)] and [G(k) : J(k)] for d = 3.
BigInt decomposable_orbit_size(const GroupId& G, std::int64_t q);
BigInt nilpotent_orbit_size(const GroupId& G, std::int64_t q);

// o_l-basis of the Lie algebra g(o_l) as matrices over O_l.
std::vector<SMat> lie_basis(const FastRing& F, const GroupId& G);

// Exact orbit partition of g(o_l) under G(o_l) by generator closure.
OrbitCensus brute_force_census(const GroupId& G, const LocalRing& R, std::uint64_t bound = 100'000'000);

// A = r(E + omega I + Delta(delta) + lower(alpha, beta, gamma)) with r = 1 or rho.
struct NilpotentLift {
    int ell = 1;
    int m = 1;
    bool unitary = false;
    QuadElem omega, delta, alpha, beta, gamma;
};
void validate_lift(const LocalRing& R, const NilpotentLift& L);
NilpotentLift make_lift(const LocalRing& R, bool unitary, const QuadElem& omega, const QuadElem& delta,
                        const QuadElem& alpha, const QuadElem& beta, const QuadElem& gamma);
Mat nilpotent_lift_matrix(const LocalRing& R, const NilpotentLift& L);

// Three-family census of the fibre above A(l,l; omega,delta,0,0,0).
OrbitCensus branching_fiber(int eps, std::int64_t q);
// Brute force: R has level l+1, the fibre sits above the level-l matrix with delta in {0, pi}.
OrbitCensus branching_fiber_brute(const LocalRing& R, int eps, bool delta_pi);

// W(l,m; alpha,beta | sigma,tau,nu): U-part on the diagonal, V-part (sigma,tau,nu) in
// positions (2,1), (3,2), (3,1).
struct JCoadjointLift {
    int ell = 1;
    QuadElem alpha, beta, sigma, tau, nu;
};
OrbitCensus j_coadjoint_census(std::int64_t q, int eps);
OrbitCensus j_coadjoint_brute(const LocalRing& R1, int eps);

struct NilpotentStabilizers {
    int m = 0, m1 = 0, m2 = 0, ell1 = 0, ell2 = 0;
    bool split = false;
    std::string scheme;  // H0, Hinf or H*
    BigInt inertia;      // |I_G(psi_{A_{l1}})|
    BigInt stabilizer;   // |Stab(psi_{A_{l-m2}})|
    BigInt group;        // |G(o_l)|
    BigInt congruence;   // |G(o_l)^{l1}|
    nlohmann::json to_json() const;
};
// Orders for a lift given at level l2 of a level-l problem.
NilpotentStabilizers stabilizer_orders(const LocalRing& R, const NilpotentLift& L, const GroupId& G, int ell);
NilpotentStabilizers nilpotent_stabilizers(const GroupId& G, std::int64_t q, int ell, int m, bool split,
                                           const std::string& scheme = "H*");
BigInt j_stabilizer_order(const LocalRing& R, const JCoadjointLift& W, int eps);

struct ShadowReport {
    int centralizer_dim = 0;  // dim of z_{gl(k)}(xi)
    int shadow_dim = 0;       // dim of the reduction of the o_l-centralizer
    BigInt module_size;       // |Z_{Mat(o_l)}(xi~)|
    bool preserving = false;
    std::optional<BigInt> order;  // |Sh(xi~)| when counted
    nlohmann::json to_json() const;
};
// count_limit bounds the enumeration of the reduced centralizer algebra.
ShadowReport shadow(const LocalRing& R, const Mat& xi, const GroupId& G, std::uint64_t count_limit = 2'000'000);

// Size of the centralizer module {X in Mat_d(O_l or o_l) : X xi = xi X}, and whether
// it equals the J_delta shape algebra.
bool is_j_centralizer(const LocalRing& R, const Mat& xi, bool unitary, bool delta_pi);

struct BlockDiag {
    Mat xi1, xi2, g;
    int iterations = 0;
};
BlockDiag block_diagonalize(const LocalRing& R, const Mat& xi);

// Orbits of the preimage of Z_{G(k)}(xi) in G(o_2) on the fibre xi + pi g(k); GL only.
OrbitCensus fibre_census(const LocalRing& R2, const GroupId& G, const Mat& xi);

}  // namespace repzeta
