#pragma once

#include "repzeta/localring.hpp"

#include <string>
#include <vector>

namespace repzeta {

enum class Family { GL, GU, SL, SU };

struct GroupId {
    Family family = Family::GL;
    int d = 3;

    int eps() const { return (family == Family::GL || family == Family::SL) ? 1 : -1; }
    bool special() const { return family == Family::SL || family == Family::SU; }
    bool unitary() const { return eps() < 0; }
    int dim() const { return special() ? d * d - 1 : d * d; }
    int rank() const { return special() ? d - 1 : d; }
    // same family type with another d, e.g. GL3 -> GL2
    GroupId with_d(int dd) const { return GroupId{family, dd}; }
    GroupId general() const { return GroupId{unitary() ? Family::GU : Family::GL, d}; }
    std::string name() const;
    bool operator==(const GroupId&) const = default;
};

GroupId parse_group(const std::string& s);

struct Mat {
    int d = 0;
    std::vector<QuadElem> e;
    QuadElem& at(int i, int j) { return e[static_cast<std::size_t>(i) * d + j]; }
    const QuadElem& at(int i, int j) const { return e[static_cast<std::size_t>(i) * d + j]; }
    bool operator==(const Mat&) const = default;
};

Mat mat_zero(const LocalRing& R, int d);
Mat mat_identity(const LocalRing& R, int d);
Mat mat_unit(const LocalRing& R, int d, int i, int j);  // E_{i,j}, 0-based
Mat mat_antidiagonal(const LocalRing& R, int d);          // W
Mat mat_E(const LocalRing& R);                             // E = E_{1,3}
Mat mat_diag(const LocalRing& R, const std::vector<QuadElem>& diag);

Mat mat_add(const LocalRing& R, const Mat& A, const Mat& B);
Mat mat_sub(const LocalRing& R, const Mat& A, const Mat& B);
Mat mat_neg(const LocalRing& R, const Mat& A);
Mat mat_mul(const LocalRing& R, const Mat& A, const Mat& B);
Mat mat_scale(const LocalRing& R, const QuadElem& s, const Mat& A);
Mat mat_pi(const LocalRing& R, const Mat& A, int k);
Mat mat_div_pi(const LocalRing& R, const Mat& A, int k);
Mat mat_transpose(const Mat& A);
QuadElem mat_trace(const LocalRing& R, const Mat& A);
QuadElem mat_det(const LocalRing& R, const Mat& A);
Mat mat_inverse(const LocalRing& R, const Mat& A);
Mat mat_conjugate(const LocalRing& R, const Mat& g, const Mat& X);  // g X g^{-1}
Mat mat_commutator(const LocalRing& R, const Mat& A, const Mat& B);  // AB - BA
int mat_valuation(const LocalRing& R, const Mat& A);
bool mat_is_zero(const LocalRing& R, const Mat& A);
Mat mat_reduce(const LocalRing& R, const Mat& A, const LocalRing& target);
Mat mat_lift(const LocalRing& R, const Mat& A, const LocalRing& source);
Mat mat_galois(const LocalRing& R, const Mat& A);

// (a_{ij})^star = W (conj a_{ji}) W^{-1}
Mat star(const LocalRing& R, const Mat& A);

bool in_group(const LocalRing& R, const Mat& A, const GroupId& G);
bool in_lie_algebra(const LocalRing& R, const Mat& A, const GroupId& G);
// The entrywise criterion a_{ij} + conj(a_{d+1-j,d+1-i}) = 0.
bool gu_entry_pattern(const LocalRing& R, const Mat& A);

// e(tr(AX)) in Z/p^l, using the o-part of the trace.
std::int64_t trace_character(const LocalRing& R, const Mat& A, const Mat& X);

struct CharpolyInfo {
    std::vector<QuadElem> coeffs;  // c_0..c_{d-1}, monic t^d + sum c_i t^i
    bool cyclic = false;
    bool hermitian_condition = false;
};
CharpolyInfo charpoly_tools(const LocalRing& R, const Mat& A);
std::vector<QuadElem> charpoly(const LocalRing& R, const Mat& A);

// Rank over the residue field F_{q^2} of the given matrices flattened as vectors.
int residue_rank(const LocalRing& R, const std::vector<std::vector<QuadElem>>& rows);

Mat exp_congruence(const LocalRing& R, const Mat& X, int m);
Mat log_congruence(const LocalRing& R, const Mat& g, int m);

BigInt group_order(const GroupId& G, std::int64_t q, int ell);
BigInt group_order_k(const GroupId& G, std::int64_t q);

nlohmann::json mat_json(const LocalRing& R, const Mat& A);

}  // namespace repzeta
