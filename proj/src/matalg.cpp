#include "repzeta/matalg.hpp"

#include <algorithm>
#include <cctype>

namespace repzeta {

std::string GroupId::name() const {
    const char* f = family == Family::GL ? "GL" : family == Family::GU ? "GU" : family == Family::SL ? "SL" : "SU";
    return std::string(f) + std::to_string(d);
}

GroupId parse_group(const std::string& s) {
    std::string t;
    for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t.size() != 3 || !std::isdigit(static_cast<unsigned char>(t[2])))
        throw Error("BadArgument", "group must look like gl3, gu2, sl3, su1; got " + s);
    GroupId g;
    std::string fam = t.substr(0, 2);
    if (fam == "gl") g.family = Family::GL;
    else if (fam == "gu") g.family = Family::GU;
    else if (fam == "sl") g.family = Family::SL;
    else if (fam == "su") g.family = Family::SU;
    else throw Error("BadArgument", "unknown group family " + fam);
    g.d = t[2] - '0';
    if (g.d < 1 || g.d > 3) throw Error("BadArgument", "d must be 1, 2 or 3");
    return g;
}

Mat mat_zero(const LocalRing& R, int d) {
    Mat m;
    m.d = d;
    m.e.assign(static_cast<std::size_t>(d) * d, R.qzero());
    return m;
}

Mat mat_identity(const LocalRing& R, int d) {
    Mat m = mat_zero(R, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = R.qone();
    return m;
}

Mat mat_unit(const LocalRing& R, int d, int i, int j) {
    Mat m = mat_zero(R, d);
    m.at(i, j) = R.qone();
    return m;
}

Mat mat_antidiagonal(const LocalRing& R, int d) {
    Mat m = mat_zero(R, d);
    for (int i = 0; i < d; ++i) m.at(i, d - 1 - i) = R.qone();
    return m;
}

Mat mat_E(const LocalRing& R) { return mat_unit(R, 3, 0, 2); }

Mat mat_diag(const LocalRing& R, const std::vector<QuadElem>& diag) {
    Mat m = mat_zero(R, static_cast<int>(diag.size()));
    for (int i = 0; i < m.d; ++i) m.at(i, i) = diag[i];
    return m;
}

Mat mat_add(const LocalRing& R, const Mat& A, const Mat& B) {
    Mat C = A;
    for (std::size_t i = 0; i < C.e.size(); ++i) C.e[i] = R.qadd(A.e[i], B.e[i]);
    return C;
}

Mat mat_sub(const LocalRing& R, const Mat& A, const Mat& B) {
    Mat C = A;
    for (std::size_t i = 0; i < C.e.size(); ++i) C.e[i] = R.qsub(A.e[i], B.e[i]);
    return C;
}

Mat mat_neg(const LocalRing& R, const Mat& A) {
    Mat C = A;
    for (auto& x : C.e) x = R.qneg(x);
    return C;
}

Mat mat_mul(const LocalRing& R, const Mat& A, const Mat& B) {
    Mat C = mat_zero(R, A.d);
    for (int i = 0; i < A.d; ++i)
        for (int k = 0; k < A.d; ++k) {
            if (R.qis_zero(A.at(i, k))) continue;
            for (int j = 0; j < A.d; ++j) C.at(i, j) = R.qadd(C.at(i, j), R.qmul(A.at(i, k), B.at(k, j)));
        }
    return C;
}

Mat mat_scale(const LocalRing& R, const QuadElem& s, const Mat& A) {
    Mat C = A;
    for (auto& x : C.e) x = R.qmul(s, x);
    return C;
}

Mat mat_pi(const LocalRing& R, const Mat& A, int k) {
    Mat C = A;
    for (auto& x : C.e) x = R.qmul_pi(x, k);
    return C;
}

Mat mat_div_pi(const LocalRing& R, const Mat& A, int k) {
    Mat C = A;
    for (auto& x : C.e) x = R.qdiv_pi(x, k);
    return C;
}

Mat mat_transpose(const Mat& A) {
    Mat C = A;
    for (int i = 0; i < A.d; ++i)
        for (int j = 0; j < A.d; ++j) C.at(i, j) = A.at(j, i);
    return C;
}

QuadElem mat_trace(const LocalRing& R, const Mat& A) {
    QuadElem t = R.qzero();
    for (int i = 0; i < A.d; ++i) t = R.qadd(t, A.at(i, i));
    return t;
}

namespace {

QuadElem det_rec(const LocalRing& R, const Mat& A, std::vector<int>& rows, int col) {
    int d = A.d;
    if (col == d) return R.qone();
    QuadElem acc = R.qzero();
    int sign = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        int row = rows[r];
        if (row < 0) continue;
        const QuadElem& a = A.at(row, col);
        if (!R.qis_zero(a)) {
            rows[r] = -1;
            QuadElem minor = det_rec(R, A, rows, col + 1);
            rows[r] = row;
            QuadElem term = R.qmul(a, minor);
            acc = sign > 0 ? R.qadd(acc, term) : R.qsub(acc, term);
        }
        sign = -sign;
    }
    return acc;
}

Mat minor_matrix(const Mat& A, int skip_r, int skip_c) {
    Mat M;
    M.d = A.d - 1;
    for (int i = 0; i < A.d; ++i) {
        if (i == skip_r) continue;
        for (int j = 0; j < A.d; ++j) {
            if (j == skip_c) continue;
            M.e.push_back(A.at(i, j));
        }
    }
    return M;
}

}  // namespace

QuadElem mat_det(const LocalRing& R, const Mat& A) {
    if (A.d == 0) return R.qone();
    std::vector<int> rows(A.d);
    for (int i = 0; i < A.d; ++i) rows[i] = i;
    return det_rec(R, A, rows, 0);
}

Mat mat_inverse(const LocalRing& R, const Mat& A) {
    QuadElem det = mat_det(R, A);
    if (!R.qis_unit(det)) throw Error("NonUnit", "matrix is not invertible");
    QuadElem di = R.qinv(det);
    Mat C = mat_zero(R, A.d);
    if (A.d == 1) {
        C.at(0, 0) = di;
        return C;
    }
    for (int i = 0; i < A.d; ++i)
        for (int j = 0; j < A.d; ++j) {
            QuadElem cof = mat_det(R, minor_matrix(A, j, i));
            if ((i + j) % 2) cof = R.qneg(cof);
            C.at(i, j) = R.qmul(cof, di);
        }
    return C;
}

Mat mat_conjugate(const LocalRing& R, const Mat& g, const Mat& X) {
    return mat_mul(R, mat_mul(R, g, X), mat_inverse(R, g));
}

Mat mat_commutator(const LocalRing& R, const Mat& A, const Mat& B) {
    return mat_sub(R, mat_mul(R, A, B), mat_mul(R, B, A));
}

int mat_valuation(const LocalRing& R, const Mat& A) {
    int v = R.ell();
    for (const auto& x : A.e) v = std::min(v, R.qvaluation(x));
    return v;
}

bool mat_is_zero(const LocalRing& R, const Mat& A) {
    return std::all_of(A.e.begin(), A.e.end(), [&](const QuadElem& x) { return R.qis_zero(x); });
}

Mat mat_reduce(const LocalRing& R, const Mat& A, const LocalRing& target) {
    Mat C = A;
    for (auto& x : C.e) x = R.qreduce(x, target);
    return C;
}

Mat mat_lift(const LocalRing& R, const Mat& A, const LocalRing& source) {
    Mat C = A;
    for (auto& x : C.e) x = R.qlift(x, source);
    return C;
}

Mat mat_galois(const LocalRing& R, const Mat& A) {
    Mat C = A;
    for (auto& x : C.e) x = R.conj(x);
    return C;
}

Mat star(const LocalRing& R, const Mat& A) {
    int d = A.d;
    Mat C = mat_zero(R, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) C.at(i, j) = R.conj(A.at(d - 1 - j, d - 1 - i));
    return C;
}

namespace {

bool entries_in_base(const LocalRing& R, const Mat& A) {
    return std::all_of(A.e.begin(), A.e.end(), [&](const QuadElem& x) { return R.is_zero(x.b); });
}

}  // namespace

bool in_group(const LocalRing& R, const Mat& A, const GroupId& G) {
    if (A.d != G.d) return false;
    QuadElem det = mat_det(R, A);
    if (G.eps() > 0) {
        if (!entries_in_base(R, A) || !R.qis_unit(det)) return false;
    } else {
        if (!(mat_mul(R, star(R, A), A) == mat_identity(R, A.d))) return false;
    }
    if (G.special()) return det == R.qone();
    return true;
}

bool in_lie_algebra(const LocalRing& R, const Mat& A, const GroupId& G) {
    if (A.d != G.d) return false;
    if (G.eps() > 0) {
        if (!entries_in_base(R, A)) return false;
    } else {
        if (!mat_is_zero(R, mat_add(R, A, star(R, A)))) return false;
    }
    if (G.special()) return R.qis_zero(mat_trace(R, A));
    return true;
}

bool gu_entry_pattern(const LocalRing& R, const Mat& A) {
    int d = A.d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (!R.qis_zero(R.qadd(A.at(i, j), R.conj(A.at(d - 1 - j, d - 1 - i))))) return false;
    return true;
}

std::int64_t trace_character(const LocalRing& R, const Mat& A, const Mat& X) {
    return R.psi_exponent(mat_trace(R, mat_mul(R, A, X)).a);
}

std::vector<QuadElem> charpoly(const LocalRing& R, const Mat& A) {
    // Faddeev-LeVerrier; the divisors k <= d are units because d < p.
    int d = A.d;
    std::vector<QuadElem> c(d + 1, R.qzero());
    c[d] = R.qone();
    Mat M = mat_zero(R, d);
    Mat I = mat_identity(R, d);
    for (int k = 1; k <= d; ++k) {
        M = mat_add(R, mat_mul(R, A, M), mat_scale(R, c[d - k + 1], I));
        QuadElem t = mat_trace(R, mat_mul(R, A, M));
        QuadElem kinv = R.qinv(R.embed(R.from_int(k)));
        c[d - k] = R.qneg(R.qmul(t, kinv));
    }
    c.pop_back();
    return c;
}

int residue_rank(const LocalRing& R, const std::vector<std::vector<QuadElem>>& rows_in) {
    LocalRing k = R.at_level(1);
    std::vector<std::vector<QuadElem>> rows;
    for (const auto& r : rows_in) {
        std::vector<QuadElem> v;
        for (const auto& x : r) v.push_back(R.qreduce(x, k));
        rows.push_back(v);
    }
    int rank = 0;
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (!k.qis_zero(rows[r][col])) {
                piv = static_cast<int>(r);
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        QuadElem inv = k.qinv(rows[rank][col]);
        for (auto& x : rows[rank]) x = k.qmul(x, inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || k.qis_zero(rows[r][col])) continue;
            QuadElem f = rows[r][col];
            for (std::size_t j = 0; j < ncols; ++j) rows[r][j] = k.qsub(rows[r][j], k.qmul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

CharpolyInfo charpoly_tools(const LocalRing& R, const Mat& A) {
    CharpolyInfo info;
    info.coeffs = charpoly(R, A);
    int d = A.d;
    std::vector<std::vector<QuadElem>> krylov;
    Mat P = mat_identity(R, d);
    for (int i = 0; i < d; ++i) {
        krylov.push_back(P.e);
        P = mat_mul(R, P, A);
    }
    info.cyclic = residue_rank(R, krylov) == d;
    info.hermitian_condition = true;
    for (int i = 0; i < d; ++i) {
        QuadElem rhs = R.conj(info.coeffs[i]);
        if ((d - i) % 2) rhs = R.qneg(rhs);
        if (!(info.coeffs[i] == rhs)) info.hermitian_condition = false;
    }
    return info;
}

Mat exp_congruence(const LocalRing& R, const Mat& X, int m) {
    if (m < 1) throw Error("Domain", "exp needs X in pi^m g with m >= 1");
    if (mat_valuation(R, X) < m) throw Error("Domain", "X is not divisible by pi^m");
    int d = X.d;
    Mat result = mat_identity(R, d);
    Mat term = mat_identity(R, d);
    for (int k = 1; k * m < R.ell(); ++k) {
        if (k % R.p() == 0) throw Error("Domain", "exp series needs a non-unit denominator");
        term = mat_scale(R, R.qinv(R.embed(R.from_int(k))), mat_mul(R, term, X));
        result = mat_add(R, result, term);
    }
    return result;
}

Mat log_congruence(const LocalRing& R, const Mat& g, int m) {
    if (m < 1) throw Error("Domain", "log needs g in the m-th congruence subgroup with m >= 1");
    int d = g.d;
    Mat Y = mat_sub(R, g, mat_identity(R, d));
    if (mat_valuation(R, Y) < m) throw Error("Domain", "g is not congruent to 1 mod pi^m");
    Mat result = mat_zero(R, d);
    Mat power = mat_identity(R, d);
    for (int k = 1; k * m < R.ell(); ++k) {
        if (k % R.p() == 0) throw Error("Domain", "log series needs a non-unit denominator");
        power = mat_mul(R, power, Y);
        Mat t = mat_scale(R, R.qinv(R.embed(R.from_int(k))), power);
        result = (k % 2) ? mat_add(R, result, t) : mat_sub(R, result, t);
    }
    return result;
}

BigInt group_order_k(const GroupId& G, std::int64_t q) {
    BigInt Q = q;
    BigInt order = bpow(Q, G.d * (G.d - 1) / 2);
    for (int i = 1; i <= G.d; ++i) {
        BigInt qi = bpow(Q, i);
        if (G.eps() > 0) order *= qi - 1;
        else order *= (i % 2) ? qi + 1 : qi - 1;
    }
    if (G.special()) order /= (G.eps() > 0 ? Q - 1 : Q + 1);
    return order;
}

BigInt group_order(const GroupId& G, std::int64_t q, int ell) {
    return group_order_k(G, q) * bpow(BigInt(q), static_cast<long>(G.dim()) * (ell - 1));
}

nlohmann::json mat_json(const LocalRing& R, const Mat& A) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < A.d; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < A.d; ++j) row.push_back({R.elem_json(A.at(i, j).a), R.elem_json(A.at(i, j).b)});
        rows.push_back(row);
    }
    return rows;
}

}  // namespace repzeta
