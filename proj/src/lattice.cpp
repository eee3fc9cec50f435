#include "toric/lattice.h"
#include "toric/errors.h"
#include <algorithm>

namespace toric {
namespace lattice {

namespace {

/// all k-subsets of {0..n-1}, written into `out` in lexicographic order
void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out)
{
    std::vector<std::size_t> idx(k);
    for(std::size_t i = 0; i < k; i++) idx[i] = i;
    if(k > n) return;
    while(true) {
        out.push_back(idx);
        std::size_t i = k;
        while(i > 0 && idx[i - 1] == n - k + i - 1) i--;
        if(i == 0) return;
        idx[i - 1]++;
        for(std::size_t j = i; j < k; j++) idx[j] = idx[j - 1] + 1;
    }
}

IntegerMatrix onesRow(std::size_t len)
{
    IntegerMatrix r(1, len);
    for(std::size_t j = 0; j < len; j++) r(0, j) = 1;
    return r;
}

}  // internal namespace

SmithDecomposition smith_decomposition(const IntegerMatrix& M)
{
    const std::size_t r = M.rows(), c = M.cols();
    IntegerMatrix S(M), U = IntegerMatrix::identity(r), V = IntegerMatrix::identity(c);

    auto swapRows = [&](std::size_t i, std::size_t k) {
        if(i == k) return;
        for(std::size_t j = 0; j < c; j++) std::swap(S(i, j), S(k, j));
        for(std::size_t j = 0; j < r; j++) std::swap(U(i, j), U(k, j));
    };
    auto swapCols = [&](std::size_t j, std::size_t k) {
        if(j == k) return;
        for(std::size_t i = 0; i < r; i++) std::swap(S(i, j), S(i, k));
        for(std::size_t i = 0; i < c; i++) std::swap(V(i, j), V(i, k));
    };
    auto addRow = [&](std::size_t dst, std::size_t src, const Integer& f) {
        for(std::size_t j = 0; j < c; j++) S(dst, j) += f * S(src, j);
        for(std::size_t j = 0; j < r; j++) U(dst, j) += f * U(src, j);
    };
    auto addCol = [&](std::size_t dst, std::size_t src, const Integer& f) {
        for(std::size_t i = 0; i < r; i++) S(i, dst) += f * S(i, src);
        for(std::size_t i = 0; i < c; i++) V(i, dst) += f * V(i, src);
    };

    SmithDecomposition out;
    for(std::size_t t = 0; t < std::min(r, c); t++) {
        bool exhausted = false;
        while(true) {
            // pivot: smallest nonzero magnitude, first in row-major order
            std::size_t pi = r, pj = c;
            for(std::size_t i = t; i < r; i++)
                for(std::size_t j = t; j < c; j++)
                    if(S(i, j) != 0 && (pi == r || abs(S(i, j)) < abs(S(pi, pj)))) {
                        pi = i; pj = j;
                    }
            if(pi == r) { exhausted = true; break; }
            swapRows(t, pi);
            swapCols(t, pj);
            bool clean = true;
            for(std::size_t i = t + 1; i < r; i++)
                if(S(i, t) != 0) {
                    Integer q = S(i, t) / S(t, t);
                    addRow(i, t, -q);
                    if(S(i, t) != 0) clean = false;
                }
            for(std::size_t j = t + 1; j < c; j++)
                if(S(t, j) != 0) {
                    Integer q = S(t, j) / S(t, t);
                    addCol(j, t, -q);
                    if(S(t, j) != 0) clean = false;
                }
            if(!clean) continue;
            bool divisible = true;
            for(std::size_t i = t + 1; i < r && divisible; i++)
                for(std::size_t j = t + 1; j < c; j++)
                    if(S(i, j) % S(t, t) != 0) {
                        addRow(t, i, 1);
                        divisible = false;
                        break;
                    }
            if(divisible) break;
        }
        if(exhausted) break;
        if(S(t, t) < 0) {
            for(std::size_t j = 0; j < c; j++) S(t, j) = -S(t, j);
            for(std::size_t j = 0; j < r; j++) U(t, j) = -U(t, j);
        }
        out.diagonal.push_back(S(t, t));
    }
    out.U = std::move(U);
    out.V = std::move(V);
    return out;
}

ExactPairReport check_exact_pair(const IntegerMatrix& B, const IntegerMatrix& Q)
{
    const std::size_t n = B.rows(), d = B.cols();
    if(n > d)
        throw ShapeError("check_exact_pair: B is " + std::to_string(n) + "x" + std::to_string(d) +
            ", expected at most as many rows as columns");
    if(Q.rows() != d || Q.cols() != d - n)
        throw ShapeError("check_exact_pair: Q is " + std::to_string(Q.rows()) + "x" +
            std::to_string(Q.cols()) + ", expected " + std::to_string(d) + "x" + std::to_string(d - n));
    ExactPairReport rep;
    rep.BQ_zero = (B * Q).isZero();
    SmithDecomposition sq = smith_decomposition(Q);
    rep.rank_Q = sq.rank();
    rep.Q_full_rank = rep.rank_Q == d - n;
    rep.Q_saturated = std::all_of(sq.diagonal.begin(), sq.diagonal.end(),
        [](const Integer& v) { return v == 1; });
    SmithDecomposition sb = smith_decomposition(B);
    rep.smith_B = sb.diagonal;
    rep.B_surjective = sb.rank() == n && std::all_of(sb.diagonal.begin(), sb.diagonal.end(),
        [](const Integer& v) { return v == 1; });
    for(std::size_t j = 0; j < d; j++)
        if(gcd(B.column(j)) != 1)
            rep.nonprimitive_columns.push_back(j);
    return rep;
}

IntegerMatrix kernel_basis(const IntegerMatrix& B)
{
    const std::size_t n = B.rows(), d = B.cols();
    SmithDecomposition s = smith_decomposition(B);
    if(s.rank() != n)
        throw RankError("kernel_basis: B has rank " + std::to_string(s.rank()) +
            ", expected full row rank " + std::to_string(n));
    IntegerMatrix Q(d, d - n);
    for(std::size_t k = 0; k < d - n; k++) {
        std::size_t col = n + k;
        int sign = 0;
        for(std::size_t i = 0; i < d && sign == 0; i++)
            if(s.V(i, col) != 0) sign = s.V(i, col) > 0 ? 1 : -1;
        for(std::size_t i = 0; i < d; i++)
            Q(i, k) = sign * s.V(i, col);
    }
    return Q;
}

IntegerMatrix right_inverse(const IntegerMatrix& B)
{
    const std::size_t n = B.rows();
    SmithDecomposition s = smith_decomposition(B);
    if(s.rank() != n || !std::all_of(s.diagonal.begin(), s.diagonal.end(),
        [](const Integer& v) { return v == 1; }))
    {
        std::string diag;
        for(const Integer& v : s.diagonal) diag += (diag.empty() ? "" : ",") + v.str();
        throw NonSmoothError("right_inverse: B is not surjective over Z (Smith diagonal " + diag + ")");
    }
    // U B V = [I | 0]  =>  A = V [I ; 0] U
    std::vector<std::size_t> lead(n);
    for(std::size_t i = 0; i < n; i++) lead[i] = i;
    return s.V.selectColumns(lead) * s.U;
}

VertexInverse vertex_right_inverse(const IntegerMatrix& B, const std::vector<std::size_t>& Jv)
{
    const std::size_t n = B.rows(), d = B.cols();
    if(Jv.size() != n)
        throw ShapeError("vertex_right_inverse: index set has " + std::to_string(Jv.size()) +
            " entries, expected " + std::to_string(n));
    for(std::size_t j : Jv)
        if(j >= d)
            throw ShapeError("vertex_right_inverse: index " + std::to_string(j + 1) + " out of range");
    IntegerMatrix M = B.selectColumns(Jv);
    Integer det = M.determinant();
    if(abs(det) != 1) {
        std::string js;
        for(std::size_t j : Jv) js += (js.empty() ? "" : ",") + std::to_string(j + 1);
        throw NonSmoothError("vertex_right_inverse: normals {" + js + "} have |det| = " +
            Integer(abs(det)).str() + ", not a Delzant vertex");
    }
    VertexInverse out;
    out.P = M.inverseUnimodular();
    out.A = IntegerMatrix(d, n);
    for(std::size_t k = 0; k < n; k++)
        for(std::size_t m = 0; m < n; m++)
            out.A(Jv[k], m) = out.P(k, m);
    return out;
}

ToricPresentation make_presentation(const std::string& name, const IntegerMatrix& B,
    const std::optional<IntegerMatrix>& Q, const std::optional<IntegerMatrix>& A,
    const Eigen::VectorXd& kappa)
{
    const std::size_t n = B.rows(), d = B.cols();
    if(n == 0 || n > d)
        throw ShapeError("presentation '" + name + "': B must be n x d with 0 < n <= d");
    if(static_cast<std::size_t>(kappa.size()) != d)
        throw ShapeError("presentation '" + name + "': kappa has length " +
            std::to_string(kappa.size()) + ", expected " + std::to_string(d));
    ToricPresentation p;
    p.name = name;
    p.B = B;
    p.Q = Q ? *Q : kernel_basis(B);
    ExactPairReport rep = check_exact_pair(B, p.Q);
    if(!rep.nonprimitive_columns.empty())
        throw NonSmoothError("presentation '" + name + "': column " +
            std::to_string(rep.nonprimitive_columns.front() + 1) + " of B is not primitive");
    if(!rep.B_surjective)
        throw NonSmoothError("presentation '" + name + "': B is not surjective over Z");
    if(!rep.BQ_zero)
        throw ValidationError("presentation '" + name + "': B Q != 0");
    if(!rep.Q_full_rank)
        throw RankError("presentation '" + name + "': Q has rank " + std::to_string(rep.rank_Q) +
            ", expected " + std::to_string(d - n));
    if(!rep.Q_saturated)
        throw ValidationError("presentation '" + name + "': columns of Q span a proper sublattice of ker B");
    p.A = A ? *A : right_inverse(B);
    if(p.A.rows() != d || p.A.cols() != n)
        throw ShapeError("presentation '" + name + "': A must be " + std::to_string(d) + "x" + std::to_string(n));
    if(!(B * p.A).isIdentity())
        throw ValidationError("presentation '" + name + "': B A != I");
    p.kappa = kappa;
    p.a = -(p.Q.toDouble().transpose() * kappa);
    return p;
}

std::vector<std::size_t> default_anchor(const IntegerMatrix& B)
{
    std::vector<std::vector<std::size_t>> all;
    subsets(B.cols(), B.rows(), all);
    for(const auto& J : all)
        if(abs(B.selectColumns(J).determinant()) == 1)
            return J;
    throw NonSmoothError("default_anchor: no set of columns of B forms a Z-basis");
}

ToricPresentation extend_to_canonical(const ToricPresentation& pres,
    CanonicalConvention convention, const std::optional<std::vector<std::size_t>>& anchor)
{
    const std::size_t n = pres.n(), d = pres.d();
    IntegerMatrix onesD = onesRow(d), onesN = onesRow(n);
    IntegerMatrix Qplus = vstack(pres.Q, IntegerMatrix(1, d - n) - onesD * pres.Q);

    IntegerMatrix lastB, lastA;
    if(convention == CanonicalConvention::AllOnes) {
        lastB = onesD;
        lastA = IntegerMatrix(1, n) - onesD * pres.A;
    } else {
        std::vector<std::size_t> J = anchor ? *anchor : default_anchor(pres.B);
        IntegerMatrix P = vertex_right_inverse(pres.B, J).P;
        lastB = onesD - onesN * P * pres.B;
        lastA = onesN * P - onesD * pres.A;
    }
    IntegerMatrix one(1, 1);
    one(0, 0) = 1;
    IntegerMatrix Bplus = vstack(hstack(pres.B, IntegerMatrix(n, 1)), hstack(lastB, one));
    IntegerMatrix Aplus = vstack(hstack(pres.A, IntegerMatrix(d, 1)), hstack(lastA, one));
    Eigen::VectorXd kplus = Eigen::VectorXd::Zero(d + 1);
    kplus.head(d) = pres.kappa;
    ToricPresentation out = make_presentation("K_" + pres.name, Bplus, Qplus, Aplus, kplus);
    out.canonicalBundle = true;
    out.convention = convention;
    return out;
}

DelzantReport delzant_check(const IntegerMatrix& B, const std::vector<VertexRecord>& vertices)
{
    DelzantReport rep;
    for(const VertexRecord& v : vertices) {
        VertexDet vd;
        vd.active = v.active;
        vd.xi = v.xi;
        if(v.active.size() == B.rows()) {
            vd.det = B.selectColumns(v.active).determinant();
            vd.smooth = abs(vd.det) == 1;
        } else {
            rep.simple = false;
        }
        if(!vd.smooth) rep.smooth = false;
        rep.vertices.push_back(vd);
    }
    return rep;
}

}  // namespace lattice
}  // namespace toric
