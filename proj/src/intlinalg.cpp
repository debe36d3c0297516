#include "flatlab/intlinalg.hpp"

#include "flatlab/errors.hpp"

#include <algorithm>

namespace flatlab {

BigInt dot(const IntVec& a, const IntVec& b)
{
    BigInt s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<IntVec> lattice_basis(std::vector<IntVec> v)
{
    std::vector<IntVec> out;
    if (v.empty()) return out;
    const size_t dim = v[0].size();
    size_t row = 0;
    for (size_t col = 0; col < dim && row < v.size(); ++col) {
        // Euclid on column col among rows >= row.
        for (;;) {
            size_t piv = v.size();
            for (size_t r = row; r < v.size(); ++r)
                if (v[r][col] != 0 && (piv == v.size() || abs(v[r][col]) < abs(v[piv][col]))) piv = r;
            if (piv == v.size()) break;
            std::swap(v[row], v[piv]);
            bool reduced = true;
            for (size_t r = row + 1; r < v.size(); ++r) {
                if (v[r][col] == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), v[r][col].get_mpz_t(), v[row][col].get_mpz_t());
                for (size_t c = col; c < dim; ++c) v[r][c] -= q * v[row][c];
                if (v[r][col] != 0) reduced = false;
            }
            if (reduced) {
                ++row;
                break;
            }
        }
    }
    for (size_t r = 0; r < row; ++r) out.push_back(v[r]);
    return out;
}

int rank_of(const std::vector<IntVec>& vectors)
{
    return static_cast<int>(lattice_basis(vectors).size());
}

RatVec solve_combination(const std::vector<RatVec>& rows, const RatVec& target)
{
    // Gaussian elimination on the transposed system.
    const size_t k = rows.size();
    const size_t dim = target.size();
    std::vector<RatVec> m(dim, RatVec(k + 1));
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < k; ++j) m[i][j] = rows[j][i];
        m[i][k] = target[i];
    }
    std::vector<int> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < k && r < dim; ++c) {
        size_t p = r;
        while (p < dim && m[p][c] == 0) ++p;
        if (p == dim) continue;
        std::swap(m[p], m[r]);
        for (size_t i = 0; i < dim; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t j = c; j <= k; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (size_t i = r; i < dim; ++i)
        if (m[i][k] != 0) throw Error(ErrorCode::SingularIntersectionForm, "homology", "system has no solution");
    RatVec x(k, 0);
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = m[i][k] / m[i][pivot_col[i]];
    return x;
}

RatVec solve_combination(const std::vector<IntVec>& rows, const IntVec& target)
{
    std::vector<RatVec> r;
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    return solve_combination(r, RatVec(target.begin(), target.end()));
}

BigInt pairing(const std::vector<IntVec>& gram, const IntVec& a, const IntVec& b)
{
    BigInt s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) s += a[i] * gram[i][j] * b[j];
    }
    return s;
}

namespace {

// x, y with a x + b y = gcd(a, b) >= 0.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y)
{
    BigInt g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace

std::vector<IntVec> symplectic_reduction(const std::vector<IntVec>& gram)
{
    const size_t dim = gram.size();
    if (dim % 2 != 0) throw Error(ErrorCode::SingularIntersectionForm, "homology", "odd dimension");
    std::vector<IntVec> pool;
    for (size_t i = 0; i < dim; ++i) {
        IntVec e(dim, 0);
        e[i] = 1;
        pool.push_back(e);
    }
    std::vector<IntVec> as, bs;
    while (!pool.empty()) {
        IntVec e = pool[0];
        // f = sum u_k pool[k] with <e, f> = gcd of pairings.
        IntVec f(dim, 0);
        BigInt g = 0;
        for (size_t k = 1; k < pool.size(); ++k) {
            BigInt p = pairing(gram, e, pool[k]);
            if (p == 0) continue;
            BigInt x, y;
            BigInt ng = ext_gcd(g, p, x, y);
            for (size_t i = 0; i < dim; ++i) f[i] = x * f[i] + y * pool[k][i];
            g = ng;
        }
        if (g != 1) throw Error(ErrorCode::SingularIntersectionForm, "homology", "intersection form is not unimodular");
        std::vector<IntVec> rest;
        for (size_t k = 1; k < pool.size(); ++k) {
            const IntVec& w = pool[k];
            BigInt we = pairing(gram, w, e), wf = pairing(gram, w, f);
            IntVec p(dim);
            for (size_t i = 0; i < dim; ++i) p[i] = w[i] - wf * e[i] + we * f[i];
            rest.push_back(p);
        }
        as.push_back(e);
        bs.push_back(f);
        pool = lattice_basis(rest);
        if (pool.size() % 2 != 0) throw Error(ErrorCode::SingularIntersectionForm, "homology", "reduction lost rank");
    }
    std::vector<IntVec> out = as;
    out.insert(out.end(), bs.begin(), bs.end());
    return out;
}

}  // namespace flatlab
