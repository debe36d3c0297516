#include "flatlab/iet.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace flatlab {

Permutation::Permutation(std::vector<int> t, std::vector<int> b) : top(std::move(t)), bottom(std::move(b))
{
    int n = size();
    if (static_cast<int>(bottom.size()) != n)
        throw Error(ErrorCode::ConfigError, "iet", "rows of different length");
    std::vector<int> st(top), sb(bottom);
    std::sort(st.begin(), st.end());
    std::sort(sb.begin(), sb.end());
    for (int k = 0; k < n; ++k)
        if (st[k] != k || sb[k] != k)
            throw Error(ErrorCode::ConfigError, "iet", "rows are not permutations of 0..n-1");
}

int Permutation::top_pos(int label) const
{
    return static_cast<int>(std::find(top.begin(), top.end(), label) - top.begin());
}

int Permutation::bottom_pos(int label) const
{
    return static_cast<int>(std::find(bottom.begin(), bottom.end(), label) - bottom.begin());
}

bool Permutation::irreducible() const
{
    int n = size();
    if (n == 1) return true;
    std::vector<int> seen(n, 0);
    int both = 0;
    for (int k = 0; k + 1 < n; ++k) {
        if (++seen[top[k]] == 2) ++both;
        if (++seen[bottom[k]] == 2) ++both;
        if (both == k + 1) return false;
    }
    return true;
}

std::vector<int> Permutation::one_line() const
{
    std::vector<int> pi;
    for (int label : bottom) pi.push_back(top_pos(label));
    return pi;
}

std::string Permutation::str() const
{
    std::ostringstream os;
    for (size_t k = 0; k < top.size(); ++k) os << (k ? " " : "") << top[k];
    os << " /";
    for (int b : bottom) os << " " << b;
    return os.str();
}

Permutation Permutation::symmetric(int n)
{
    std::vector<int> t(n), b(n);
    for (int k = 0; k < n; ++k) {
        t[k] = k;
        b[k] = n - 1 - k;
    }
    return Permutation(t, b);
}

Permutation Permutation::from_bottom(std::vector<int> bottom)
{
    std::vector<int> t(bottom.size());
    for (size_t k = 0; k < t.size(); ++k) t[k] = static_cast<int>(k);
    return Permutation(t, std::move(bottom));
}

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    IntMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const BigInt& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

BigInt IntMatrix::det() const
{
    // Fraction-free Bareiss elimination.
    std::vector<BigInt> m = a_;
    int n = n_;
    auto at = [&](int i, int j) -> BigInt& { return m[static_cast<size_t>(i) * n + j]; };
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int r = k + 1;
            while (r < n && at(r, k) == 0) ++r;
            if (r == n) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = v;
            }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

bool IntMatrix::all_positive() const
{
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x > 0; });
}

bool IntMatrix::nonnegative() const
{
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x >= 0; });
}

std::string IntMatrix::digest() const
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const BigInt& x : a_) {
        for (char c : x.get_str(16)) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        h ^= ',';
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double teich_time(const Rational& old_total, const Rational& new_total)
{
    return std::log(to_double(old_total)) - std::log(to_double(new_total));
}

}  // namespace flatlab
