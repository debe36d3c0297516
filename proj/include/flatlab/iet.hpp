#pragma once

#include "flatlab/errors.hpp"
#include "flatlab/numeric.hpp"
#include "flatlab/permutation.hpp"

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace flatlab {

// Square matrix of big integers.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0) {}
    static IntMatrix identity(int n);

    int size() const { return n_; }
    BigInt& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const BigInt& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    BigInt det() const;
    bool all_positive() const;
    bool nonnegative() const;
    // Short hex digest for logs.
    std::string digest() const;

private:
    int n_ = 0;
    std::vector<BigInt> a_;
};

template <class T>
class Iet {
public:
    Iet() = default;
    Iet(Permutation p, std::vector<T> lengths) : perm_(std::move(p)), len_(std::move(lengths))
    {
        if (static_cast<int>(len_.size()) != perm_.size() || perm_.size() < 1)
            throw Error(ErrorCode::ConfigError, "iet", "length vector size differs from permutation");
        for (const T& l : len_)
            if (!(l > 0)) throw Error(ErrorCode::ConfigError, "iet", "lengths must be positive");
        if (!perm_.irreducible())
            throw Error(ErrorCode::NonIrreducible, "iet", "permutation " + perm_.str() + " is reducible");
    }

    int size() const { return perm_.size(); }
    const Permutation& perm() const { return perm_; }
    const std::vector<T>& lengths() const { return len_; }
    const T& length(int label) const { return len_[label]; }
    T total() const
    {
        T s = 0;
        for (const T& l : len_) s += l;
        return s;
    }
    T domain_start(int label) const
    {
        T s = 0;
        for (int a : perm_.top) {
            if (a == label) break;
            s += len_[a];
        }
        return s;
    }
    T image_start(int label) const
    {
        T s = 0;
        for (int a : perm_.bottom) {
            if (a == label) break;
            s += len_[a];
        }
        return s;
    }
    // Label of the domain interval [start, start + length) containing x.
    int label_at(const T& x) const
    {
        T s = 0;
        for (int a : perm_.top) {
            s += len_[a];
            if (x < s) return a;
        }
        throw Error(ErrorCode::ConfigError, "iet", "point outside the interval");
    }
    T translation(int label) const { return T(image_start(label) - domain_start(label)); }
    T map(const T& x) const { return T(x + translation(label_at(x))); }

    // Rescale so that the total length is one.
    Iet normalized() const
    {
        T s = total();
        std::vector<T> l = len_;
        for (T& x : l) x = T(x / s);
        return Iet(perm_, std::move(l));
    }

    std::vector<T>& mutable_lengths() { return len_; }
    Permutation& mutable_perm() { return perm_; }

private:
    Permutation perm_;
    std::vector<T> len_;
};

using IetQ = Iet<Rational>;
using IetD = Iet<double>;

enum class RauzyType { Top, Bottom };
inline const char* rauzy_type_name(RauzyType t) { return t == RauzyType::Top ? "top" : "bottom"; }

template <class T>
struct RauzyResult {
    Iet<T> next;
    IntMatrix A;
    RauzyType type;
    int winner;
    int loser;
};

namespace detail {

inline int compare_lengths(const Rational& a, const Rational& b, const Rational&, double)
{
    return cmp(a, b);
}

inline int compare_lengths(double a, double b, double total, double tol)
{
    if (std::abs(a - b) <= tol * total) return 0;
    return a < b ? -1 : 1;
}

template <class T>
void move_after(std::vector<int>& row, int letter, int after)
{
    for (size_t k = 0; k < row.size(); ++k)
        if (row[k] == letter) {
            row.erase(row.begin() + static_cast<long>(k));
            break;
        }
    for (size_t k = 0; k < row.size(); ++k)
        if (row[k] == after) {
            row.insert(row.begin() + static_cast<long>(k) + 1, letter);
            return;
        }
}

}  // namespace detail

// One Rauzy-Veech step. The induced map lives on the interval obtained by
// removing the shorter of the two rightmost intervals (domain/image).
template <class T>
RauzyResult<T> rauzy_step(const Iet<T>& it, double tie_tol = 1e-12)
{
    Permutation p = it.perm();
    std::vector<T> l = it.lengths();
    int alpha = p.top.back(), beta = p.bottom.back();
    int c = detail::compare_lengths(l[alpha], l[beta], it.total(), tie_tol);
    if (c == 0)
        throw Error(ErrorCode::TieBreak, "iet", "competing intervals have equal length");
    int n = it.size();
    IntMatrix A = IntMatrix::identity(n);
    if (c > 0) {
        l[alpha] -= l[beta];
        detail::move_after<T>(p.bottom, beta, alpha);
        A(alpha, beta) = 1;
        return {Iet<T>(p, l), A, RauzyType::Top, alpha, beta};
    }
    l[beta] -= l[alpha];
    detail::move_after<T>(p.top, alpha, beta);
    A(beta, alpha) = 1;
    return {Iet<T>(p, l), A, RauzyType::Bottom, beta, alpha};
}

template <class T>
using CountOf = std::conditional_t<std::is_same_v<T, double>, double, BigInt>;

// Accelerated step: a maximal run of Rauzy steps of one type.
// B = I + sum_l counts[l] E(winner, l).
template <class T>
struct ZorichResult {
    Iet<T> next;
    RauzyType type;
    int winner;
    std::vector<CountOf<T>> counts;  // indexed by label
    CountOf<T> rauzy_steps;
    IntMatrix B() const;
};

template <class T>
IntMatrix ZorichResult<T>::B() const
{
    int n = next.size();
    IntMatrix m = IntMatrix::identity(n);
    for (int l = 0; l < n; ++l) {
        if constexpr (std::is_same_v<T, double>)
            m(winner, l) += BigInt(counts[l]);
        else
            m(winner, l) += counts[l];
    }
    return m;
}

template <class T>
ZorichResult<T> zorich_step(const Iet<T>& it, double tie_tol = 1e-12)
{
    using C = CountOf<T>;
    Permutation p = it.perm();
    std::vector<T> l = it.lengths();
    const int n = it.size();
    const T total = it.total();
    int c = detail::compare_lengths(l[p.top.back()], l[p.bottom.back()], total, tie_tol);
    if (c == 0)
        throw Error(ErrorCode::TieBreak, "iet", "competing intervals have equal length");
    RauzyType type = c > 0 ? RauzyType::Top : RauzyType::Bottom;
    std::vector<int>& win_row = (type == RauzyType::Top) ? p.top : p.bottom;
    std::vector<int>& lose_row = (type == RauzyType::Top) ? p.bottom : p.top;
    const int w = win_row.back();
    std::vector<C> counts(n, C(0));
    C steps = 0;
    bool first = true;
    for (;;) {
        int loser = lose_row.back();
        int cmpv = detail::compare_lengths(l[w], l[loser], total, tie_tol);
        if (cmpv == 0)
            throw Error(ErrorCode::TieBreak, "iet", "competing intervals have equal length");
        if (cmpv < 0) break;
        // Skip whole cycles through the letters following w in the losing row.
        if (!first) {
            size_t pw = 0;
            while (lose_row[pw] != w) ++pw;
            T S = 0;
            for (size_t k = pw + 1; k < lose_row.size(); ++k) S += l[lose_row[k]];
            C q;
            if constexpr (std::is_same_v<T, double>)
                q = std::floor(l[w] / S) - 1;
            else
                q = floor_div(Rational(l[w] / S)) - 1;
            if (q >= 1) {
                l[w] -= T(S * T(q));
                for (size_t k = pw + 1; k < lose_row.size(); ++k) counts[lose_row[k]] += q;
                steps += q * C(static_cast<long>(lose_row.size() - pw - 1));
                continue;
            }
        }
        first = false;
        l[w] -= l[loser];
        counts[loser] += 1;
        steps += 1;
        detail::move_after<T>(lose_row, loser, w);
    }
    return {Iet<T>(p, l), type, w, std::move(counts), steps};
}

// Teichmueller return time for the zippered-rectangle base of total length 1.
double teich_time(const Rational& old_total, const Rational& new_total);

}  // namespace flatlab
