#include "flatlab/homology.hpp"

#include "flatlab/errors.hpp"

#include <algorithm>
#include <limits>

namespace flatlab {

namespace {

// Orientation convention: makes <horizontal, vertical> = +1 on a torus.
constexpr int kSign = -1;

int nx(int i) { return (i + 1) % 3; }

void add_edge(const Triangulation& t, IntVec& chain, int tri, int side, int mult)
{
    chain[t.edge_id(tri, side)] += mult * t.edge_sign(tri, side);
}

}  // namespace

IntVec loop_chain(const Triangulation& t, const CrossingLoop& loop)
{
    IntVec chain(t.num_edges(), 0);
    const auto& cr = loop.crossings;
    const size_t N = cr.size();
    if (N == 0) return chain;
    if (cr[0].tri != loop.start_tri) throw Error(ErrorCode::InvalidSurface, "homology", "loop does not start in its triangle");
    for (size_t k = 0; k < N; ++k) {
        HalfEdge in = t.opposite(cr[k]);
        const HalfEdge& out = cr[(k + 1) % N];
        if (out.tri != in.tri) throw Error(ErrorCode::InvalidSurface, "homology", "crossing sequence is not a loop");
        const int from = nx(in.side);
        const int to = out.side;
        if (to == from) continue;
        if (to == nx(from)) add_edge(t, chain, in.tri, from, 1);
        else add_edge(t, chain, in.tri, to, -1);
    }
    return chain;
}

IntVec loop_cochain(const Triangulation& t, const CrossingLoop& loop)
{
    IntVec co(t.num_edges(), 0);
    for (const HalfEdge& h : loop.crossings) co[t.edge_id(h.tri, h.side)] += t.edge_sign(h.tri, h.side);
    return co;
}

Vec2 chain_holonomy(const Triangulation& t, const IntVec& chain)
{
    Vec2 s(0, 0);
    for (int e = 0; e < t.num_edges(); ++e) {
        if (chain[e] == 0) continue;
        s += t.edge(t.edge_rep(e)) * Rational(chain[e]);
    }
    return s;
}

BigInt intersection(const IntVec& a, const IntVec& b)
{
    const size_t g = a.size() / 2;
    BigInt s = 0;
    for (size_t i = 0; i < g; ++i) s += a[i] * b[g + i] - a[g + i] * b[i];
    return s;
}

std::vector<IntVec> gram_matrix(const std::vector<IntVec>& v)
{
    std::vector<IntVec> g(v.size(), IntVec(v.size()));
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) g[i][j] = intersection(v[i], v[j]);
    return g;
}

CycleModel::CycleModel(const TranslationSurface& s, const Transversal& X) : fr_(flatlab::first_return(s, X))
{
    build();
}

CycleModel::CycleModel(FirstReturn fr) : fr_(std::move(fr))
{
    build();
}

IntVec CycleModel::intersections(const IntVec& chain) const
{
    IntVec out(size());
    for (int k = 0; k < size(); ++k) out[k] = kSign * dot(chain, cochains_[k]);
    return out;
}

IntVec CycleModel::coordinates(const IntVec& chain) const
{
    RatVec y = solve_combination(basis_pairings_, intersections(chain));
    IntVec out;
    for (const auto& v : y) {
        if (v.get_den() != 1) throw Error(ErrorCode::BasisConstructionFailed, "homology", "non-integral class");
        out.push_back(v.get_num());
    }
    return out;
}

void CycleModel::build()
{
    const Triangulation& t = fr_.tri;
    const int n = size();
    genus_ = (2 - t.euler_characteristic()) / 2;
    for (const auto& loop : fr_.loops) {
        chains_.push_back(loop_chain(t, loop));
        cochains_.push_back(loop_cochain(t, loop));
    }
    omega_.assign(n, IntVec(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) omega_[j][k] = kSign * dot(chains_[j], cochains_[k]);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (omega_[j][k] != -omega_[k][j])
                throw Error(ErrorCode::BasisConstructionFailed, "homology", "intersection matrix is not antisymmetric");

    // Rows [omega_j | e_j]: reduction yields a basis of the class lattice with
    // the loop coefficients that realize it.
    std::vector<IntVec> aug;
    for (int j = 0; j < n; ++j) {
        IntVec r(2 * n, 0);
        for (int k = 0; k < n; ++k) r[k] = omega_[j][k];
        r[n + j] = 1;
        aug.push_back(r);
    }
    std::vector<IntVec> red = lattice_basis(aug);
    std::vector<IntVec> coeffs;
    for (const auto& r : red) {
        bool nonzero = false;
        for (int k = 0; k < n; ++k) nonzero = nonzero || r[k] != 0;
        if (nonzero) coeffs.emplace_back(r.begin() + n, r.end());
    }
    if (static_cast<int>(coeffs.size()) != 2 * genus_)
        throw Error(ErrorCode::BasisConstructionFailed, "homology", "first-return cycles do not span homology");
    const int d = 2 * genus_;
    auto pair_coeffs = [&](const IntVec& x, const IntVec& y) {
        BigInt s = 0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s += x[j] * omega_[j][k] * y[k];
        return s;
    };
    std::vector<IntVec> gram(d, IntVec(d));
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l) gram[i][l] = pair_coeffs(coeffs[i], coeffs[l]);
    std::vector<IntVec> U = symplectic_reduction(gram);
    basis_.assign(d, IntVec(n, 0));
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l)
            if (U[i][l] != 0)
                for (int j = 0; j < n; ++j) basis_[i][j] += U[i][l] * coeffs[l][j];
    basis_pairings_.assign(d, IntVec(n, 0));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) basis_pairings_[i][k] += basis_[i][j] * omega_[j][k];
    cycles_.clear();
    for (int j = 0; j < n; ++j) {
        RatVec y = solve_combination(basis_pairings_, omega_[j]);
        IntVec c;
        for (const auto& v : y) {
            if (v.get_den() != 1) throw Error(ErrorCode::BasisConstructionFailed, "homology", "non-integral cycle");
            c.push_back(v.get_num());
        }
        cycles_.push_back(c);
    }
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (intersection(cycles_[j], cycles_[k]) != omega_[j][k])
                throw Error(ErrorCode::BasisConstructionFailed, "homology", "basis is not symplectic");
    std::vector<Vec2> hol;
    for (const auto& c : chains_) hol.push_back(chain_holonomy(t, c));
    basis_periods_.assign(d, Vec2(0, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j)
            if (basis_[i][j] != 0) basis_periods_[i] += hol[j] * Rational(basis_[i][j]);
}

std::vector<IntVec> first_return_cycles(const TranslationSurface& s, const Transversal& X)
{
    return CycleModel(s, X).cycles();
}

namespace {

template <class I>
struct Orbit {
    std::vector<I> starts;   // domain starts in top order
    std::vector<int> labels; // label per top position
    std::vector<I> shift;    // translation per label

    int label_at(const I& x) const
    {
        auto it = std::upper_bound(starts.begin(), starts.end(), x);
        return labels[static_cast<size_t>(it - starts.begin()) - 1];
    }
    bool is_cut(const I& x) const { return std::binary_search(starts.begin(), starts.end(), x); }
};

template <class I>
I convert(const BigInt& v)
{
    if constexpr (std::is_same_v<I, BigInt>)
        return v;
    else
        return static_cast<I>(v.get_si());
}

template <class I>
std::vector<std::vector<BigInt>> run_orbit(const IetQ& T, const BigInt& D, const BigInt& x0,
                                          const std::vector<long>& checkpoints, BigInt& end)
{
    const int n = T.size();
    Orbit<I> o;
    for (int k = 0; k < n; ++k) {
        int a = T.perm().top[k];
        o.starts.push_back(convert<I>(BigInt(T.domain_start(a) * D)));
        o.labels.push_back(a);
    }
    o.shift.resize(n);
    for (int a = 0; a < n; ++a) o.shift[a] = convert<I>(BigInt(T.translation(a) * D));
    I x = convert<I>(x0);
    std::vector<long> counts(n, 0);
    std::vector<std::vector<BigInt>> out;
    long step = 0;
    for (long target : checkpoints) {
        for (; step < target; ++step) {
            if (o.is_cut(x)) throw Error(ErrorCode::SeparatrixHit, "homology", "orbit meets an interval endpoint");
            int a = o.label_at(x);
            ++counts[a];
            x += o.shift[a];
        }
        std::vector<BigInt> c;
        for (long v : counts) c.emplace_back(v);
        out.push_back(c);
    }
    if constexpr (std::is_same_v<I, BigInt>)
        end = x;
    else
        end = BigInt(static_cast<long>(x));
    return out;
}

}  // namespace

std::vector<IntVec> ergodic_checkpoints(const CycleModel& m, const Rational& x0, const std::vector<long>& checkpoints)
{
    const IetQ& T = m.first_return().iet;
    if (x0 < 0 || x0 >= T.total()) throw Error(ErrorCode::ConfigError, "homology", "starting point outside X");
    BigInt D = x0.get_den();
    for (const auto& l : T.lengths()) D = lcm(D, BigInt(l.get_den()));
    BigInt X0 = BigInt(x0 * D), end;
    BigInt top = BigInt(T.total() * D);
    std::vector<std::vector<BigInt>> visits;
    if (top < BigInt(std::numeric_limits<long>::max() / 4))
        visits = run_orbit<long>(T, D, X0, checkpoints, end);
    else
        visits = run_orbit<BigInt>(T, D, X0, checkpoints, end);
    std::vector<IntVec> out;
    const int d = 2 * m.genus();
    for (const auto& v : visits) {
        IntVec c(d, 0);
        for (int a = 0; a < m.size(); ++a)
            if (v[a] != 0)
                for (int i = 0; i < d; ++i) c[i] += v[a] * m.cycles()[a][i];
        out.push_back(c);
    }
    return out;
}

ErgodicSum ergodic_cycle(const CycleModel& m, const Rational& x0, long N)
{
    const IetQ& T = m.first_return().iet;
    if (x0 < 0 || x0 >= T.total()) throw Error(ErrorCode::ConfigError, "homology", "starting point outside X");
    BigInt D = x0.get_den();
    for (const auto& l : T.lengths()) D = lcm(D, BigInt(l.get_den()));
    BigInt X0 = BigInt(x0 * D), end;
    BigInt top = BigInt(T.total() * D);
    std::vector<std::vector<BigInt>> visits;
    if (top < BigInt(std::numeric_limits<long>::max() / 4))
        visits = run_orbit<long>(T, D, X0, {N}, end);
    else
        visits = run_orbit<BigInt>(T, D, X0, {N}, end);
    ErgodicSum r;
    r.visits = visits[0];
    const int d = 2 * m.genus();
    r.cycle.assign(d, 0);
    for (int a = 0; a < m.size(); ++a)
        for (int i = 0; i < d; ++i) r.cycle[i] += r.visits[a] * m.cycles()[a][i];
    r.end_point = Rational(end) / Rational(D);
    r.end_point.canonicalize();
    return r;
}

Rational generic_point(const CycleModel& m, int k)
{
    const long q = 1000003;
    long p = (500001 + 2L * 7919L * k) % q;
    if (p % 2 == 0) p += 1;
    return m.first_return().iet.total() * frac(p, q);
}

std::vector<double> asymptotic_cycle(const CycleModel& m, long N, std::optional<Rational> x0)
{
    Rational start = x0 ? *x0 : generic_point(m);
    ErgodicSum e = ergodic_cycle(m, start, N);
    double L = to_double(m.first_return().iet.total());
    std::vector<double> out;
    for (const auto& v : e.cycle) out.push_back(L * v.get_d() / static_cast<double>(N));
    return out;
}

RatVec dual_of_re_omega(const CycleModel& m)
{
    const int g = m.genus();
    const auto& per = m.basis_periods();
    RatVec c(2 * g);
    for (int i = 0; i < g; ++i) {
        c[g + i] = per[i].x;      // <a_i, c> = c_{b_i}
        c[i] = -per[g + i].x;     // <b_i, c> = -c_{a_i}
    }
    return c;
}

}  // namespace flatlab
