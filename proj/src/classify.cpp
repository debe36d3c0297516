#include "flatlab/classify.hpp"

#include "flatlab/errors.hpp"
#include "flatlab/homology.hpp"
#include "flatlab/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

namespace flatlab {

namespace {

constexpr double kTurnTol = 1e-7;

int mod2(const BigInt& v)
{
    BigInt r = v % 2;
    return r == 0 ? 0 : 1;
}

}  // namespace

int loop_index(const FlatLoop& loop, const Stratum& ambient)
{
    if (!ambient.all_even()) throw Error(ErrorCode::OddDegreePresent, "classify", "loop index needs even zero degrees");
    const size_t n = loop.segments.size();
    if (n == 0 || loop.turns.size() != n)
        throw Error(ErrorCode::NonSmoothableLoop, "classify", "loop needs one turn per segment");
    const double two_pi = 2 * std::numbers::pi;
    double total = 0;
    for (size_t k = 0; k < n; ++k) {
        const Vec2d& a = loop.segments[k];
        const Vec2d& b = loop.segments[(k + 1) % n];
        if (dot(a, a) == 0) throw Error(ErrorCode::NonSmoothableLoop, "classify", "zero-length segment");
        // The turn must agree with the change of direction modulo 2 pi.
        double change = std::atan2(cross(a, b), dot(a, b));
        double r = (loop.turns[k] - change) / two_pi;
        if (std::abs(r - std::round(r)) > kTurnTol)
            throw Error(ErrorCode::NonSmoothableLoop, "classify", "turn disagrees with the segment directions");
        total += loop.turns[k];
    }
    double q = total / two_pi;
    long w = std::lround(q);
    if (std::abs(q - w) > kTurnTol) throw Error(ErrorCode::NonSmoothableLoop, "classify", "total turning is not a multiple of 2 pi");
    return static_cast<int>(((w % 2) + 2) % 2);
}

FlatLoop first_return_flat_loop(const CycleModel& m, int j)
{
    const FirstReturn& fr = m.first_return();
    const double h = to_double(fr.heights[j]);
    const double back = -to_double(fr.iet.translation(j));
    const double q = std::numbers::pi / 2;
    FlatLoop loop;
    loop.segments = {{0.0, h}, {back, 0.0}};
    // Up then west turns left; up then east turns right.
    loop.turns = back < 0 ? std::vector<double>{q, -q} : std::vector<double>{-q, q};
    return loop;
}

int spin_form(const CycleModel& m, const std::vector<int>& loop_form, const std::vector<BigInt>& coeffs)
{
    const auto& om = m.omega();
    const int n = static_cast<int>(coeffs.size());
    BigInt s = 0;
    for (int j = 0; j < n; ++j) {
        if (mod2(coeffs[j]) == 0) continue;
        s += loop_form[j];
        for (int k = j + 1; k < n; ++k)
            if (mod2(coeffs[k]) != 0) s += om[j][k];
    }
    return mod2(s);
}

namespace {

int arf(const CycleModel& m, const std::vector<int>& form, const std::vector<IntVec>& basis_loops)
{
    const int g = static_cast<int>(basis_loops.size() / 2);
    int phi = 0;
    for (int i = 0; i < g; ++i) phi += spin_form(m, form, basis_loops[i]) * spin_form(m, form, basis_loops[g + i]);
    return phi % 2;
}

// Loop coefficients of a class given in symplectic coordinates.
IntVec to_loops(const CycleModel& m, const IntVec& x)
{
    IntVec out(m.size(), 0);
    for (size_t k = 0; k < x.size(); ++k)
        for (int j = 0; j < m.size(); ++j) out[j] += x[k] * m.basis()[k][j];
    return out;
}

}  // namespace

SpinReport spin_report(const CycleModel& m, const Stratum& ambient, int extra_bases, std::uint64_t seed)
{
    if (!ambient.all_even()) throw Error(ErrorCode::OddDegreePresent, "classify", "spin parity needs even zero degrees");
    std::vector<int> form(m.size());
    for (int j = 0; j < m.size(); ++j) form[j] = (loop_index(first_return_flat_loop(m, j), ambient) + 1) % 2;

    const int g = m.genus();
    SpinReport rep;
    rep.per_basis.push_back(arf(m, form, m.basis()));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int b = 0; b < extra_bases; ++b) {
        // Random symplectic change: a product of transvections x -> x + <x,v> v.
        std::vector<IntVec> e(2 * g, IntVec(2 * g, 0));
        for (int i = 0; i < 2 * g; ++i) e[i][i] = 1;
        for (int step = 0; step < 4 * g; ++step) {
            IntVec v(2 * g);
            for (auto& c : v) c = coef(rng);
            for (auto& x : e) {
                BigInt p = intersection(x, v);
                for (int i = 0; i < 2 * g; ++i) x[i] += p * v[i];
            }
        }
        for (int i = 0; i < 2 * g; ++i)
            for (int k = 0; k < 2 * g; ++k) {
                BigInt want = (k == g + i) ? 1 : (i == g + k ? -1 : 0);
                if (intersection(e[i], e[k]) != want)
                    throw Error(ErrorCode::BasisConstructionFailed, "classify", "base change is not symplectic");
            }
        std::vector<IntVec> loops;
        for (const auto& x : e) loops.push_back(to_loops(m, x));
        rep.per_basis.push_back(arf(m, form, loops));
    }
    for (int p : rep.per_basis)
        if (p != rep.per_basis.front())
            throw Error(ErrorCode::BasisConstructionFailed, "classify", "spin parity depends on the basis");
    rep.parity = rep.per_basis.front() == 0 ? Parity::Even : Parity::Odd;
    return rep;
}

SpinReport spin_report(const TranslationSurface& s, int extra_bases, std::uint64_t seed)
{
    if (!s.stratum().all_even()) throw Error(ErrorCode::OddDegreePresent, "classify", "spin parity needs even zero degrees");
    CycleModel m(s, canonical_transversal(s));
    return spin_report(m, s.stratum(), extra_bases, seed);
}

Parity spin_parity(const TranslationSurface& s) { return spin_report(s, 3, 1).parity; }

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
    }
}

namespace {

// Triangle map t -> (image, rotation): corner i goes to corner i + rot.
struct TriMap {
    std::vector<int> image;
    std::vector<int> rot;
};

bool extend_isometry(const Triangulation& t, int t0, int img, int r, TriMap& f)
{
    const int nt = t.num_triangles();
    f.image.assign(nt, -1);
    f.rot.assign(nt, 0);
    std::vector<char> used(nt, 0);
    std::queue<int> q;
    f.image[t0] = img;
    f.rot[t0] = r;
    used[img] = 1;
    q.push(t0);
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        const int b = f.image[a], ra = f.rot[a];
        for (int i = 0; i < 3; ++i) {
            if (t.edge(b, (i + ra) % 3) != -t.edge(a, i)) return false;
            HalfEdge o = t.opposite(a, i);
            HalfEdge oi = t.opposite(b, (i + ra) % 3);
            const int rr = ((oi.side - o.side) % 3 + 3) % 3;
            if (f.image[o.tri] < 0) {
                if (used[oi.tri]) return false;
                f.image[o.tri] = oi.tri;
                f.rot[o.tri] = rr;
                used[oi.tri] = 1;
                q.push(o.tri);
            } else if (f.image[o.tri] != oi.tri || f.rot[o.tri] != rr) {
                return false;
            }
        }
    }
    return std::all_of(f.image.begin(), f.image.end(), [](int x) { return x >= 0; });
}

struct InvolutionCheck {
    bool involution = false;
    int fixed = 0;
    bool swaps = false;
};

InvolutionCheck inspect(const Triangulation& t, const TriMap& f)
{
    InvolutionCheck c;
    const int nt = t.num_triangles();
    for (int a = 0; a < nt; ++a) {
        int b = f.image[a];
        if (f.image[b] != a || (f.rot[a] + f.rot[b]) % 3 != 0) return c;
    }
    c.involution = true;
    std::vector<int> vimg(t.num_vertices(), -1);
    for (int a = 0; a < nt; ++a)
        for (int i = 0; i < 3; ++i) vimg[t.vertex_of(a, i)] = t.vertex_of(f.image[a], (i + f.rot[a]) % 3);
    for (int v = 0; v < t.num_vertices(); ++v) c.fixed += vimg[v] == v;
    for (int e = 0; e < t.num_edges(); ++e) {
        HalfEdge h = t.edge_rep(e);
        HalfEdge im{f.image[h.tri], (h.side + f.rot[h.tri]) % 3};
        if (t.opposite(h) == im) ++c.fixed;
    }
    std::vector<int> zeros;
    for (int v = 0; v < t.num_vertices(); ++v)
        if (t.angle_multiple(v) > 1) zeros.push_back(v);
    c.swaps = zeros.size() == 2 && vimg[zeros[0]] == zeros[1];
    return c;
}

// Cyclic list of outgoing saddle connections at each vertex.
std::vector<std::vector<Vec2>> stars(const TranslationSurface& s, double radius, const CountOptions& opt)
{
    auto list = saddle_connections(s, radius, opt);
    std::vector<std::vector<const SaddleConnection*>> by(s.num_vertices());
    for (const auto& sc : list) by[sc.start].push_back(&sc);
    std::vector<std::vector<Vec2>> out(s.num_vertices());
    const Vec2 east(1, 0);
    for (int v = 0; v < s.num_vertices(); ++v) {
        auto& l = by[v];
        std::sort(l.begin(), l.end(), [&](const SaddleConnection* a, const SaddleConnection* b) {
            if (a->start_sheet != b->start_sheet) return a->start_sheet < b->start_sheet;
            return angle_cmp_from(east, a->holonomy, b->holonomy) < 0;
        });
        for (const auto* sc : l) out[v].push_back(sc->holonomy);
    }
    return out;
}

bool cyclic_match(const std::vector<Vec2>& a, const std::vector<Vec2>& b)
{
    if (a.size() != b.size()) return false;
    const size_t n = a.size();
    if (n == 0) return true;
    for (size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (size_t k = 0; k < n && ok; ++k) ok = a[(k + shift) % n] == -b[k];
        if (ok) return true;
    }
    return false;
}

}  // namespace

HyperellipticReport is_hyperelliptic(const TranslationSurface& s, long budget)
{
    HyperellipticReport rep;
    if (s.backend() != Backend::Exact)
        throw Error(ErrorCode::BackendMismatch, "classify", "hyperellipticity test needs the exact backend");
    Triangulation t = s.triangulation();
    try {
        t.make_delaunay(static_cast<int>(std::min<long>(budget, 1000000000L)));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        rep.certificate = "Delaunay flip budget exhausted";
        return rep;
    }
    bool unique = true;
    for (int a = 0; a < t.num_triangles(); ++a)
        for (int i = 0; i < 3; ++i) unique = unique && t.incircle_sign(a, i) < 0;

    const int need = 2 * s.genus() + 2;
    bool any_isometry = false;
    for (int img = 0; img < t.num_triangles(); ++img)
        for (int r = 0; r < 3; ++r) {
            TriMap f;
            if (!extend_isometry(t, 0, img, r, f)) continue;
            any_isometry = true;
            InvolutionCheck c = inspect(t, f);
            if (!c.involution || c.fixed != need) continue;
            rep.verdict = Verdict::Yes;
            rep.fixed_points = c.fixed;
            rep.swaps_zeros = c.swaps;
            std::ostringstream os;
            os << "-Id involution of the Delaunay triangulation (triangle 0 -> " << img << ", rotation " << r
               << "), " << c.fixed << " fixed points, quotient Euler characteristic "
               << (t.euler_characteristic() + c.fixed) / 2;
            rep.certificate = os.str();
            return rep;
        }
    if (unique) {
        rep.verdict = Verdict::No;
        rep.certificate = any_isometry ? "the -Id isometries of the unique Delaunay triangulation are not hyperelliptic"
                                       : "the unique Delaunay triangulation has no -Id isometry";
        return rep;
    }
    // Degenerate Delaunay cells: compare vertex stars of saddle connections.
    double longest = 0;
    for (int a = 0; a < t.num_triangles(); ++a)
        for (int i = 0; i < 3; ++i) longest = std::max(longest, std::sqrt(to_double(dot(t.edge(a, i), t.edge(a, i)))));
    longest *= std::sqrt(to_double(s.length_scale_sq()));
    try {
        CountOptions opt;
        opt.budget = budget;
        auto st = stars(s, 2 * longest, opt);
        for (int p = 0; p < s.num_vertices(); ++p) {
            bool matched = false;
            for (int q = 0; q < s.num_vertices() && !matched; ++q)
                matched = s.angle_multiple(q) == s.angle_multiple(p) && cyclic_match(st[q], st[p]);
            if (!matched) {
                rep.verdict = Verdict::No;
                rep.certificate = "the saddle connection star of vertex " + std::to_string(p) +
                                  " has no centrally symmetric partner";
                return rep;
            }
        }
        rep.certificate = "no certificate within the search radius";
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        rep.certificate = "saddle connection budget exhausted";
    }
    return rep;
}

std::string ComponentLabel::name() const
{
    std::string base = stratum.name();
    if (tag == "connected") {
        if (stratum.genus() == 2) return base + " connected (hyperelliptic)";
        return base + " connected";
    }
    if (tag == "hyperelliptic") return base + " hyperelliptic";
    if (tag == "even-spin") return base + " even";
    if (tag == "odd-spin") return base + " odd";
    return base + " " + tag;
}

namespace {

enum class Family { Connected, Spin, HypSpin, HypPair, HypOdd };

Family family_of(const Stratum& st)
{
    const int g = st.genus();
    const auto& d = st.degrees;
    if (g <= 2) return Family::Connected;
    const bool single = d.size() == 1;
    const bool pair = d.size() == 2 && d[0] == d[1];
    if (g == 3) {
        if ((single && d[0] == 4) || (pair && d[0] == 2)) return Family::HypOdd;
        return Family::Connected;
    }
    if ((single || pair) && d[0] % 2 == 0) return Family::HypSpin;
    if (pair) return Family::HypPair;
    if (st.all_even()) return Family::Spin;
    return Family::Connected;
}

}  // namespace

std::vector<std::string> allowed_tags(const Stratum& s)
{
    switch (family_of(s.without_marked())) {
    case Family::Connected: return {"connected"};
    case Family::Spin: return {"even-spin", "odd-spin"};
    case Family::HypSpin: return {"hyperelliptic", "even-spin", "odd-spin"};
    case Family::HypPair: return {"hyperelliptic", "nonhyperelliptic"};
    case Family::HypOdd: return {"hyperelliptic", "odd-spin"};
    }
    return {};
}

ComponentLabel component_label(const TranslationSurface& s)
{
    const Stratum st = s.stratum().without_marked();
    ComponentLabel label{st, "connected"};
    const Family fam = family_of(st);
    if (fam == Family::Connected) return label;

    auto spin_tag = [&] {
        return spin_parity(s) == Parity::Even ? std::string("even-spin") : std::string("odd-spin");
    };
    if (fam == Family::Spin) {
        label.tag = spin_tag();
        return label;
    }
    HyperellipticReport h = is_hyperelliptic(s);
    if (h.verdict == Verdict::Unknown)
        throw Error(ErrorCode::InconsistentInvariants, "classify",
                    "hyperellipticity undecided for " + st.name() + ": " + h.certificate);
    // In H(d, d) only involutions exchanging the zeros mark the special component.
    const bool hyp = h.verdict == Verdict::Yes && (st.degrees.size() == 1 || h.swaps_zeros);
    if (hyp) {
        label.tag = "hyperelliptic";
        return label;
    }
    if (fam == Family::HypPair) {
        label.tag = "nonhyperelliptic";
        return label;
    }
    label.tag = spin_tag();
    if (fam == Family::HypOdd && label.tag != "odd-spin")
        throw Error(ErrorCode::InconsistentInvariants, "classify",
                    "non-hyperelliptic surface in " + st.name() + " with even spin");
    return label;
}

}  // namespace flatlab
