#include "flatlab/errors.hpp"
#include "flatlab/lyapunov.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace flatlab {

namespace {

const double kNegInf = -std::numeric_limits<double>::infinity();

double log_abs(const BigInt& z)
{
    if (z == 0) return kNegInf;
    long e = 0;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

double log_abs(const Rational& q) { return log_abs(BigInt(q.get_num())) - log_abs(BigInt(q.get_den())); }

// Least-squares slope of y on x with its standard error.
std::pair<double, double> fit_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    double rss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - my - slope * (x[i] - mx);
        rss += r * r;
    }
    const double se = x.size() > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
    return {slope, se};
}

// Regression over the upper envelope: the largest log distance in each of
// `bins` equal windows of [lo, hi] in log N, placed at its own log N.
DeviationLevel envelope_fit(int level, const std::vector<double>& logn, const std::vector<double>& logd, double lo,
                            double hi, int bins)
{
    std::vector<double> bx(bins, 0), by(bins, kNegInf);
    for (size_t i = 0; i < logn.size(); ++i) {
        if (logn[i] < lo || logn[i] > hi || logd[i] == kNegInf) continue;
        int b = std::min(bins - 1, static_cast<int>((logn[i] - lo) / (hi - lo) * bins));
        if (logd[i] > by[b]) {
            by[b] = logd[i];
            bx[b] = logn[i];
        }
    }
    std::vector<double> x, y;
    for (int b = 0; b < bins; ++b)
        if (by[b] > kNegInf) {
            x.push_back(bx[b]);
            y.push_back(by[b]);
        }
    DeviationLevel lv;
    lv.dimension = level;
    if (x.size() < 3) {
        lv.degenerate = true;
        lv.slope = std::numeric_limits<double>::quiet_NaN();
        lv.slope_error = std::numeric_limits<double>::quiet_NaN();
        return lv;
    }
    auto [s, e] = fit_slope(x, y);
    lv.slope = s;
    lv.slope_error = e;
    return lv;
}

Rational dot(const std::vector<Rational>& a, const IntVec& b)
{
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> normalized(const std::vector<Rational>& v)
{
    Rational big = 0;
    for (const Rational& x : v) big = std::max(big, Rational(abs(x)));
    std::vector<double> out;
    double nn = 0;
    for (const Rational& x : v) {
        Rational q = x / big;
        out.push_back(q.get_d());
        nn += out.back() * out.back();
    }
    for (double& x : out) x /= std::sqrt(nn);
    return out;
}

DeviationReport return_times(const CycleModel& m, double n_max, const DeviationOptions& opt)
{
    const int g = m.genus();
    const int d = 2 * g;
    IetQ it = m.first_return().iet;
    const int n = it.size();
    std::vector<IntVec> c = m.cycles();
    std::vector<BigInt> h(n, 1);
    const double log_cap = opt.log_n_max > 0 ? opt.log_n_max : std::log(n_max);
    std::vector<double> logn;
    std::vector<IntVec> sums;
    double reached = 0;
    for (;;) {
        ZorichResult<Rational> z;
        try {
            z = zorich_step(it);
        } catch (const Error& e) {
            // The induction of a rational IET ends in a tie.
            if (e.code() != ErrorCode::TieBreak) throw;
            break;
        }
        it = z.next;
        const int w = z.winner;
        bool over = false;
        for (int l = 0; l < n; ++l) {
            if (z.counts[l] == 0) continue;
            h[l] += z.counts[l] * h[w];
            for (int i = 0; i < d; ++i) c[l][i] += z.counts[l] * c[w][i];
            const double lh = log_abs(h[l]);
            if (lh > log_cap) over = true;
            logn.push_back(lh);
            sums.push_back(c[l]);
            reached = std::max(reached, lh);
        }
        if (over) break;
    }

    DeviationReport rep;
    rep.genus = g;
    rep.log_n_max = reached;
    rep.points = static_cast<long>(sums.size());
    // Flag from the deepest loops: greedily add the one farthest from the
    // current span; spans stay exact so tiny residuals survive.
    std::vector<std::vector<Rational>> q;
    std::vector<Rational> qq;
    const double lo = std::log(opt.n_min), hi = opt.fit_fraction * reached;
    for (int level = 1; level <= g; ++level) {
        Rational best = -1;
        std::vector<Rational> pick;
        for (int l = 0; l < n; ++l) {
            std::vector<Rational> r(c[l].begin(), c[l].end());
            for (size_t k = 0; k < q.size(); ++k) {
                Rational t = dot(q[k], c[l]) / qq[k];
                for (int i = 0; i < d; ++i) r[i] -= t * q[k][i];
            }
            Rational rr = 0;
            for (const Rational& x : r) rr += x * x;
            if (rr > best) {
                best = rr;
                pick = std::move(r);
            }
        }
        if (best == 0) throw Error(ErrorCode::NonConvergence, "lyapunov", "induced loops do not span L_g");
        qq.push_back(best);
        q.push_back(std::move(pick));
        rep.flag.push_back(normalized(q.back()));

        std::vector<double> logd;
        for (const IntVec& s : sums) {
            Rational d2 = 0;
            for (const BigInt& x : s) d2 += Rational(x * x);
            for (size_t k = 0; k < q.size(); ++k) {
                Rational t = dot(q[k], s);
                d2 -= t * t / qq[k];
            }
            logd.push_back(d2 > 0 ? 0.5 * log_abs(d2) : kNegInf);
        }
        rep.levels.push_back(envelope_fit(level, logn, logd, lo, hi, opt.bins));
    }
    return rep;
}

// Log-spaced checkpoints 1 <= N <= n_max, roughly 2% apart.
std::vector<long> checkpoints(long n_max)
{
    std::vector<long> out;
    double x = 1;
    while (static_cast<long>(x) < n_max) {
        long k = static_cast<long>(x);
        if (out.empty() || k > out.back()) out.push_back(k);
        x *= 1.02;
    }
    out.push_back(n_max);
    return out;
}

DeviationReport orbit(const CycleModel& m, double n_max, const DeviationOptions& opt)
{
    if (n_max > 4e18) throw Error(ErrorCode::ConfigError, "lyapunov", "orbit checkpoints are limited to 64-bit N");
    const int g = m.genus();
    const int d = 2 * g;
    const Rational x0 = opt.start ? *opt.start : generic_point(m);
    const std::vector<long> ns = checkpoints(static_cast<long>(n_max));
    const std::vector<IntVec> cs = ergodic_checkpoints(m, x0, ns);

    Eigen::MatrixXd C(static_cast<long>(ns.size()), d);
    for (size_t r = 0; r < ns.size(); ++r)
        for (int i = 0; i < d; ++i) C(static_cast<long>(r), i) = cs[r][i].get_d();
    long first = 0;
    while (static_cast<double>(ns[first]) < opt.n_min) ++first;
    const long rows = static_cast<long>(ns.size()) - first;
    std::vector<double> logn;
    for (long k : ns) logn.push_back(std::log(static_cast<double>(k)));

    DeviationReport rep;
    rep.genus = g;
    rep.log_n_max = std::log(n_max);
    rep.points = rows;
    Eigen::MatrixXd U(d, 0);
    for (int level = 1; level <= g; ++level) {
        // Next flag direction: principal direction of the current residuals.
        Eigen::MatrixXd R = C.bottomRows(rows) - C.bottomRows(rows) * U * U.transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeThinV);
        Eigen::VectorXd u = svd.matrixV().col(0);
        u -= U * (U.transpose() * u);
        u.normalize();
        U.conservativeResize(d, level);
        U.col(level - 1) = u;
        rep.flag.emplace_back(u.data(), u.data() + d);

        Eigen::VectorXd dist = (C - C * U * U.transpose()).rowwise().norm();
        std::vector<double> logd;
        for (long r = 0; r < dist.size(); ++r) logd.push_back(dist(r) > 0 ? std::log(dist(r)) : kNegInf);
        rep.levels.push_back(envelope_fit(level, logn, logd, std::log(opt.n_min), std::log(n_max), opt.bins));
    }
    return rep;
}

}  // namespace

DeviationReport deviation_experiment(const CycleModel& m, double n_max, const DeviationOptions& opt)
{
    if (!(opt.n_min >= 1) || !(n_max >= 16 * opt.n_min))
        throw Error(ErrorCode::ConfigError, "lyapunov", "N_max must be at least 16 times the smallest fitted N");
    DeviationReport rep = opt.times == DeviationTimes::ReturnTimes ? return_times(m, n_max, opt) : orbit(m, n_max, opt);
    const DeviationLevel& top = rep.levels.back();
    // A distance that vanishes identically is bounded as well.
    rep.bounded_at_genus = top.degenerate || top.slope <= opt.bounded_slope;
    return rep;
}

DeviationReport deviation_experiment(const TranslationSurface& s, double n_max, const DeviationOptions& opt)
{
    return deviation_experiment(CycleModel(s, canonical_transversal(s)), n_max, opt);
}

}  // namespace flatlab
