#include "flatlab/lyapunov.hpp"

#include "flatlab/errors.hpp"
#include "flatlab/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace flatlab {

namespace {

// Half the rank of the intersection matrix of the permutation.
int permutation_genus(const Permutation& p)
{
    const int n = p.size();
    Eigen::MatrixXd om = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (p.top_pos(a) < p.top_pos(b) && p.bottom_pos(a) > p.bottom_pos(b)) om(a, b) = 1;
            if (p.top_pos(a) > p.top_pos(b) && p.bottom_pos(a) < p.bottom_pos(b)) om(a, b) = -1;
        }
    return static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(om).rank()) / 2;
}

Eigen::MatrixXd random_frame(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

double mean(const std::vector<double>& v)
{
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_error(const std::vector<double>& v)
{
    if (v.size() < 2) return 0;
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

ExponentEstimate cocycle_exponents(const IetD& start, std::uint64_t seed, const ExponentOptions& opt)
{
    if (opt.steps < 1 || opt.orthonormalize_every < 1 || opt.blocks < 1)
        throw Error(ErrorCode::ConfigError, "lyapunov", "steps, blocks and orthonormalization period must be positive");
    const int n = start.size();
    const int g = permutation_genus(start.perm());
    const int blocks = static_cast<int>(std::min<long>(opt.blocks, opt.steps));
    std::mt19937_64 rng(derive_seed(seed, 0x1e7));
    Eigen::MatrixXd Q = random_frame(n, rng);

    std::vector<std::vector<double>> block_logs(blocks, std::vector<double>(n, 0.0));
    ExponentEstimate est;
    IetD it = start.normalized();
    Eigen::RowVectorXd row(n);
    long since = 0;
    for (long step = 0; step < opt.steps; ++step) {
        ZorichResult<double> z = zorich_step(it, opt.tie_tol);
        const double total = z.next.total();
        est.teich_time += -std::log(total);
        it = z.next.normalized();
        const int w = z.winner;
        if (opt.convention == CocycleConvention::Direct) {
            // (B^T v)_l = v_l + counts_l v_w
            row = Q.row(w);
            for (int l = 0; l < n; ++l)
                if (z.counts[l] != 0) Q.row(l) += z.counts[l] * row;
        } else {
            // B = I + e_w c^T, so B^{-1} = I - e_w c^T / (1 + c_w).
            row.setZero();
            for (int l = 0; l < n; ++l)
                if (z.counts[l] != 0) row += z.counts[l] * Q.row(l);
            Q.row(w) -= row / (1 + z.counts[w]);
        }
        const int b = static_cast<int>(step * blocks / opt.steps);
        const bool block_end = step + 1 == opt.steps || static_cast<int>((step + 1) * blocks / opt.steps) != b;
        if (++since == opt.orthonormalize_every || block_end) {
            since = 0;
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(Q);
            const Eigen::MatrixXd& R = qr.matrixQR();
            for (int i = 0; i < n; ++i) block_logs[b][i] += std::log(std::abs(R(i, i)));
            Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
        }
    }

    std::vector<double> total(n, 0.0);
    for (const auto& bl : block_logs)
        for (int i = 0; i < n; ++i) total[i] += bl[i];
    std::vector<double> raw = total;
    std::sort(raw.begin(), raw.end(), std::greater<>());
    if (!(raw[0] > 0) || !std::isfinite(raw[0]))
        throw Error(ErrorCode::NonConvergence, "lyapunov", "top exponent is not positive");
    for (double x : raw) est.spectrum.push_back(x / raw[0]);
    est.values.assign(est.spectrum.begin(), est.spectrum.begin() + g);

    // Inverse-transpose columns come out in ascending order of the cycle
    // exponents; the block ratios are taken against each block's largest rate.
    std::vector<std::vector<double>> ratios(g);
    for (const auto& bl : block_logs) {
        std::vector<double> s = bl;
        std::sort(s.begin(), s.end(), std::greater<>());
        for (int i = 0; i < g; ++i) ratios[i].push_back(s[i] / s[0]);
    }
    for (int i = 0; i < g; ++i) est.std_errors.push_back(std_error(ratios[i]));
    est.steps = opt.steps;
    est.top_rate = raw[0] / (opt.time_normalized ? est.teich_time : static_cast<double>(opt.steps));
    if (opt.max_std_error > 0)
        for (double e : est.std_errors)
            if (e > opt.max_std_error)
                throw Error(ErrorCode::NonConvergence, "lyapunov", "standard error above the requested bound");
    return est;
}

ExponentEstimate cocycle_exponents(const Permutation& p, std::uint64_t seed, const ExponentOptions& opt)
{
    std::mt19937_64 rng(derive_seed(seed, 0x5a));
    std::exponential_distribution<double> ex;
    std::vector<double> len(p.size());
    for (double& l : len) l = ex(rng);
    return cocycle_exponents(IetD(p, len), seed, opt);
}

ExponentEstimate cocycle_exponents(const Stratum& stratum, std::uint64_t seed, const ExponentOptions& opt,
                                   const std::string& component)
{
    return cocycle_exponents(stratum_permutation(stratum, component), seed, opt);
}

ExponentEstimate cocycle_exponents(const TranslationSurface& s, std::uint64_t seed, const ExponentOptions& opt)
{
    FirstReturn fr = first_return(s, canonical_transversal(s));
    std::mt19937_64 rng(derive_seed(seed, 0x7e));
    std::uniform_real_distribution<double> u(-1e-9, 1e-9);
    std::vector<double> len;
    for (const Rational& l : fr.iet.lengths()) len.push_back(to_double(l) * (1 + u(rng)));
    return cocycle_exponents(IetD(fr.iet.perm(), len), seed, opt);
}

std::vector<std::vector<double>> standard_symplectic_form(int genus)
{
    std::vector<std::vector<double>> J(2 * genus, std::vector<double>(2 * genus, 0.0));
    for (int i = 0; i < genus; ++i) {
        J[i][genus + i] = 1;
        J[genus + i][i] = -1;
    }
    return J;
}

bool lagrangian_check(const std::vector<std::vector<double>>& basis, const std::vector<std::vector<double>>& form,
                      double tol)
{
    const size_t d = form.size();
    if (d % 2 != 0 || basis.size() != d / 2)
        throw Error(ErrorCode::WrongDimension, "lyapunov", "a Lagrangian subspace has half the ambient dimension");
    std::vector<std::vector<double>> u;
    for (const auto& v : basis) {
        if (v.size() != d) throw Error(ErrorCode::WrongDimension, "lyapunov", "basis vector of wrong length");
        double nrm = 0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm == 0) return false;
        std::vector<double> w = v;
        for (double& x : w) x /= nrm;
        u.push_back(std::move(w));
    }
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = i + 1; j < u.size(); ++j) {
            double s = 0;
            for (size_t a = 0; a < d; ++a)
                for (size_t b = 0; b < d; ++b) s += u[i][a] * form[a][b] * u[j][b];
            if (std::abs(s) > tol) return false;
        }
    return true;
}

}  // namespace flatlab
