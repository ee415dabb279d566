#include "gwi/oracle.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "gwi/error.hpp"

namespace gwi {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_common(const ParamSet& p, int omega0, int n) {
    validate(p);
    if (omega0 < 1) throw Error(ErrorCode::InvalidArgument, "omega0 must be a positive integer");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
}

void blowup(long long s, const char* what) {
    throw Error(ErrorCode::StateBlowup, std::string(what) + " reached " + std::to_string(s) +
                                            "; use a smaller n or a looser tail budget");
}

struct Atom {
    long long x;
    double lpH;
    double lpA;
};

// path atoms after n steps, truncated under both laws; also returns discarded masses
std::vector<Atom> enumerate_paths(const ParamSet& p, int omega0, int n, const TruncationPolicy& pol, double& mH,
                                  double& mA) {
    std::vector<Atom> cur{{omega0, 0.0, 0.0}};
    mH = mA = 0;
    double eps = pol.tail_budget / std::max(n, 1);
    for (int k = 0; k < n; ++k) {
        std::vector<Atom> next;
        for (const auto& a : cur) {
            double fA = p.f_A(double(a.x)), fH = p.f_H(double(a.x));
            long long Y = std::max(poisson_cutoff(fA, eps), poisson_cutoff(fH, eps));
            if (Y > pol.max_state) blowup(Y, "state");
            mH += std::exp(a.lpH) * poisson_upper_tail(fH, Y);
            mA += std::exp(a.lpA) * poisson_upper_tail(fA, Y);
            for (long long y = 0; y <= Y; ++y) {
                double h = a.lpH + poisson_log_pmf(fH, y), g = a.lpA + poisson_log_pmf(fA, y);
                if (h == kNegInf && g == kNegInf) continue;
                next.push_back({y, h, g});
            }
            if ((long long)next.size() > pol.max_atoms) blowup((long long)next.size(), "atom count");
        }
        cur.swap(next);
    }
    return cur;
}

}  // namespace

double poisson_log_pmf(double mean, long long y) {
    if (mean == 0) return y == 0 ? 0.0 : kNegInf;
    return double(y) * std::log(mean) - mean - std::lgamma(double(y) + 1);
}

double poisson_upper_tail(double mean, long long y) {
    if (mean == 0) return 0.0;
    // P(N > y) = P(Gamma(y+1) < mean)
    return boost::math::gamma_p(double(y) + 1, mean);
}

long long poisson_cutoff(double mean, double eps) {
    if (mean == 0) return 0;
    long long y = static_cast<long long>(std::floor(mean));
    long long step = std::max<long long>(1, static_cast<long long>(std::sqrt(mean)));
    while (poisson_upper_tail(mean, y) > eps) y += step;
    // walk back to the smallest admissible value
    long long lo = std::max<long long>(0, y - step);
    while (lo < y && poisson_upper_tail(mean, lo) > eps) ++lo;
    return lo;
}

EnumResult enum_log_hellinger(const ParamSet& p, double lambda, int omega0, int n, TruncationPolicy pol) {
    check_common(p, omega0, n);
    validate_lambda(lambda);
    if (n == 0) return {0.0, 1.0, 0.0, omega0};
    double eps = pol.tail_budget / n;

    // level j holds states 0..S[j]
    std::vector<long long> S(n, omega0);
    for (int j = 1; j < n; ++j) {
        S[j] = poisson_cutoff(varphi(p, lambda, double(S[j - 1])), eps);
        if (S[j] > pol.max_state) blowup(S[j], "state");
    }

    std::vector<double> H(S[n - 1] + 1);
    for (long long x = 0; x <= S[n - 1]; ++x) H[x] = std::exp(phi(p, lambda, double(x)));

    double err = 0;
    for (int j = n - 2; j >= 0; --j) {
        std::vector<double> G(S[j] + 1);
        double level_err = 0;
        for (long long x = 0; x <= S[j]; ++x) {
            double v = varphi(p, lambda, double(x));
            double e = std::exp(phi(p, lambda, double(x)));
            long long Y = std::min(poisson_cutoff(v, eps), S[j + 1]);
            double s = 0;
            for (long long y = 0; y <= Y; ++y) s += std::exp(poisson_log_pmf(v, y)) * H[y];
            G[x] = e * s;
            level_err = std::max(level_err, e * poisson_upper_tail(v, Y));
        }
        err += level_err;
        H.swap(G);
    }
    double val = H[omega0];
    return {std::log(val), val, err, *std::max_element(S.begin(), S.end())};
}

double naive_hellinger_n2(const ParamSet& p, double lambda, int omega0, int cutoff) {
    check_common(p, omega0, 2);
    double total = 0;
    for (int y1 = 0; y1 <= cutoff; ++y1) {
        double w1 = lambda * poisson_log_pmf(p.f_A(omega0), y1) + (1 - lambda) * poisson_log_pmf(p.f_H(omega0), y1);
        if (w1 == kNegInf) continue;
        for (int y2 = 0; y2 <= cutoff; ++y2) {
            double w2 = lambda * poisson_log_pmf(p.f_A(y1), y2) + (1 - lambda) * poisson_log_pmf(p.f_H(y1), y2);
            if (w2 == kNegInf) continue;
            total += std::exp(w1 + w2);
        }
    }
    return total;
}

MCResult mc_log_hellinger(const ParamSet& p, double lambda, int omega0, int n, long long reps, std::uint64_t seed) {
    check_common(p, omega0, n);
    validate_lambda(lambda);
    if (reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be positive");

    constexpr long long kBlock = 10000;
    long long nblocks = (reps + kBlock - 1) / kBlock;
    // per block: shift M, sum of exp(v - M), sum of exp(2(v - M))
    struct Acc {
        double M = kNegInf, s1 = 0, s2 = 0;
    };
    std::vector<Acc> acc(nblocks);

    auto run_block = [&](long long b) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 rng(sq);
        long long count = std::min(kBlock, reps - b * kBlock);
        std::vector<double> v(count);
        for (long long i = 0; i < count; ++i) {
            long long x = omega0;
            double lz = 0;
            for (int k = 0; k < n && lz != kNegInf; ++k) {
                double fA = p.f_A(double(x)), fH = p.f_H(double(x));
                long long y = fH > 0 ? std::poisson_distribution<long long>(fH)(rng) : 0;
                if (y > 0 && fA == 0) {
                    lz = kNegInf;
                } else {
                    lz += (y > 0 ? double(y) * std::log(fA / fH) : 0.0) - (fA - fH);
                }
                x = y;
            }
            v[i] = lambda * lz;
        }
        Acc a;
        for (double t : v) a.M = std::max(a.M, t);
        if (a.M == kNegInf) {
            acc[b] = a;
            return;
        }
        for (double t : v) {
            double e = std::exp(t - a.M);
            a.s1 += e;
            a.s2 += e * e;
        }
        acc[b] = a;
    };

    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (long long b = w; b < nblocks; b += workers) run_block(b);
        });
    for (auto& t : pool) t.join();

    double M = kNegInf;
    for (const auto& a : acc) M = std::max(M, a.M);
    MCResult r{0, kNegInf, 0, reps, seed, "mt19937_64/seed_seq(seed,block)/std::poisson_distribution"};
    if (M == kNegInf) return r;
    double s1 = 0, s2 = 0;
    for (const auto& a : acc) {
        if (a.M == kNegInf) continue;
        double sc = std::exp(a.M - M);
        s1 += a.s1 * sc;
        s2 += a.s2 * sc * sc;
    }
    double R = double(reps);
    double mean_scaled = s1 / R;
    double var_scaled = std::max(0.0, (s2 / R - mean_scaled * mean_scaled) * R / std::max(1.0, R - 1));
    r.log_estimate = M + std::log(mean_scaled);
    r.estimate = std::exp(r.log_estimate);
    r.std_error = std::exp(M) * std::sqrt(var_scaled / R);
    return r;
}

RiskResult enum_bayes_risk(const ParamSet& p, int omega0, int n, const DecisionConfig& cfg, TruncationPolicy pol) {
    check_common(p, omega0, n);
    validate(cfg);
    double mH, mA;
    auto atoms = enumerate_paths(p, omega0, n, pol, mH, mA);
    double LH = cfg.Lambda_H(), LA = cfg.Lambda_A();
    double risk = 0;
    for (const auto& a : atoms) risk += std::min(LH * std::exp(a.lpH), LA * std::exp(a.lpA));
    return {risk, std::min(LH * mH, LA * mA), (long long)atoms.size()};
}

NPResult enum_np_type2(const ParamSet& p, int omega0, int n, double level, TruncationPolicy pol) {
    check_common(p, omega0, n);
    if (!(level > 0 && level < 1)) throw Error(ErrorCode::InvalidArgument, "level must lie in (0,1)");
    double mH, mA;
    auto atoms = enumerate_paths(p, omega0, n, pol, mH, mA);
    // reject in decreasing likelihood-ratio order; atoms null under H go first at no cost
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
        return a.lpA - a.lpH > b.lpA - b.lpH;
    });
    double budget = level, rejected_A = 0;
    for (const auto& a : atoms) {
        double h = std::exp(a.lpH), g = std::exp(a.lpA);
        if (h <= budget) {
            budget -= h;
            rejected_A += g;
        } else {
            rejected_A += g * budget / h;
            break;
        }
    }
    return {std::clamp(1 - rejected_A, 0.0, 1.0), mA, (long long)atoms.size()};
}

EntropyEnumResult enum_relative_entropy(const ParamSet& p, int omega0, int n, TruncationPolicy pol) {
    check_common(p, omega0, n);
    auto h = [&](double x) {
        double fA = p.f_A(x), fH = p.f_H(x);
        if (fA == 0) return fH;
        return fA * std::log(fA / fH) - fA + fH;
    };
    // convex in x with asymptotic slope C, hence h(x) <= h(0) + C x
    double C = p.beta_A * std::log(p.beta_A / p.beta_H) - p.beta_A + p.beta_H;
    double eps = pol.tail_budget / std::max(n, 1);

    std::vector<double> dist(omega0 + 1, 0.0);
    dist[omega0] = 1;
    double mean = omega0, value = 0, err = 0;
    for (int k = 0; k < n; ++k) {
        double mass = 0, first = 0;
        for (size_t x = 0; x < dist.size(); ++x) {
            if (dist[x] == 0) continue;
            value += dist[x] * h(double(x));
            mass += dist[x];
            first += dist[x] * double(x);
        }
        err += h(0) * std::max(0.0, 1 - mass) + C * std::max(0.0, mean - first);
        if (k + 1 == n) break;
        long long Y = poisson_cutoff(p.f_A(double(dist.size() - 1)), eps);
        if (Y > pol.max_state) blowup(Y, "state");
        std::vector<double> next(Y + 1, 0.0);
        for (size_t x = 0; x < dist.size(); ++x) {
            if (dist[x] == 0) continue;
            double f = p.f_A(double(x));
            long long Yx = std::min(poisson_cutoff(f, eps), Y);
            for (long long y = 0; y <= Yx; ++y) next[y] += dist[x] * std::exp(poisson_log_pmf(f, y));
        }
        dist.swap(next);
        mean = p.beta_A * mean + p.alpha_A;
    }
    return {value, err};
}

}  // namespace gwi
