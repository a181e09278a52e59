#include "goldbach/regions.hpp"

#include <algorithm>
#include <random>

namespace gb {

bool Polytope::contains(const double *u) const {
    if (empty) return false;
    for (const auto &q : inequalities) {
        double s = q.constant;
        for (int i = 0; i < dim; ++i) s += q.coef[static_cast<std::size_t>(i)] * u[i];
        if (s < 0) return false;
    }
    for (const auto &b : excluded_bands) {
        double s = 0;
        for (int i = 0; i < dim; ++i) s += b.coef[static_cast<std::size_t>(i)] * u[i];
        if (s >= b.lo && s <= b.hi) return false;
    }
    return true;
}

std::vector<std::pair<double, double>> Polytope::bounding_box() const {
    std::vector<std::pair<double, double>> box(static_cast<std::size_t>(dim), {0.0, 1.0});
    if (empty) return {};
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (const auto &q : inequalities) {
            for (int i = 0; i < dim; ++i) {
                double ci = q.coef[static_cast<std::size_t>(i)];
                if (ci == 0) continue;
                // ci u_i >= -constant - sum_{j != i} c_j u_j
                double rest = q.constant;
                for (int j = 0; j < dim; ++j) {
                    if (j == i) continue;
                    double cj = q.coef[static_cast<std::size_t>(j)];
                    auto [lo, hi] = box[static_cast<std::size_t>(j)];
                    rest += std::max(cj * lo, cj * hi);
                }
                auto &[lo, hi] = box[static_cast<std::size_t>(i)];
                double bound = -rest / ci;
                if (ci > 0 && bound > lo + 1e-15) { lo = bound; changed = true; }
                if (ci < 0 && bound < hi - 1e-15) { hi = bound; changed = true; }
            }
        }
        for (const auto &[lo, hi] : box)
            if (lo > hi) return {};
        if (!changed) break;
    }
    return box;
}

IntegralSpec IntegralSpec::make(int j, double epsilon, u64 samples, u64 seed) {
    if (j < 1 || j > 9) throw RangeError("integral index must be in 1..9");
    if (!(epsilon >= 0)) throw ConfigError("epsilon must be nonnegative");
    IntegralSpec s;
    s.j = j;
    s.epsilon = epsilon;
    s.theta1 = theta1_of(epsilon);
    s.theta2 = theta2_of(epsilon);
    s.samples = samples;
    s.seed = seed;
    return s;
}

namespace {

struct Builder {
    Polytope p;

    explicit Builder(int dim) { p.dim = dim; }

    // c . u >= rhs
    void ge(std::vector<double> c, double rhs) { p.inequalities.push_back({std::move(c), -rhs}); }
    // c . u <= rhs
    void le(std::vector<double> c, double rhs) {
        for (double &x : c) x = -x;
        p.inequalities.push_back({std::move(c), rhs});
    }
    void avoid(std::vector<double> c, double lo, double hi) {
        p.excluded_bands.push_back({std::move(c), lo, hi});
    }
};

void avoid_all_subsets(Builder &b, double t1, double t2) {
    int d = b.p.dim;
    for (int mask = 1; mask < (1 << d); ++mask) {
        std::vector<double> c(static_cast<std::size_t>(d), 0.0);
        for (int i = 0; i < d; ++i)
            if (mask & (1 << i)) c[static_cast<std::size_t>(i)] = 1;
        b.avoid(c, t1, t2);
        b.avoid(c, 1 - t2, 1 - t1);
    }
}

void pair_bands(Builder &b, double t1, double t2) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::vector<double> c(4, 0.0);
            c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(j)] = 1;
            b.avoid(c, t1, t2);
        }
}

} // namespace

Polytope region(int j, double eps, const RegionOptions &opt) {
    if (j < 1 || j > 9) throw RangeError("region index must be in 1..9");
    const double t1 = theta1_of(eps), t2 = theta2_of(eps), a = t2 - t1;
    const int dims[] = {2, 2, 3, 3, 4, 4, 2, 2, 4};
    Builder b(dims[j - 1]);
    if (!(t1 < t2)) {
        b.p.empty = true;
        return b.p;
    }
    // variables: u, v, w, t
    switch (j) {
    case 1:
        b.ge({0, 1}, a);
        b.le({0, 1}, t1);
        b.le({1, 2}, 1);
        if (opt.z0_as_z6) b.ge({1, 1}, 1 - t1);
        if (opt.i1_order_repair) {
            b.ge({1, -1}, 0);
            b.le({1, 0}, t1);
        }
        break;
    case 2:
        b.ge({0, 1}, a);
        b.ge({1, -1}, 0);
        b.le({1, 0}, t1);
        b.ge({1, 1}, t2);
        b.le({1, 1}, 1 - t2);
        b.ge({1, 2}, 1 - t1);
        b.le({1, 2}, 1);
        break;
    case 3:
    case 4:
        b.ge({0, 1, 0}, a);
        b.ge({1, -1, 0}, 0);
        b.le({1, 0, 0}, t1);
        b.ge({1, 1, 0}, t2);
        b.le({1, 1, 0}, 1 - t2);
        b.ge({1, 2, 0}, 1 - t1);
        b.le({1, 2, 0}, 1);
        b.ge({0, -1, 1}, 0);
        b.le({1, 1, 2}, 1);
        if (j == 3) b.le({0, 1, 1}, t1);
        else if (opt.i4_lower_repair) b.ge({0, 1, 1}, t2);
        else b.le({0, 1, 1}, t2);
        if (opt.discard_all_type2) avoid_all_subsets(b, t1, t2);
        break;
    case 5:
    case 6:
        b.ge({0, 0, 0, 1}, a);
        b.ge({0, 0, 1, -1}, 0);
        b.ge({0, 1, -1, 0}, 0);
        b.ge({1, -1, 0, 0}, 0);
        b.le({1, 0, 0, 0}, t1);
        if (j == 5) {
            b.le({1, 2, 0, 0}, 1 - t1);
            b.le({1, 1, 2, 0}, 1);
            b.le({1, 1, 1, 2}, 1);
            b.ge({1, 1, 0, 0}, t2);
            b.le({1, 1, 0, 0}, 1 - t2);
            pair_bands(b, t1, t2);
        } else {
            b.le({1, 1, 0, 0}, t1);
            b.avoid({1, 1, 1, 1}, t1, t2);
            b.avoid({1, 1, 1, 1}, 1 - t2, 1 - t1);
            b.avoid({1, 1, 1, 0}, t1, t2);
            b.avoid({1, 1, 0, 1}, t1, t2);
            b.avoid({1, 0, 1, 1}, t1, t2);
            b.avoid({0, 1, 1, 1}, t1, t2);
        }
        if (opt.discard_all_type2) avoid_all_subsets(b, t1, t2);
        break;
    case 7:
    case 8:
        b.ge({1, 0}, t2);
        b.le({1, 0}, 0.5);
        b.ge({0, 1}, a);
        b.le({1, 2}, 1);
        if (j == 7) {
            b.ge({1, 1}, 1 - t1);
        } else {
            b.ge({1, 1}, t2);
            b.le({1, 1}, 1 - t2);
            b.ge({1, 2}, 1 - t1);
        }
        break;
    case 9:
        b.ge({0, 0, 0, 1}, a);
        b.ge({0, 0, 1, -1}, 0);
        b.ge({0, 1, -1, 0}, 0);
        b.ge({1, 0, 0, 0}, t2);
        b.le({1, 0, 0, 0}, 0.5);
        b.le({1, 2, 0, 0}, 1 - t1);
        b.le({1, 1, 2, 0}, 1);
        b.le({1, 1, 1, 2}, 1);
        b.ge({1, 1, 0, 0}, t2);
        b.le({1, 1, 0, 0}, 1 - t2);
        if (opt.r5_empty_intersection) pair_bands(b, t1, t2);
        if (opt.discard_all_type2) avoid_all_subsets(b, t1, t2);
        break;
    }
    return b.p;
}

double integrand(int j, const OmegaTable &omega, const double *u) {
    switch (j) {
    case 2:
        return 1.0 / (u[0] * u[1] * (1 - u[0] - u[1]));
    case 1:
    case 7:
    case 8:
        return omega_eval(omega, (1 - u[0] - u[1]) / u[1]) / (u[0] * u[1] * u[1]);
    case 3:
    case 4:
        return omega_eval(omega, (1 - u[0] - u[1] - u[2]) / u[2]) / (u[0] * u[1] * u[2] * u[2]);
    case 5:
    case 6:
    case 9:
        return omega_eval(omega, (1 - u[0] - u[1] - u[2] - u[3]) / u[3]) /
               (u[0] * u[1] * u[2] * u[3] * u[3]);
    default:
        throw RangeError("integral index must be in 1..9");
    }
}

namespace {

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit(std::mt19937_64 &g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

struct CellStats {
    double mean = 0;
    double var = 0;
    u64 n = 0;
};

CellStats sample_cell(const Polytope &poly, const PointFn &f, const std::vector<double> &lo,
                      const std::vector<double> &width, u64 n, u64 seed) {
    std::mt19937_64 g(seed);
    std::vector<double> u(lo.size());
    long double s = 0, s2 = 0;
    for (u64 k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = lo[i] + width[i] * unit(g);
        double y = poly.contains(u.data()) ? f(u.data()) : 0.0;
        s += y;
        s2 += static_cast<long double>(y) * y;
    }
    CellStats st;
    st.n = n;
    if (n == 0) return st;
    long double m = s / static_cast<long double>(n);
    st.mean = static_cast<double>(m);
    if (n > 1) st.var = static_cast<double>(std::max<long double>(0, (s2 - s * m) / static_cast<long double>(n - 1)));
    return st;
}

} // namespace

Estimate mc_integrate(const Polytope &poly, const PointFn &f, u64 samples, u64 seed, bool parallel) {
    if (poly.empty) return {};
    auto box = poly.bounding_box();
    if (box.empty()) return {};
    const int dim = poly.dim;
    const i64 cells = i64{1} << (2 * dim);
    std::vector<double> cw(static_cast<std::size_t>(dim));
    double vol = 1;
    for (int i = 0; i < dim; ++i) {
        cw[static_cast<std::size_t>(i)] = (box[static_cast<std::size_t>(i)].second - box[static_cast<std::size_t>(i)].first) / 4;
        vol *= cw[static_cast<std::size_t>(i)];
    }
    if (!(vol > 0)) return {};
    auto cell_lo = [&](i64 c) {
        std::vector<double> lo(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            i64 idx = (c >> (2 * i)) & 3;
            lo[static_cast<std::size_t>(i)] = box[static_cast<std::size_t>(i)].first + static_cast<double>(idx) * cw[static_cast<std::size_t>(i)];
        }
        return lo;
    };
    auto cell_seed = [&](i64 c, u64 phase) {
        return splitmix64(seed ^ splitmix64(static_cast<u64>(c) * 2 + phase + 1));
    };

    const u64 pilot = std::max<u64>(8, samples / 10 / static_cast<u64>(cells));
    std::vector<CellStats> first(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (i64 c = 0; c < cells; ++c)
        first[static_cast<std::size_t>(c)] = sample_cell(poly, f, cell_lo(c), cw, pilot, cell_seed(c, 0));

    const u64 used = pilot * static_cast<u64>(cells);
    const u64 rest = samples > used ? samples - used : 0;
    // a uniform floor keeps thin slivers missed by the pilot in play
    const u64 floor_n = std::max<u64>(2, rest / 10 / static_cast<u64>(cells));
    const u64 spread = rest > floor_n * static_cast<u64>(cells) ? rest - floor_n * static_cast<u64>(cells) : 0;
    double wsum = 0;
    for (const auto &s : first) wsum += std::sqrt(s.var);
    std::vector<u64> alloc(static_cast<std::size_t>(cells), floor_n);
    for (i64 c = 0; c < cells; ++c) {
        double w = wsum > 0 ? std::sqrt(first[static_cast<std::size_t>(c)].var) / wsum : 1.0 / static_cast<double>(cells);
        alloc[static_cast<std::size_t>(c)] += static_cast<u64>(w * static_cast<double>(spread));
    }

    std::vector<CellStats> second(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (i64 c = 0; c < cells; ++c)
        second[static_cast<std::size_t>(c)] =
            sample_cell(poly, f, cell_lo(c), cw, alloc[static_cast<std::size_t>(c)], cell_seed(c, 1));

    long double value = 0, var = 0;
    for (const auto &s : second) {
        value += static_cast<long double>(vol) * s.mean;
        var += static_cast<long double>(vol) * vol * s.var / static_cast<long double>(s.n);
    }
    return {static_cast<double>(value), static_cast<double>(std::sqrt(var))};
}

double omega_range_for(double eps) {
    double gap = theta2_of(eps) - theta1_of(eps);
    return gap > 0 ? 1.0 / gap + 2.0 : 2.0;
}

namespace {

Estimate integrate_impl(const IntegralSpec &spec, const OmegaTable &omega, const RegionOptions &opt,
                        bool parallel) {
    Polytope poly = region(spec.j, spec.epsilon, opt);
    if (poly.empty) return {};
    if (omega.u_max < omega_range_for(spec.epsilon))
        throw ConfigError("omega table range below 1/(theta2 - theta1) + 2");
    const int j = spec.j;
    PointFn f = [&omega, j](const double *u) { return integrand(j, omega, u); };
    return mc_integrate(poly, f, spec.samples, splitmix64(spec.seed + static_cast<u64>(j)), parallel);
}

} // namespace

Estimate integrate(const IntegralSpec &spec, const OmegaTable &omega, const RegionOptions &opt) {
    return integrate_impl(spec, omega, opt, true);
}

Estimate integrate_serial(const IntegralSpec &spec, const OmegaTable &omega, const RegionOptions &opt) {
    return integrate_impl(spec, omega, opt, false);
}

IntegralSum integral_sum(double eps, u64 samples, u64 seed, const RegionOptions &opt) {
    IntegralSum out;
    out.per_j.resize(9);
    if (!(theta1_of(eps) < theta2_of(eps))) return out;
    OmegaTable omega = build_omega_table(std::ceil(omega_range_for(eps)));
    long double var = 0;
    for (int j = 1; j <= 9; ++j) {
        Estimate e = integrate(IntegralSpec::make(j, eps, samples, seed), omega, opt);
        out.per_j[static_cast<std::size_t>(j - 1)] = e;
        out.total += e.value;
        var += static_cast<long double>(e.stderr_) * e.stderr_;
    }
    out.stderr_ = static_cast<double>(std::sqrt(var));
    return out;
}

SingularSeries singular_series(i64 N0, u64 P) {
    if (N0 < 3) throw RangeError("singular_series: N0 must be at least 3");
    if (P < 1000) throw RangeError("singular_series: P must be at least 1000");
    SingularSeries s;
    if (N0 % 2 == 0) return s;
    std::vector<u64> divs;
    u64 n = static_cast<u64>(N0);
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        divs.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) divs.push_back(n);
    long double v = 1;
    for (u64 p : divs) {
        long double d = static_cast<long double>(p - 1);
        v *= 1 - 1 / (d * d);
    }
    for (u64 p : primes_up_to(P)) {
        if (static_cast<u64>(N0) % p == 0) continue;
        long double d = static_cast<long double>(p - 1);
        v *= 1 + 1 / (d * d * d);
    }
    s.value = static_cast<double>(v);
    s.lo = s.value;
    s.hi = static_cast<double>(v * (1 + 2.0L / static_cast<long double>(P)));
    return s;
}

double main_term(const GoldbachInstance &inst, const Polytope &region, const PointFn &zfun,
                 const OmegaTable &omega, u64 samples, u64 seed, u64 P) {
    if (region.empty || region.bounding_box().empty()) return 0.0;
    const int dim = region.dim;
    PointFn f = [&](const double *u) {
        double z = zfun(u);
        double sum = 0, prod = 1;
        for (int i = 0; i < dim; ++i) {
            sum += u[i];
            prod *= u[i];
        }
        return omega_eval(omega, (1 - sum) / z) / (prod * z);
    };
    Estimate e = mc_integrate(region, f, samples, seed);
    double pref = static_cast<double>(inst.X) * static_cast<double>(inst.anchor.length()) / (4 * inst.logX);
    return pref * singular_series(inst.N0, P).value * e.value;
}

double main_term_aggregate(const GoldbachInstance &inst, double sum_I, bool kappa_weighted, u64 P) {
    double a_star = static_cast<double>(count_in_window(inst.sys, inst.anchor));
    if (kappa_weighted) a_star *= kappa(inst.sys).value();
    return static_cast<double>(inst.X) / 4 * a_star / inst.logX * singular_series(inst.N0, P).value *
           (1 - sum_I);
}

} // namespace gb
