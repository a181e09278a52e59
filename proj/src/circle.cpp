#include "goldbach/circle.hpp"

#include <algorithm>
#include <exception>

namespace gb {

namespace {

double circle_distance(double a, double b) {
    double d = std::abs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

} // namespace

bool Arc::contains(double theta) const { return circle_distance(theta, center()) <= halfwidth(); }

std::vector<Arc> major_arcs(const GoldbachInstance &inst) {
    std::vector<Arc> arcs;
    const i64 Q = static_cast<i64>(std::floor(inst.Q0));
    arcs.reserve(static_cast<std::size_t>(major_arc_count(inst)));
    for (i64 q = 1; q <= Q; ++q)
        for (i64 c = 1; c <= q; ++c)
            if (std::gcd(c, q) == 1) arcs.push_back({c, q, inst.L0, static_cast<double>(inst.X)});
    return arcs;
}

u64 major_arc_count(const GoldbachInstance &inst) {
    u64 n = 0;
    const u64 Q = static_cast<u64>(std::floor(inst.Q0));
    for (u64 q = 1; q <= Q; ++q) n += euler_phi(q);
    return n;
}

bool arcs_pairwise_disjoint(const std::vector<Arc> &arcs) {
    std::vector<std::pair<double, double>> iv;
    iv.reserve(arcs.size() + 1);
    for (const auto &a : arcs) {
        double lo = a.center() - a.halfwidth(), hi = a.center() + a.halfwidth();
        if (hi - lo >= 1) return arcs.size() <= 1;
        // unwrap onto [0, 1)
        double shift = std::floor(lo);
        lo -= shift;
        hi -= shift;
        if (hi > 1) {
            iv.push_back({lo, 1.0});
            iv.push_back({0.0, hi - 1});
        } else {
            iv.push_back({lo, hi});
        }
    }
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 0; i + 1 < iv.size(); ++i)
        if (iv[i + 1].first <= iv[i].second) return false;
    return true;
}

Classification classify(const GoldbachInstance &inst, double theta) {
    if (!(theta >= 0 && theta < 1)) throw RangeError("classify: theta must lie in [0, 1)");
    Classification out;
    out.witness_N = static_cast<i64>(std::floor(std::pow(static_cast<double>(inst.X), 0.8))) + 1;
    out.witness = dirichlet_approx(theta, out.witness_N);
    const i64 Q = static_cast<i64>(std::floor(inst.Q0));
    const double X = static_cast<double>(inst.X);
    for (i64 q = 1; q <= Q && !out.major; ++q) {
        double w = inst.L0 / (static_cast<double>(q) * X);
        i64 c0 = static_cast<i64>(std::floor(static_cast<double>(q) * (theta - w)));
        i64 c1 = static_cast<i64>(std::ceil(static_cast<double>(q) * (theta + w)));
        for (i64 c = c0; c <= c1; ++c) {
            i64 cr = ((c % q) + q) % q;
            if (cr == 0) cr = q;
            if (std::gcd(cr, q) != 1) continue;
            if (circle_distance(theta, static_cast<double>(cr) / static_cast<double>(q)) <= w) {
                out.major = true;
                out.c = cr;
                out.q = q;
                break;
            }
        }
    }
    return out;
}

SparseExpSeries SparseExpSeries::make(std::vector<std::pair<i64, double>> terms, u64 X) {
    std::sort(terms.begin(), terms.end());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].first < 1 || terms[i].first > static_cast<i64>(X))
            throw RangeError("sparse series: index outside [1, X]");
        if (i > 0 && terms[i].first == terms[i - 1].first)
            throw RangeError("sparse series: repeated index");
    }
    return {std::move(terms)};
}

std::vector<i64> grid_points(u64 X, const std::vector<Arc> &arcs) {
    const i64 x = static_cast<i64>(X);
    std::vector<unsigned char> hit(X + 1, 0);
    for (const auto &arc : arcs) {
        double lo = (arc.center() - arc.halfwidth()) * static_cast<double>(X);
        double hi = (arc.center() + arc.halfwidth()) * static_cast<double>(X);
        for (i64 a = static_cast<i64>(std::ceil(lo - 1e-9)); a <= static_cast<i64>(std::floor(hi + 1e-9)); ++a) {
            i64 ar = ((a % x) + x) % x;
            if (ar == 0) ar = x;
            double t = static_cast<double>(ar) / static_cast<double>(X);
            if (arc.contains(t - std::floor(t))) hit[static_cast<std::size_t>(ar)] = 1;
        }
    }
    std::vector<i64> out;
    for (i64 a = 1; a <= x; ++a)
        if (hit[static_cast<std::size_t>(a)]) out.push_back(a);
    return out;
}

SGrid s_grid(const PSConfig &cfg, const GoldbachInstance &inst, const std::vector<Arc> *restrict_to) {
    SGrid g;
    g.X = inst.X;
    if (restrict_to) {
        g.a = grid_points(inst.X, *restrict_to);
    } else {
        if (inst.X > 100000) throw RangeError("full grid needs X <= 10^5; pass arcs to restrict");
        g.a.resize(inst.X);
        std::iota(g.a.begin(), g.a.end(), i64{1});
    }
    PSTable t = ps_table(cfg, inst);
    g.S.resize(g.a.size());
    const i64 n = static_cast<i64>(g.a.size());
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < n; ++i)
        g.S[static_cast<std::size_t>(i)] = ps_expsum_rational(t, g.a[static_cast<std::size_t>(i)], static_cast<i64>(inst.X));
    return g;
}

namespace {

cplx j_term(const GoldbachInstance &inst, const SparseExpSeries &E, i64 a, cplx S) {
    const i64 X = static_cast<i64>(inst.X);
    std::complex<long double> e{0, 0};
    for (const auto &[n, v] : E.support) {
        cplx z = expi_rational(static_cast<i64>(static_cast<__int128>(n) * a % X), X);
        e += static_cast<long double>(v) * std::complex<long double>(z.real(), z.imag());
    }
    cplx Ea{static_cast<double>(e.real()), static_cast<double>(e.imag())};
    i64 ph = static_cast<i64>(-(static_cast<__int128>(inst.N0) * a % X));
    return Ea * S * S * expi_rational(ph, X);
}

} // namespace

cplx j_functional(const GoldbachInstance &inst, const SparseExpSeries &E, const SGrid &grid) {
    const i64 n = static_cast<i64>(grid.a.size());
    std::vector<cplx> terms(grid.a.size());
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < n; ++i)
        terms[static_cast<std::size_t>(i)] = j_term(inst, E, grid.a[static_cast<std::size_t>(i)], grid.S[static_cast<std::size_t>(i)]);
    return pairwise_sum(terms) / static_cast<double>(inst.X);
}

cplx j_functional_serial(const GoldbachInstance &inst, const SparseExpSeries &E, const SGrid &grid) {
    std::vector<cplx> terms(grid.a.size());
    for (std::size_t i = 0; i < grid.a.size(); ++i) terms[i] = j_term(inst, E, grid.a[i], grid.S[i]);
    return pairwise_sum(terms) / static_cast<double>(inst.X);
}

cplx j_functional(const GoldbachInstance &inst, const SparseExpSeries &E, const PSConfig &cfg,
                  const std::vector<Arc> *restrict_to) {
    if (E.support.empty()) return {0, 0};
    return j_functional(inst, E, s_grid(cfg, inst, restrict_to));
}

double m_mean(const GoldbachInstance &inst, const SparseExpSeries &E, const PSConfig &cfg) {
    PSTable t = ps_table(cfg, inst);
    std::vector<double> w(static_cast<std::size_t>(inst.int_size()), 0.0);
    for (std::size_t i = 0; i < t.primes.size(); ++i)
        w[static_cast<std::size_t>(static_cast<i64>(t.primes[i]) - inst.int_lo)] = t.weights[i];
    long double total = 0;
    for (const auto &[m, v] : E.support) {
        long double acc = 0;
        for (std::size_t i = 0; i < t.primes.size(); ++i) {
            i64 p3 = inst.N0 - m - static_cast<i64>(t.primes[i]);
            if (p3 < inst.int_lo || p3 > inst.int_hi) continue;
            double w3 = w[static_cast<std::size_t>(p3 - inst.int_lo)];
            if (w3 != 0) acc += static_cast<long double>(t.weights[i]) * w3;
        }
        total += static_cast<long double>(v) * acc;
    }
    return static_cast<double>(total);
}

std::vector<bool> minor_set(const GoldbachInstance &inst, const PSConfig &cfg,
                            const std::vector<double> &grid) {
    PSTable t = ps_table(cfg, inst);
    const double bound = std::pow(static_cast<double>(inst.X), 1 - cfg.delta0);
    std::vector<unsigned char> flag(grid.size(), 0);
    const i64 n = static_cast<i64>(grid.size());
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < n; ++i)
        flag[static_cast<std::size_t>(i)] = std::abs(ps_expsum(t, grid[static_cast<std::size_t>(i)])) <= bound;
    return {flag.begin(), flag.end()};
}

std::vector<u64> exceptional_set_serial(int a0, int k) {
    if (k < 1 || k > 7) throw RangeError("exceptional_set: k must be in 1..7");
    const u64 X = pow10u(k);
    const double thr = std::pow(static_cast<double>(X), -23.0 / 80.0);
    std::vector<u64> out;
    for (u64 b = 0; b < X; ++b)
        if (fy_eval_grid(a0, X, b) >= thr) out.push_back(b);
    return out;
}

std::vector<u64> exceptional_set(int a0, int k) {
    if (k < 1 || k > 7) throw RangeError("exceptional_set: k must be in 1..7");
    const u64 X = pow10u(k);
    const double thr = std::pow(static_cast<double>(X), -23.0 / 80.0);
    const i64 block = 1 << 14;
    const i64 nblocks = (static_cast<i64>(X) + block - 1) / block;
    std::vector<std::vector<u64>> parts(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(static)
    for (i64 bl = 0; bl < nblocks; ++bl) {
        u64 b0 = static_cast<u64>(bl * block), b1 = std::min<u64>(X, b0 + block);
        for (u64 b = b0; b < b1; ++b)
            if (fy_eval_grid(a0, X, b) >= thr) parts[static_cast<std::size_t>(bl)].push_back(b);
    }
    std::vector<u64> out;
    for (auto &p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

MBResult mb_classify(const GoldbachInstance &inst, i64 b) {
    const i64 X = static_cast<i64>(inst.X);
    if (b < 0 || b >= X) throw RangeError("mb_classify: b outside [0, X)");
    const double R3 = std::pow(inst.logX, static_cast<double>(inst.C.C3));
    const double R2 = std::pow(inst.logX, static_cast<double>(inst.C.C2));
    MBResult res;
    // exact center: the reduced denominator of b/X
    i64 g = std::gcd(b, X);
    i64 r0 = X / g;
    if (static_cast<double>(r0) <= R3) {
        res.cls = MBClass::M3;
        res.d = b / g;
        res.r = r0;
        res.v = 0;
        return res;
    }
    // nearest d/r over r <= R3 (< r0 <= X here); distance = num/(r X)
    const i64 rmax = static_cast<i64>(std::floor(R3));
    __int128 best_num = -1;
    i64 best_r = 1, best_d = 0;
    for (i64 r = 1; r <= rmax; ++r) {
        __int128 br = static_cast<__int128>(b) * r;
        i64 d = static_cast<i64>((br + X / 2) / X);
        __int128 num = br - static_cast<__int128>(d) * X;
        if (num < 0) num = -num;
        // compare num/r with best_num/best_r
        if (best_num < 0 || num * best_r < best_num * r) {
            best_num = num;
            best_r = r;
            best_d = d;
        }
    }
    res.d = best_d;
    res.r = best_r;
    res.v = static_cast<double>(b) / static_cast<double>(X) -
            static_cast<double>(best_d) / static_cast<double>(best_r);
    bool divides = X % best_r == 0;
    double scaled = static_cast<double>(best_num) / static_cast<double>(best_r); // |v| X
    if (divides && scaled <= R3) res.cls = MBClass::M2;
    else if (!divides && scaled <= R2) res.cls = MBClass::M1;
    else res.cls = MBClass::Outside;
    return res;
}

const char *to_string(MBClass c) {
    switch (c) {
    case MBClass::M1: return "M1";
    case MBClass::M2: return "M2";
    case MBClass::M3: return "M3";
    default: return "Outside";
    }
}

} // namespace gb
