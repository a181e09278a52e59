#include "goldbach/harness.hpp"
#include "goldbach/digits.hpp"
#include "goldbach/regions.hpp"

#include <fstream>

namespace gb {

VerifyResult verify_hybrid(i64 N0, int a0, double gamma0, const VerifyOptions &opt) {
    if (N0 % 2 == 0) throw ConfigError("verify_hybrid: N0 must be odd");
    if (N0 > 100000000) throw RangeError("verify_hybrid: N0 exceeds 10^8");
    VerifyResult res;
    res.inst = make_instance(N0, a0, opt.C);
    const GoldbachInstance &in = res.inst;
    // strict mode would reject gamma0 in (0.9, gamma_star]; exploration is fine here
    PSConfig cfg = make_ps_config(gamma0, 0.0, 64, false);
    PSTable t = ps_table(cfg, in);

    std::vector<double> w(static_cast<std::size_t>(in.int_size()), 0.0);
    for (std::size_t i = 0; i < t.primes.size(); ++i)
        w[static_cast<std::size_t>(static_cast<i64>(t.primes[i]) - in.int_lo)] = t.weights[i];

    u64 lo3 = 2, hi3 = in.X; // p3 < X
    if (opt.strict_window) {
        lo3 = std::max<u64>(lo3, in.anchor.b_star_lo);
        hi3 = std::min<u64>(hi3, in.anchor.b_star_hi);
    }
    // p3 = N0 - p1 - p2 with p1 + p2 in [2 int_lo, 2 int_hi]
    lo3 = std::max<i64>(static_cast<i64>(lo3), N0 - 2 * in.int_hi);
    hi3 = std::min<i64>(static_cast<i64>(hi3), N0 - 2 * in.int_lo + 1);

    long double weighted = 0;
    for (u64 p3 = lo3; p3 < hi3; ++p3) {
        if (!contains(in.sys, p3) || !is_prime(p3)) continue;
        const i64 rest = N0 - static_cast<i64>(p3);
        const double l3 = std::log(static_cast<double>(p3));
        for (std::size_t i = 0; i < t.primes.size(); ++i) {
            const i64 p2 = rest - static_cast<i64>(t.primes[i]);
            if (p2 < in.int_lo) break;
            if (p2 > in.int_hi) continue;
            const double w2 = w[static_cast<std::size_t>(p2 - in.int_lo)];
            if (w2 == 0) continue;
            ++res.count;
            weighted += static_cast<long double>(t.weights[i]) * w2 * l3;
            if (!res.found) {
                res.found = true;
                res.sample = {N0, t.primes[i], static_cast<u64>(p2), p3, t.weights[i] * w2 * l3};
                if (!opt.exhaustive) {
                    res.weighted = static_cast<double>(weighted);
                    return res;
                }
            }
        }
    }
    res.weighted = static_cast<double>(weighted);
    return res;
}

double vinogradov_ratio(i64 N0, u64 P_cut) {
    if (N0 % 2 == 0) throw ConfigError("vinogradov_ratio: N0 must be odd");
    if (N0 < 7 || N0 > 1000000) throw RangeError("vinogradov_ratio: N0 must lie in [7, 10^6]");
    std::vector<u64> ps = primes_up_to(static_cast<u64>(N0));
    std::vector<double> lg(static_cast<std::size_t>(N0) + 1, 0.0);
    for (u64 p : ps) lg[p] = std::log(static_cast<double>(p));
    const i64 np = static_cast<i64>(ps.size());
    std::vector<long double> part(ps.size(), 0.0L);
#pragma omp parallel for schedule(dynamic, 64)
    for (i64 i = 0; i < np; ++i) {
        const i64 rest = N0 - static_cast<i64>(ps[static_cast<std::size_t>(i)]);
        long double acc = 0;
        for (u64 p1 : ps) {
            i64 p2 = rest - static_cast<i64>(p1);
            if (p2 < 2) break;
            acc += static_cast<long double>(lg[p1]) * lg[static_cast<std::size_t>(p2)];
        }
        part[static_cast<std::size_t>(i)] = acc * lg[ps[static_cast<std::size_t>(i)]];
    }
    long double R = pairwise_sum(part);
    double S = singular_series(N0, P_cut).value;
    return static_cast<double>(R / (0.5L * S * static_cast<long double>(N0) * N0));
}

std::map<std::string, std::string> parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    auto trim = [](std::string s) {
        const char *ws = " \t\r\n";
        s.erase(0, s.find_first_not_of(ws));
        s.erase(s.find_last_not_of(ws) + 1);
        return s;
    };
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

} // namespace gb
