#pragma once

#include "goldbach/common.hpp"
#include "goldbach/digits.hpp"

#include <map>
#include <string>
#include <vector>

namespace gb {

double gamma_star();

struct PSConfig {
    double gamma0 = 1.0;
    double c0 = 1.0;
    double delta0 = 1.0 / 24;
    int precision_bits = 64;
    bool strict = true;
};

/// delta0 <= 0 selects half of the admissible maximum (1 - 9(1-gamma0))/12.
/// strict mode requires gamma0 > gamma_star(); otherwise gamma0 in (0.9, 1].
PSConfig make_ps_config(double gamma0, double delta0 = 0.0, int precision_bits = 64,
                        bool strict = true);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n);

int mobius(u64 n);
u64 euler_phi(u64 n);

/// Certified floor(n^{c0}) for n >= 1.
u64 ps_floor(const PSConfig &cfg, u64 n);

bool is_ps_prime(const PSConfig &cfg, u64 p);

/// Primes p in [lo, hi] of the form floor(n^{c0}), increasing.
std::vector<u64> enumerate_ps(const PSConfig &cfg, u64 lo, u64 hi);
std::vector<u64> enumerate_ps_serial(const PSConfig &cfg, u64 lo, u64 hi);

double ps_weight(const PSConfig &cfg, u64 p);

struct InstanceConstants {
    int C1 = 3, C2 = 6, C3 = 6, C4 = 6, C5 = 8;

    /// Overrides from a flat key=value map; unknown keys are errors.
    static InstanceConstants from_map(const std::map<std::string, std::string> &kv);
};

struct GoldbachInstance {
    i64 N0 = 0;
    int k = 0;
    u64 X = 0;
    DigitSystem sys;
    AnchorWindow anchor;
    i64 int_lo = 0;
    i64 int_hi = 0;
    InstanceConstants C;
    double logX = 0, Q0 = 0, L0 = 0, L1 = 0;

    i64 int_size() const { return int_hi - int_lo + 1; }
};

GoldbachInstance make_instance(i64 N0, int a0, InstanceConstants C = {});

/// PS-primes in Int(N0) with their weights.
struct PSTable {
    std::vector<u64> primes;
    std::vector<double> weights;
};

PSTable ps_table(const PSConfig &cfg, const GoldbachInstance &inst);

cplx ps_expsum(const PSConfig &cfg, const GoldbachInstance &inst, double theta);
cplx ps_expsum(const PSTable &t, double theta);
/// S at the exact rational frequency a/den.
cplx ps_expsum_rational(const PSTable &t, i64 a, i64 den);

double ps_major_residual(const PSConfig &cfg, const GoldbachInstance &inst, i64 c, i64 q,
                         double xi);

} // namespace gb
