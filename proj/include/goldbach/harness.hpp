#pragma once

#include "goldbach/common.hpp"
#include "goldbach/pshapiro.hpp"

#include <map>
#include <string>

namespace gb {

struct RepresentationRecord {
    i64 N0 = 0;
    u64 p1 = 0, p2 = 0, p3 = 0;
    double weight = 0;
};

struct VerifyResult {
    bool found = false;
    u64 count = 0;
    double weighted = 0;
    RepresentationRecord sample;
    GoldbachInstance inst;
};

struct VerifyOptions {
    bool exhaustive = false;
    /// Restrict p3 to the anchored window A* instead of all of A.
    bool strict_window = false;
    InstanceConstants C;
};

/// N0 = p1 + p2 + p3 with p1, p2 PS-primes in Int(N0) and p3 a prime
/// avoiding a0. Ordered pairs (p1, p2) are counted.
VerifyResult verify_hybrid(i64 N0, int a0, double gamma0, const VerifyOptions &opt = {});

/// Log-weighted count of ordered prime triples summing to N0, over
/// (1/2) S(N0) N0^2 with the singular series truncated at P_cut.
double vinogradov_ratio(i64 N0, u64 P_cut);

/// Flat key=value lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string &path);

} // namespace gb
