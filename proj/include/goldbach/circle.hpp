#pragma once

#include "goldbach/common.hpp"
#include "goldbach/expsum.hpp"
#include "goldbach/pshapiro.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gb {

/// [c/q - L/(qX), c/q + L/(qX)], read modulo 1.
struct Arc {
    i64 c = 1;
    i64 q = 1;
    double L = 0;
    double X = 1;

    double center() const { return static_cast<double>(c) / static_cast<double>(q); }
    double halfwidth() const { return L / (static_cast<double>(q) * X); }
    bool contains(double theta) const;
};

std::vector<Arc> major_arcs(const GoldbachInstance &inst);
u64 major_arc_count(const GoldbachInstance &inst);
bool arcs_pairwise_disjoint(const std::vector<Arc> &arcs);

struct Classification {
    bool major = false;
    i64 c = 0, q = 0;
    Approx witness;
    i64 witness_N = 1;
};

Classification classify(const GoldbachInstance &inst, double theta);

struct SparseExpSeries {
    std::vector<std::pair<i64, double>> support;

    /// Sorts and validates: n distinct and within [1, X].
    static SparseExpSeries make(std::vector<std::pair<i64, double>> terms, u64 X);
};

/// S_{c0}(a/X) for a = 1..X (index a-1), or only at the listed a.
struct SGrid {
    u64 X = 0;
    std::vector<i64> a;
    std::vector<cplx> S;
};

SGrid s_grid(const PSConfig &cfg, const GoldbachInstance &inst,
             const std::vector<Arc> *restrict_to = nullptr);

/// Grid points a in 1..X with a/X inside at least one arc.
std::vector<i64> grid_points(u64 X, const std::vector<Arc> &arcs);

cplx j_functional(const GoldbachInstance &inst, const SparseExpSeries &E, const PSConfig &cfg,
                  const std::vector<Arc> *restrict_to = nullptr);
cplx j_functional(const GoldbachInstance &inst, const SparseExpSeries &E, const SGrid &grid);
cplx j_functional_serial(const GoldbachInstance &inst, const SparseExpSeries &E, const SGrid &grid);

double m_mean(const GoldbachInstance &inst, const SparseExpSeries &E, const PSConfig &cfg);

std::vector<bool> minor_set(const GoldbachInstance &inst, const PSConfig &cfg,
                            const std::vector<double> &grid);

std::vector<u64> exceptional_set(int a0, int k);
std::vector<u64> exceptional_set_serial(int a0, int k);

enum class MBClass { M1, M2, M3, Outside };

struct MBResult {
    MBClass cls = MBClass::Outside;
    i64 d = 0;
    i64 r = 1;
    double v = 0;
};

MBResult mb_classify(const GoldbachInstance &inst, i64 b);

const char *to_string(MBClass c);

} // namespace gb
