#include "goldbach/common.hpp"

#include <omp.h>

namespace gb {

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

int worker_threads() { return omp_get_max_threads(); }

void set_worker_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

} // namespace gb
