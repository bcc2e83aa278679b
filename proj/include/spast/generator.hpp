#pragma once

#include <cstdint>
#include <string>

#include "spast/instance.hpp"

namespace spast {

struct GenParams {
    int n1 = 0, n2 = 0, n3 = 0;
    int total_project_cap = 0;  // c_P
    int total_lecturer_cap = 0; // d_L
    int l_min = 1, l_max = 1;   // student list length bounds
    double t_s = 0.0, t_l = 0.0;
    double popularity_ratio = 5.0;
    std::uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument
};

/// Named parameter sets: SIZE1..SIZE10, TIES1..TIES11, PREF1..PREF10,
/// SCALS1..SCALS5, SCALP1..SCALP6. The returned params carry seed 0.
GenParams preset(const std::string& name);

/// Deterministic in params.seed: capacities spread with max difference 1,
/// student lists sampled without replacement under linear popularity
/// weights, adjacent entries tied with probability t_s, lecturer lists
/// derived from the student lists, shuffled, tied with probability t_l.
Instance generate(const GenParams& params);

/// xoshiro256** seeded through splitmix64; portable across platforms,
/// unlike the standard library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    /// uniform in [0, bound), bound >= 1, by rejection (no modulo bias)
    std::uint64_t below(std::uint64_t bound);
    /// uniform in [0, 1) with 53 bits
    double real();
    bool chance(double p) { return real() < p; }
    template <class T> void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t s_[4];
};

/// Per-instance stream for batch generation: master seed XOR index.
inline std::uint64_t instance_seed(std::uint64_t master, std::uint64_t index) {
    return master ^ index;
}

} // namespace spast
