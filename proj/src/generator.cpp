#include "spast/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace spast {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

Rng::Rng(std::uint64_t seed) {
    for (auto& s : s_) s = splitmix64(seed);
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % bound;
}

double Rng::real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

void GenParams::validate() const {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("GenParams: " + what);
    };
    if (n1 < 1 || n2 < 1 || n3 < 1) fail("counts must be positive");
    if (n3 > n2) fail("more lecturers than projects");
    if (l_min < 1 || l_min > l_max || l_max > n2) fail("bad list length bounds");
    if (total_project_cap < n2) fail("c_P below one per project");
    if (total_lecturer_cap < n3) fail("d_L below one per lecturer");
    if (t_s < 0 || t_s > 1 || t_l < 0 || t_l > 1) fail("tie probability out of range");
    if (popularity_ratio < 1) fail("popularity_ratio must be >= 1");
}

GenParams preset(const std::string& name) {
    auto num_after = [&](size_t at) {
        try {
            size_t used = 0;
            int v = std::stoi(name.substr(at), &used);
            if (at + used != name.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw std::invalid_argument("unknown preset: " + name);
        }
    };
    auto size_shape = [](int n1) {
        GenParams p;
        p.n1 = n1;
        p.n2 = n1 * 6 / 10;
        p.n3 = n1 * 4 / 10;
        p.total_project_cap = n1 * 14 / 10;
        p.total_lecturer_cap = n1 * 12 / 10;
        p.l_min = 3;
        p.l_max = 5;
        p.t_s = p.t_l = 0.2;
        return p;
    };
    auto ties_shape = [] {
        GenParams p;
        p.n1 = 300;
        p.n2 = 250;
        p.n3 = 120;
        p.total_project_cap = 420;
        p.total_lecturer_cap = 360;
        p.l_min = 3;
        p.l_max = 5;
        p.t_s = p.t_l = 0.2;
        return p;
    };

    if (name.rfind("SCALS", 0) == 0) {
        int k = num_after(5);
        if (k < 1 || k > 5) throw std::invalid_argument("unknown preset: " + name);
        return size_shape(10000 * k);
    }
    if (name.rfind("SCALP", 0) == 0) {
        int k = num_after(5);
        if (k < 1 || k > 6) throw std::invalid_argument("unknown preset: " + name);
        GenParams p = size_shape(500);
        p.t_s = p.t_l = 0.4;
        p.l_min = p.l_max = 25 * k;
        return p;
    }
    if (name.rfind("SIZE", 0) == 0) {
        int k = num_after(4);
        if (k < 1 || k > 10) throw std::invalid_argument("unknown preset: " + name);
        return size_shape(100 * k);
    }
    if (name.rfind("TIES", 0) == 0) {
        int k = num_after(4);
        if (k < 1 || k > 11) throw std::invalid_argument("unknown preset: " + name);
        GenParams p = ties_shape();
        p.t_s = p.t_l = 0.05 * (k - 1);
        return p;
    }
    if (name.rfind("PREF", 0) == 0) {
        int k = num_after(4);
        if (k < 1 || k > 10) throw std::invalid_argument("unknown preset: " + name);
        GenParams p = ties_shape();
        p.l_min = p.l_max = k;
        return p;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

namespace {

// total split as evenly as possible: base everywhere, +1 for a random
// subset, so any two values differ by at most 1
std::vector<int> spread_capacity(int total, int count, Rng& rng) {
    std::vector<int> caps(count, total / count);
    int extra = total % count;
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int t = 0; t < extra; ++t) ++caps[order[t]];
    return caps;
}

// merges consecutive singletons into tie groups with probability p
PrefList tie_up(const std::vector<int>& seq, double p, Rng& rng) {
    PrefList pl;
    for (size_t t = 0; t < seq.size(); ++t) {
        if (t > 0 && rng.chance(p))
            pl.groups.back().push_back(seq[t]);
        else
            pl.groups.push_back({seq[t]});
    }
    return pl;
}

} // namespace

Instance generate(const GenParams& params) {
    params.validate();
    Rng rng(params.seed);

    Instance inst;
    inst.n_students = params.n1;
    inst.n_projects = params.n2;
    inst.n_lecturers = params.n3;

    inst.project_capacity = spread_capacity(params.total_project_cap, params.n2, rng);
    inst.lecturer_capacity =
        spread_capacity(params.total_lecturer_cap, params.n3, rng);

    // round-robin over a shuffled lecturer order
    std::vector<int> lect_order(params.n3);
    std::iota(lect_order.begin(), lect_order.end(), 1);
    rng.shuffle(lect_order);
    inst.project_lecturer.resize(params.n2);
    for (int j = 0; j < params.n2; ++j)
        inst.project_lecturer[j] = lect_order[j % params.n3];

    // linear popularity weights, most popular first
    std::vector<double> cum(params.n2);
    double acc = 0;
    for (int j = 0; j < params.n2; ++j) {
        acc += 1.0 + (params.popularity_ratio - 1.0) * (params.n2 - 1 - j) /
                         std::max(params.n2 - 1, 1);
        cum[j] = acc;
    }

    inst.student_prefs.resize(params.n1);
    std::vector<char> picked(params.n2 + 1, 0);
    for (int i = 0; i < params.n1; ++i) {
        int len = params.l_min +
                  static_cast<int>(rng.below(params.l_max - params.l_min + 1));
        std::vector<int> seq;
        seq.reserve(len);
        while (static_cast<int>(seq.size()) < len) {
            double u = rng.real() * acc;
            int j = static_cast<int>(
                        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin()) +
                    1;
            if (j > params.n2) j = params.n2;
            if (picked[j]) continue;
            picked[j] = 1;
            seq.push_back(j);
        }
        for (int j : seq) picked[j] = 0;
        inst.student_prefs[i] = tie_up(seq, params.t_s, rng);
    }

    // each lecturer ranks exactly the students that rank one of their
    // projects
    std::vector<std::vector<int>> rankers(params.n3 + 1);
    std::vector<char> seen(params.n3 + 1, 0);
    for (int i = 1; i <= params.n1; ++i) {
        std::vector<int> touched;
        for (int j : inst.student_prefs[i - 1].flat()) {
            int k = inst.project_lecturer[j - 1];
            if (!seen[k]) {
                seen[k] = 1;
                touched.push_back(k);
                rankers[k].push_back(i);
            }
        }
        for (int k : touched) seen[k] = 0;
    }
    inst.lecturer_prefs.resize(params.n3);
    for (int k = 1; k <= params.n3; ++k) {
        rng.shuffle(rankers[k]);
        inst.lecturer_prefs[k - 1] = tie_up(rankers[k], params.t_l, rng);
    }

    inst.validate();
    return inst;
}

} // namespace spast
