#pragma once

#include <string>
#include <vector>

#include "spast/instance.hpp"

namespace spast {

// Blocking-pair kinds. A pair can block because both sides have room
// (3a), because the lecturer is full but would swap (3b, split by whether
// the student already holds one of that lecturer's projects), or because
// the project is full but holds a worse student (3c).
enum class BlockKind { K3a, K3bi, K3bii, K3c };

const char* kind_name(BlockKind k);

struct BlockingPair {
    int student = 0;
    int project = 0;
    BlockKind kind = BlockKind::K3a;

    bool operator==(const BlockingPair&) const = default;
};

/// Exhaustive scan over all acceptable (s_i, p_j) not in m. Deliberately
/// the naive O(m * c) check so it can serve as an oracle for everything
/// else. Throws if m is not a valid matching for inst.
std::vector<BlockingPair> find_blocking_pairs(const Instance& inst,
                                              const Matching& m);

bool is_stable(const Instance& inst, const Matching& m);

/// The condition-(*) reformulation of stability: every pair the student
/// would rather have must be excused by a full lecturer or full project
/// holding only weakly better students.
bool satisfies_condition_star(const Instance& inst, const Matching& m);

} // namespace spast
