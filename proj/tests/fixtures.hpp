#pragma once

#include <string>

#include "spast/instance.hpp"

namespace fixtures {

// Tight instance: the approximation returns size 2, the maximum stable
// matching has size 3 (ratio exactly 2/3).
inline const char* tight_text = R"(spa-st 1
counts 3 3 2
project 1 lecturer 1 cap 2
project 2 lecturer 1 cap 1
project 3 lecturer 2 cap 1
lecturer 1 cap 2 prefs 1 3
lecturer 2 cap 1 prefs 1 2 3
student 1 prefs ( 3 2 )
student 2 prefs 3
student 3 prefs 3 2 1
)";

// Counterexample instance: its HRT clone admits a stable matching whose
// pull-back is unstable.
inline const char* converse_text = R"(spa-st 1
counts 2 3 2
project 1 lecturer 1 cap 1
project 2 lecturer 1 cap 1
project 3 lecturer 2 cap 1
lecturer 1 cap 1 prefs 2 1
lecturer 2 cap 1 prefs 2
student 1 prefs 1 2
student 2 prefs 2 3
)";

// Four-student instance whose clone needs three dummies (two for l1, one
// for l2); max stable matching has size 4.
inline const char* clone_text = R"(spa-st 1
counts 4 4 2
project 1 lecturer 1 cap 2
project 2 lecturer 1 cap 2
project 3 lecturer 2 cap 2
project 4 lecturer 2 cap 1
lecturer 1 cap 2 prefs 2 4
lecturer 2 cap 2 prefs 4 ( 1 2 3 )
student 1 prefs 3
student 2 prefs 4 1 2
student 3 prefs 3
student 4 prefs ( 2 3 ) 4 1
)";

inline spast::Instance tight() { return spast::parse_instance(tight_text); }
inline spast::Instance converse() { return spast::parse_instance(converse_text); }
inline spast::Instance clone_src() { return spast::parse_instance(clone_text); }

} // namespace fixtures
