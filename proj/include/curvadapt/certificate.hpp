#pragma once

#include <string>

namespace curvadapt {

/// Outcome of an oracle run.  `distinct` and `contradiction` are negative verdicts.
enum class Verdict { equivalent, distinct, contradiction };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::equivalent: return "equivalent";
        case Verdict::distinct: return "distinct";
        case Verdict::contradiction: return "contradiction";
    }
    return "?";
}

}  // namespace curvadapt
