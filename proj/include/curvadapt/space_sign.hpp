#pragma once

namespace curvadapt {

/// Compact symmetric space (+1) or its noncompact dual (-1).
enum class SpaceSign : int { compact = 1, noncompact = -1 };

inline double sign_value(SpaceSign s) { return static_cast<double>(static_cast<int>(s)); }

}  // namespace curvadapt
