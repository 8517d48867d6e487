#pragma once

namespace duc {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// results; the serial path exists for testing and benchmarking.
enum class Exec { serial, parallel };

}  // namespace duc
