#pragma once

namespace covlat {

/// Selects the OpenMP kernel or the serial reference it is tested against.
/// Both produce identical results.
enum class Execution { serial, parallel };

}  // namespace covlat
