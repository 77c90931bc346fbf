#pragma once

namespace radiomark {

/// Selects between the OpenMP kernel and the serial reference path.
/// Both paths produce bit-identical results; the serial one is kept for
/// testing and benchmarking.
enum class Execution { serial, parallel };

}  // namespace radiomark
