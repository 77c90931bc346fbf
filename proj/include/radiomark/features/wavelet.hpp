#pragma once

#include <map>
#include <string>

#include "radiomark/imaging/volume.hpp"
#include "radiomark/parallel.hpp"

namespace radiomark {

/// Single-level undecimated 3D Haar decomposition.
///
/// Each axis (x, then y, then z) is filtered with low-pass (1, 1)/sqrt(2) or
/// high-pass (1, -1)/sqrt(2) over the sample and its successor; the last
/// sample is mirrored (x[n] = x[n-1]). Sub-band keys name the filter per
/// axis in x, y, z order ("LLL" ... "HHH") and every sub-band keeps the
/// input dims. Throws DimsError when any axis has length 1.
std::map<std::string, Volume> wavelet_subbands(const Volume& volume, Execution exec = Execution::parallel);

}  // namespace radiomark
