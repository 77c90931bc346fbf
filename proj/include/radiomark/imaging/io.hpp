#pragma once

#include <filesystem>

#include "radiomark/imaging/volume.hpp"

namespace radiomark {

/// Reads a volume from either an uncompressed or gzip-compressed NIfTI-1
/// single file (int16, uint16, float32, float64) or the raw format: a
/// little-endian float32 `<name>.f32` blob plus a `<name>.json` sidecar
/// holding `dims` and `spacing`. Either file of a raw pair may be named.
///
/// Throws UnknownFormatError, UnsupportedDatatypeError or PayloadSizeError
/// for malformed inputs and IoError when the file cannot be read.
Volume load_volume(const std::filesystem::path& path);

/// Loads a volume and binarises it (nonzero voxels are in the ROI).
RoiMask load_mask(const std::filesystem::path& path);

/// Writes `<stem>.f32` and `<stem>.json`. The payload is the float32 cast of
/// every voxel in x-fastest order; the sidecar is written with fixed key
/// order so identical volumes give identical bytes.
void write_raw(const Volume& volume, const std::filesystem::path& stem);
void write_raw(const RoiMask& mask, const Spacing& spacing, const std::filesystem::path& stem);

}  // namespace radiomark
