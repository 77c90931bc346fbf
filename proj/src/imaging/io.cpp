#include "radiomark/imaging/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

#include "radiomark/error.hpp"

namespace radiomark {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kNiftiHeaderSize = 348;

enum NiftiType : std::int16_t { kInt16 = 4, kFloat32 = 16, kFloat64 = 64, kUint16 = 512 };

template <typename T>
T byteswap_value(T value) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
}

template <typename T>
T read_at(const std::vector<unsigned char>& buf, std::size_t offset, bool swap) {
    T value;
    std::memcpy(&value, buf.data() + offset, sizeof(T));
    return swap ? byteswap_value(value) : value;
}

/// Whole file, gunzipped when it carries the gzip magic (zlib passes plain
/// files through unchanged).
std::vector<unsigned char> read_all(const fs::path& path) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) throw IoError("cannot open '" + path.string() + "'");
    std::vector<unsigned char> out;
    std::array<unsigned char, 1 << 16> chunk{};
    for (;;) {
        const int got = gzread(file, chunk.data(), static_cast<unsigned>(chunk.size()));
        if (got < 0) {
            gzclose(file);
            throw IoError("read error in '" + path.string() + "'");
        }
        if (got == 0) break;
        out.insert(out.end(), chunk.begin(), chunk.begin() + got);
    }
    gzclose(file);
    return out;
}

bool has_suffix(const fs::path& path, const std::string& suffix) {
    const std::string s = path.string();
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Volume load_nifti(const fs::path& path, const std::vector<unsigned char>& buf) {
    bool swap = false;
    const auto sizeof_hdr = read_at<std::int32_t>(buf, 0, false);
    if (sizeof_hdr != static_cast<std::int32_t>(kNiftiHeaderSize)) {
        if (byteswap_value(sizeof_hdr) != static_cast<std::int32_t>(kNiftiHeaderSize))
            throw UnknownFormatError("'" + path.string() + "': bad NIfTI header size");
        swap = true;
    }
    if (std::memcmp(buf.data() + 344, "n+1\0", 4) != 0)
        throw UnknownFormatError("'" + path.string() + "': missing NIfTI-1 single-file magic");

    std::array<std::int16_t, 8> dim{};
    for (std::size_t i = 0; i < dim.size(); ++i) dim[i] = read_at<std::int16_t>(buf, 40 + 2 * i, swap);
    const auto datatype = read_at<std::int16_t>(buf, 70, swap);
    std::array<float, 8> pixdim{};
    for (std::size_t i = 0; i < pixdim.size(); ++i) pixdim[i] = read_at<float>(buf, 76 + 4 * i, swap);
    const auto vox_offset = read_at<float>(buf, 108, swap);
    const auto scl_slope = read_at<float>(buf, 112, swap);
    const auto scl_inter = read_at<float>(buf, 116, swap);

    if (dim[0] < 1 || dim[0] > 7) throw UnknownFormatError("'" + path.string() + "': invalid dim[0]");
    for (int i = 4; i <= dim[0]; ++i)
        if (dim[i] != 1) throw DimsError("'" + path.string() + "': only 3D volumes are supported");
    Dims dims{1, 1, 1};
    std::size_t* axes[3] = {&dims.nx, &dims.ny, &dims.nz};
    for (int i = 1; i <= std::min<int>(dim[0], 3); ++i) {
        if (dim[i] < 1) throw DimsError("'" + path.string() + "': non-positive dimension");
        *axes[i - 1] = static_cast<std::size_t>(dim[i]);
    }
    Spacing spacing{1, 1, 1};
    double* sp[3] = {&spacing.sx, &spacing.sy, &spacing.sz};
    for (int i = 1; i <= std::min<int>(dim[0], 3); ++i) {
        const double p = std::fabs(pixdim[i]);
        *sp[i - 1] = p > 0 ? p : 1.0;
    }

    std::size_t bytes_per = 0;
    switch (datatype) {
        case kInt16:
        case kUint16: bytes_per = 2; break;
        case kFloat32: bytes_per = 4; break;
        case kFloat64: bytes_per = 8; break;
        default:
            throw UnsupportedDatatypeError("'" + path.string() + "': unsupported NIfTI datatype " +
                                           std::to_string(datatype));
    }
    const auto offset = static_cast<std::size_t>(std::max(vox_offset, static_cast<float>(kNiftiHeaderSize)));
    const std::size_t need = dims.count() * bytes_per;
    if (buf.size() < offset || buf.size() - offset != need)
        throw PayloadSizeError("'" + path.string() + "': header declares " + std::to_string(need) +
                               " payload bytes, file holds " +
                               std::to_string(buf.size() > offset ? buf.size() - offset : 0));

    const bool scale = scl_slope != 0.0f && std::isfinite(scl_slope) && std::isfinite(scl_inter);
    std::vector<double> voxels(dims.count());
    for (std::size_t i = 0; i < voxels.size(); ++i) {
        const std::size_t at = offset + i * bytes_per;
        double v = 0;
        switch (datatype) {
            case kInt16: v = read_at<std::int16_t>(buf, at, swap); break;
            case kUint16: v = read_at<std::uint16_t>(buf, at, swap); break;
            case kFloat32: v = read_at<float>(buf, at, swap); break;
            default: v = read_at<double>(buf, at, swap); break;
        }
        voxels[i] = scale ? static_cast<double>(scl_slope) * v + static_cast<double>(scl_inter) : v;
    }
    return Volume(dims, spacing, std::move(voxels));
}

fs::path sibling(const fs::path& path, const std::string& ext) {
    fs::path out = path;
    out.replace_extension(ext);
    return out;
}

Volume load_raw(const fs::path& any_of_pair) {
    const fs::path header_path = sibling(any_of_pair, ".json");
    const fs::path payload_path = sibling(any_of_pair, ".f32");
    std::ifstream hs(header_path);
    if (!hs) throw IoError("cannot open raw header '" + header_path.string() + "'");
    json header;
    try {
        hs >> header;
    } catch (const json::exception& e) {
        throw UnknownFormatError("'" + header_path.string() + "': malformed JSON header: " + e.what());
    }
    if (!header.contains("dims") || !header.contains("spacing") || header["dims"].size() != 3 ||
        header["spacing"].size() != 3)
        throw UnknownFormatError("'" + header_path.string() + "': header needs 3-element dims and spacing");
    const auto d = header["dims"].get<std::vector<long long>>();
    for (auto v : d)
        if (v < 1) throw DimsError("'" + header_path.string() + "': non-positive dimension");
    const auto s = header["spacing"].get<std::vector<double>>();
    const Dims dims{static_cast<std::size_t>(d[0]), static_cast<std::size_t>(d[1]), static_cast<std::size_t>(d[2])};

    std::ifstream ps(payload_path, std::ios::binary);
    if (!ps) throw IoError("cannot open raw payload '" + payload_path.string() + "'");
    std::vector<char> bytes((std::istreambuf_iterator<char>(ps)), std::istreambuf_iterator<char>());
    if (bytes.size() != dims.count() * sizeof(float))
        throw PayloadSizeError("'" + payload_path.string() + "': header declares " +
                               std::to_string(dims.count()) + " floats, payload holds " +
                               std::to_string(bytes.size()) + " bytes");
    std::vector<double> voxels(dims.count());
    for (std::size_t i = 0; i < voxels.size(); ++i) {
        float f;
        std::memcpy(&f, bytes.data() + i * sizeof(float), sizeof(float));
        if constexpr (std::endian::native == std::endian::big) f = byteswap_value(f);
        voxels[i] = f;
    }
    return Volume(dims, Spacing{s[0], s[1], s[2]}, std::move(voxels));
}

void write_raw_payload(const std::vector<float>& values, const Dims& dims, const Spacing& spacing,
                       const fs::path& stem) {
    const fs::path payload_path = fs::path(stem.string() + ".f32");
    const fs::path header_path = fs::path(stem.string() + ".json");
    std::ofstream ps(payload_path, std::ios::binary);
    if (!ps) throw IoError("cannot write '" + payload_path.string() + "'");
    for (float f : values) {
        if constexpr (std::endian::native == std::endian::big) f = byteswap_value(f);
        ps.write(reinterpret_cast<const char*>(&f), sizeof f);
    }
    json header;
    header["dims"] = {dims.nx, dims.ny, dims.nz};
    header["spacing"] = {spacing.sx, spacing.sy, spacing.sz};
    std::ofstream hs(header_path);
    if (!hs) throw IoError("cannot write '" + header_path.string() + "'");
    hs << header.dump() << '\n';
}

}  // namespace

Volume load_volume(const fs::path& path) {
    if (has_suffix(path, ".f32") || (has_suffix(path, ".json") && fs::exists(sibling(path, ".f32"))))
        return load_raw(path);
    if (!fs::exists(path)) throw IoError("no such file '" + path.string() + "'");
    const auto buf = read_all(path);
    if (buf.size() < kNiftiHeaderSize) throw UnknownFormatError("'" + path.string() + "': unrecognised file format");
    return load_nifti(path, buf);
}

RoiMask load_mask(const fs::path& path) {
    const Volume v = load_volume(path);
    std::vector<std::uint8_t> flags(v.voxels().size());
    std::transform(v.voxels().begin(), v.voxels().end(), flags.begin(),
                   [](double x) { return static_cast<std::uint8_t>(x != 0.0); });
    return RoiMask(v.dims(), std::move(flags));
}

void write_raw(const Volume& volume, const fs::path& stem) {
    std::vector<float> values(volume.voxels().begin(), volume.voxels().end());
    write_raw_payload(values, volume.dims(), volume.spacing(), stem);
}

void write_raw(const RoiMask& mask, const Spacing& spacing, const fs::path& stem) {
    std::vector<float> values(mask.flags().begin(), mask.flags().end());
    write_raw_payload(values, mask.dims(), spacing, stem);
}

}  // namespace radiomark
