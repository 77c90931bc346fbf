#pragma once

#include <doctest.h>

#include <filesystem>
#include <string>

#include "oracles.hpp"

// Fresh scratch directory per call site.
inline std::filesystem::path scratch(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::path(RADIOMARK_TEST_TMP) / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}
