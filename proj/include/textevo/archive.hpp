#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace textevo {

struct ArchiveEntry {
    std::string path;  // '/'-separated, as stored
    std::string data;
};

bool looks_like_archive(const std::filesystem::path& file);

/// Regular-file entries of a zip, tar or gzip-compressed tar, in stored order.
std::vector<ArchiveEntry> read_archive(const std::filesystem::path& file);

std::vector<ArchiveEntry> read_tar(const std::string& bytes);
std::vector<ArchiveEntry> read_zip(const std::string& bytes);
std::string gunzip(const std::string& bytes);

}  // namespace textevo
