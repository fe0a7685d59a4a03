#include "textevo/archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string_view>
#include <utility>

#include "textevo/error.hpp"

namespace textevo {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::archive_format, what); }

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(Errc::unreadable_source, "cannot open " + file.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t le16(const std::string& b, std::size_t at) {
    if (at + 2 > b.size()) fail("zip: truncated record");
    return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8;
}

std::uint32_t le32(const std::string& b, std::size_t at) { return le16(b, at) | le16(b, at + 2) << 16; }

std::string inflate_raw(std::string_view data, std::size_t expected) {
    std::string out(expected, '\0');
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) fail("zip: inflateInit failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected) fail("zip: corrupt deflate stream");
    return out;
}

// NUL-terminated field of a tar header.
std::string tar_field(const char* p, std::size_t len) {
    const std::size_t n = strnlen(p, len);
    return std::string(p, n);
}

std::uint64_t tar_octal(const char* p, std::size_t len) {
    if (static_cast<unsigned char>(p[0]) & 0x80) fail("tar: base-256 sizes are not supported");
    std::uint64_t v = 0;
    std::size_t i = 0;
    while (i < len && (p[i] == ' ' || p[i] == '\0')) ++i;
    for (; i < len && p[i] >= '0' && p[i] <= '7'; ++i) v = v * 8 + static_cast<std::uint64_t>(p[i] - '0');
    return v;
}

std::string pax_path(std::string_view records) {
    std::string path;
    while (!records.empty()) {
        const auto space = records.find(' ');
        if (space == std::string_view::npos) break;
        const std::size_t len = std::stoul(std::string(records.substr(0, space)));
        if (len == 0 || len > records.size()) break;
        std::string_view rec = records.substr(space + 1, len - space - 1);
        if (!rec.empty() && rec.back() == '\n') rec.remove_suffix(1);
        if (rec.starts_with("path=")) path = std::string(rec.substr(5));
        records.remove_prefix(len);
    }
    return path;
}

}  // namespace

std::string gunzip(const std::string& bytes) {
    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) fail("gzip: inflateInit failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
    zs.avail_in = static_cast<uInt>(bytes.size());
    std::string out;
    char buf[1 << 15];
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            fail("gzip: corrupt stream");
        }
        out.append(buf, sizeof buf - zs.avail_out);
        if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
            inflateEnd(&zs);
            fail("gzip: truncated stream");
        }
    }
    inflateEnd(&zs);
    return out;
}

std::vector<ArchiveEntry> read_tar(const std::string& bytes) {
    std::vector<ArchiveEntry> entries;
    std::size_t at = 0;
    std::string pending_name;
    while (at + 512 <= bytes.size()) {
        const char* h = bytes.data() + at;
        if (std::all_of(h, h + 512, [](char c) { return c == '\0'; })) break;

        unsigned sum = 0;
        for (std::size_t i = 0; i < 512; ++i) {
            sum += (i >= 148 && i < 156) ? ' ' : static_cast<unsigned char>(h[i]);
        }
        if (sum != tar_octal(h + 148, 8)) fail("tar: header checksum mismatch");

        const std::uint64_t size = tar_octal(h + 124, 12);
        const char type = h[156];
        const std::size_t data_at = at + 512;
        if (data_at + size > bytes.size()) fail("tar: truncated entry");
        const std::string_view data(bytes.data() + data_at, size);
        at = data_at + (size + 511) / 512 * 512;

        if (type == 'L') {
            pending_name = tar_field(data.data(), data.size());
            continue;
        }
        if (type == 'x') {
            pending_name = pax_path(data);
            continue;
        }
        std::string name = tar_field(h, 100);
        if (std::memcmp(h + 257, "ustar", 5) == 0) {
            const std::string prefix = tar_field(h + 345, 155);
            if (!prefix.empty()) name = prefix + "/" + name;
        }
        if (!pending_name.empty()) name = std::exchange(pending_name, {});
        if (type == '0' || type == '\0' || type == '7') entries.push_back({name, std::string(data)});
    }
    return entries;
}

std::vector<ArchiveEntry> read_zip(const std::string& bytes) {
    if (bytes.size() < 22) fail("zip: too short");
    std::size_t eocd = std::string::npos;
    const std::size_t lowest = bytes.size() > 22 + 65535 ? bytes.size() - 22 - 65535 : 0;
    for (std::size_t p = bytes.size() - 22 + 1; p-- > lowest;) {
        if (le32(bytes, p) == 0x06054b50) {
            eocd = p;
            break;
        }
    }
    if (eocd == std::string::npos) fail("zip: end of central directory not found");
    const std::uint32_t count = le16(bytes, eocd + 10);
    const std::uint32_t cd_offset = le32(bytes, eocd + 16);
    if (count == 0xFFFF || cd_offset == 0xFFFFFFFF) fail("zip: zip64 archives are not supported");

    std::vector<ArchiveEntry> entries;
    std::size_t at = cd_offset;
    for (std::uint32_t e = 0; e < count; ++e) {
        if (le32(bytes, at) != 0x02014b50) fail("zip: bad central directory entry");
        const std::uint32_t flags = le16(bytes, at + 8);
        const std::uint32_t method = le16(bytes, at + 10);
        const std::uint32_t crc = le32(bytes, at + 16);
        const std::uint32_t csize = le32(bytes, at + 20);
        const std::uint32_t usize = le32(bytes, at + 24);
        const std::uint32_t name_len = le16(bytes, at + 28);
        const std::uint32_t extra_len = le16(bytes, at + 30);
        const std::uint32_t comment_len = le16(bytes, at + 32);
        const std::uint32_t local = le32(bytes, at + 42);
        if (at + 46 + name_len > bytes.size()) fail("zip: truncated name");
        std::string name = bytes.substr(at + 46, name_len);
        at += 46 + name_len + extra_len + comment_len;

        if (!name.empty() && name.back() == '/') continue;
        if (flags & 1) fail("zip: encrypted entry " + name);
        if (le32(bytes, local) != 0x04034b50) fail("zip: bad local header for " + name);
        const std::size_t data_at = local + 30 + le16(bytes, local + 26) + le16(bytes, local + 28);
        if (data_at + csize > bytes.size()) fail("zip: truncated data for " + name);
        const std::string_view raw(bytes.data() + data_at, csize);

        std::string data;
        if (method == 0) {
            data = std::string(raw);
        } else if (method == 8) {
            data = inflate_raw(raw, usize);
        } else {
            fail("zip: unsupported compression method for " + name);
        }
        const auto actual = crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
        if (actual != crc) fail("zip: CRC mismatch for " + name);
        entries.push_back({std::move(name), std::move(data)});
    }
    return entries;
}

bool looks_like_archive(const std::filesystem::path& file) {
    const std::string name = file.filename().string();
    auto ends = [&](std::string_view suffix) { return name.size() >= suffix.size() && name.ends_with(suffix); };
    return ends(".zip") || ends(".tar") || ends(".tgz") || ends(".tar.gz");
}

std::vector<ArchiveEntry> read_archive(const std::filesystem::path& file) {
    std::string bytes = read_file(file);
    if (bytes.size() >= 4 && bytes.compare(0, 4, "PK\x03\x04") == 0) return read_zip(bytes);
    if (bytes.size() >= 4 && bytes.compare(0, 4, "PK\x05\x06") == 0) return {};  // empty zip
    if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
        static_cast<unsigned char>(bytes[1]) == 0x8b) {
        bytes = gunzip(bytes);
    }
    return read_tar(bytes);
}

}  // namespace textevo
