#include "qlink/tagio/tag_file.hpp"

#include "wire.hpp"

#include <array>
#include <cstdio>
#include <limits>
#include <memory>

namespace qlink::tagio {
namespace {

constexpr std::array<std::uint8_t, 8> kMagic = {'Q', 'T', 'A', 'G', 'S', 0, 0, 1};

} // namespace

std::vector<std::uint8_t> encode(const TagFile& file) {
    if (file.resolution_ps == 0)
        throw BadHeader("resolution must be at least 1 ps per unit");
    if (file.party != Party::Alice && file.party != Party::Bob)
        throw BadHeader("party must be 0 or 1");

    std::vector<std::uint8_t> out;
    out.reserve(kTagHeaderBytes + kTagRecordBytes * file.tags.size());
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    wire::put_u32(out, file.resolution_ps);
    out.push_back(static_cast<std::uint8_t>(file.party));
    wire::put_u64(out, file.tags.size());

    const TimePs res = file.resolution_ps;
    TimePs prev = std::numeric_limits<TimePs>::min();
    for (const TimeTag& tag : file.tags) {
        if (tag.time < 0 || tag.time % res != 0)
            throw BadRecord("tag time is not a non-negative multiple of the resolution");
        if (tag.channel >= kChannelCount)
            throw BadRecord("channel out of range");
        if (tag.time < prev)
            throw UnsortedRecords("tags must be sorted by time");
        prev = tag.time;
        wire::put_u64(out, static_cast<std::uint64_t>(tag.time / res));
        out.push_back(tag.channel);
        out.insert(out.end(), 7, 0);
    }
    return out;
}

TagFile decode(const std::uint8_t* data, std::size_t size) {
    if (size < kTagHeaderBytes)
        throw TruncatedFile("shorter than the fixed header");
    for (std::size_t i = 0; i < kMagic.size(); ++i)
        if (data[i] != kMagic[i])
            throw BadMagic("magic bytes do not match");

    TagFile file;
    file.resolution_ps = wire::get_u32(data + 8);
    const std::uint8_t party = data[12];
    const std::uint64_t record_count = wire::get_u64(data + 13);
    if (file.resolution_ps == 0)
        throw BadHeader("resolution must be at least 1 ps per unit");
    if (party > 1)
        throw BadHeader("party must be 0 or 1");
    file.party = static_cast<Party>(party);

    if ((size - kTagHeaderBytes) % kTagRecordBytes != 0)
        throw TruncatedFile("trailing partial record");
    const std::uint64_t available = (size - kTagHeaderBytes) / kTagRecordBytes;
    if (record_count != available)
        throw TruncatedFile("record count disagrees with file size");

    // Times must stay representable as signed picoseconds after scaling.
    const std::uint64_t max_units =
        static_cast<std::uint64_t>(std::numeric_limits<TimePs>::max()) / file.resolution_ps;

    file.tags.reserve(record_count);
    const std::uint8_t* p = data + kTagHeaderBytes;
    TimePs prev = std::numeric_limits<TimePs>::min();
    for (std::uint64_t i = 0; i < record_count; ++i, p += kTagRecordBytes) {
        const std::uint64_t units = wire::get_u64(p);
        const std::uint8_t channel = p[8];
        if (channel >= kChannelCount)
            throw BadRecord("channel out of range");
        for (int r = 9; r < 16; ++r)
            if (p[r] != 0)
                throw BadRecord("reserved bytes must be zero");
        if (units > max_units)
            throw BadRecord("time does not fit the internal picosecond range");
        const TimePs t = static_cast<TimePs>(units) * file.resolution_ps;
        if (t < prev)
            throw UnsortedRecords("tags must be sorted by time");
        prev = t;
        file.tags.push_back({t, channel});
    }
    return file;
}

TagFile decode(const std::vector<std::uint8_t>& buffer) {
    return decode(buffer.data(), buffer.size());
}

void write_tag_file(const std::filesystem::path& path, const TagFile& file) {
    const auto bytes = encode(file);
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "wb"),
                                                       &std::fclose);
    if (!fp)
        throw IoFailure("cannot open for writing: " + path.string());
    if (!bytes.empty() && std::fwrite(bytes.data(), 1, bytes.size(), fp.get()) != bytes.size())
        throw IoFailure("short write: " + path.string());
}

TagFile read_tag_file(const std::filesystem::path& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "rb"),
                                                       &std::fclose);
    if (!fp)
        throw IoFailure("cannot open for reading: " + path.string());
    std::vector<std::uint8_t> bytes;
    std::uint8_t chunk[1 << 16];
    for (;;) {
        const std::size_t n = std::fread(chunk, 1, sizeof chunk, fp.get());
        bytes.insert(bytes.end(), chunk, chunk + n);
        if (n < sizeof chunk) {
            if (std::ferror(fp.get()))
                throw IoFailure("read failure: " + path.string());
            break;
        }
    }
    return decode(bytes);
}

} // namespace qlink::tagio
