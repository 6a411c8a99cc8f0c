#pragma once

#include "qlink/error.hpp"
#include "qlink/timetag.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace qlink::tagio {

QLINK_DEFINE_ERROR(BadMagic);
QLINK_DEFINE_ERROR(BadHeader);
QLINK_DEFINE_ERROR(TruncatedFile);
QLINK_DEFINE_ERROR(UnsortedRecords);
QLINK_DEFINE_ERROR(BadRecord);
QLINK_DEFINE_ERROR(IoFailure);

enum class Party : std::uint8_t { Alice = 0, Bob = 1 };

// In-memory image of a tag file. Tag times are picoseconds here; on disk
// they are unsigned counts of resolution_ps, so a file can only represent
// non-negative times that are multiples of its resolution.
struct TagFile {
    std::uint32_t resolution_ps = 1;
    Party party = Party::Alice;
    TagStream tags;
};

// 8-byte magic, u32 resolution, u8 party, u64 record count; little-endian.
inline constexpr std::size_t kTagHeaderBytes = 21;
// u64 time, u8 channel, 7 reserved zero bytes.
inline constexpr std::size_t kTagRecordBytes = 16;

// Exact inverses of each other on every buffer decode accepts, so any
// accepted byte string re-serializes identically.
std::vector<std::uint8_t> encode(const TagFile& file);
TagFile decode(const std::uint8_t* data, std::size_t size);
TagFile decode(const std::vector<std::uint8_t>& buffer);

void write_tag_file(const std::filesystem::path& path, const TagFile& file);
TagFile read_tag_file(const std::filesystem::path& path);

} // namespace qlink::tagio
