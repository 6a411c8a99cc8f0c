#pragma once

#include "qlink/error.hpp"
#include "qlink/tagio/transport.hpp"
#include "qlink/timetag.hpp"

#include <cstdint>
#include <vector>

namespace qlink::tagio {

QLINK_DEFINE_ERROR(VersionMismatch);
QLINK_DEFINE_ERROR(ProtocolViolation);

enum class Role : std::uint8_t { Alice = 0, Bob = 1 };

// Frame layout on the wire: u32 length (little-endian), u8 type, payload;
// length counts the type byte plus the payload.
enum class FrameType : std::uint8_t {
    Hello = 1,    // u8 role, u32 resolution (ps per tag unit)
    HistReq = 2,  // i64 origin ps, u32 bin width ps, u32 bin count
    HistResp = 3, // u32 count per requested bin
    Offset = 4,   // i64 agreed offset ps
    Bye = 5,
};

struct Frame {
    FrameType type = FrameType::Bye;
    std::vector<std::uint8_t> payload;
};

void write_frame(Transport& transport, const Frame& frame);
Frame read_frame(Transport& transport); // ProtocolViolation on unknown type

struct SyncParams {
    std::uint32_t resolution_ps = 1;
    TimePs probe_span_ps = 10'000'000'000; // leading slice of data that drives the search
    TimePs search_range_ps = 1'000'000;
    TimePs bin_width_ps = 1'000;
    std::uint32_t max_bins = 1u << 26; // refuse histogram requests beyond this
};

// One offset-agreement session. Alice initiates, requests a histogram of
// Bob's arrival times, correlates it against her own tags with the same
// engine the offline analysis uses, and announces the result. Both roles
// return the agreed offset (Bob's clock minus Alice's).
TimePs run_sync(Role role, const TagStream& tags, Transport& transport,
                const SyncParams& params = {});

} // namespace qlink::tagio
