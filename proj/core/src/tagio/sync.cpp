#include "qlink/tagio/sync.hpp"

#include "qlink/coinc/offset.hpp"
#include "wire.hpp"

#include <algorithm>
#include <limits>

namespace qlink::tagio {
namespace {

constexpr std::uint32_t kMaxFramePayload = (1u << 28) + 16;

inline TimePs floor_div(TimePs num, TimePs den) {
    TimePs q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0)))
        --q;
    return q;
}

Frame expect(Transport& t, FrameType type) {
    Frame f = read_frame(t);
    if (f.type != type)
        throw ProtocolViolation("unexpected frame type " +
                                std::to_string(static_cast<int>(f.type)));
    return f;
}

void check_payload_size(const Frame& f, std::size_t size) {
    if (f.payload.size() != size)
        throw ProtocolViolation("frame payload has the wrong size");
}

void send_hello(Transport& t, Role role, std::uint32_t resolution) {
    Frame f{FrameType::Hello, {}};
    f.payload.push_back(static_cast<std::uint8_t>(role));
    wire::put_u32(f.payload, resolution);
    write_frame(t, f);
}

void receive_hello(Transport& t, Role expected_peer, std::uint32_t resolution) {
    const Frame f = expect(t, FrameType::Hello);
    check_payload_size(f, 5);
    if (f.payload[0] != static_cast<std::uint8_t>(expected_peer))
        throw ProtocolViolation("peer announced the wrong role");
    if (wire::get_u32(f.payload.data() + 1) != resolution)
        throw VersionMismatch("peer uses a different tag resolution");
}

TimePs run_alice(const TagStream& tags, Transport& t, const SyncParams& p) {
    send_hello(t, Role::Alice, p.resolution_ps);
    receive_hello(t, Role::Bob, p.resolution_ps);

    if (tags.empty())
        throw coinc::NoPeak("cannot synchronize an empty stream");

    // Probe window: the leading probe_span of our own stream, with the
    // peer's histogram padded by the search range on both sides. The origin
    // sits on the bin grid so the peer's bins coincide with the absolute
    // bins the offline correlation would use.
    const TimePs bw = p.bin_width_ps;
    const TimePs t0 = floor_div(tags.front().time, bw) * bw;
    const TimePs origin = floor_div(t0 - p.search_range_ps, bw) * bw;
    const TimePs end = t0 + p.probe_span_ps + p.search_range_ps;
    const TimePs bins = floor_div(end - origin + bw - 1, bw);
    if (bins <= 0 || bins > static_cast<TimePs>(p.max_bins))
        throw ProtocolViolation("probe window needs an unreasonable bin count");

    Frame req{FrameType::HistReq, {}};
    wire::put_i64(req.payload, origin);
    wire::put_u32(req.payload, static_cast<std::uint32_t>(bw));
    wire::put_u32(req.payload, static_cast<std::uint32_t>(bins));
    write_frame(t, req);

    const Frame resp = expect(t, FrameType::HistResp);
    check_payload_size(resp, static_cast<std::size_t>(bins) * 4);

    // Rebuild the peer's binned arrivals as surrogate tags on bin starts;
    // they land in the same absolute bins, so feeding them through the
    // offline engine reproduces its result exactly.
    TagStream surrogate;
    for (TimePs k = 0; k < bins; ++k) {
        const std::uint32_t count =
            wire::get_u32(resp.payload.data() + static_cast<std::size_t>(k) * 4);
        surrogate.insert(surrogate.end(), count, TimeTag{origin + k * bw, 0});
    }

    TagStream probe;
    for (const TimeTag& tag : tags) {
        if (tag.time >= t0 + p.probe_span_ps)
            break;
        probe.push_back(tag);
    }

    const TimePs offset = coinc::find_offset(probe, surrogate, p.search_range_ps, bw);

    Frame off{FrameType::Offset, {}};
    wire::put_i64(off.payload, offset);
    write_frame(t, off);
    expect(t, FrameType::Bye);
    return offset;
}

TimePs run_bob(const TagStream& tags, Transport& t, const SyncParams& p) {
    receive_hello(t, Role::Alice, p.resolution_ps);
    send_hello(t, Role::Bob, p.resolution_ps);

    const Frame req = expect(t, FrameType::HistReq);
    check_payload_size(req, 16);
    const TimePs origin = wire::get_i64(req.payload.data());
    const std::uint32_t bw = wire::get_u32(req.payload.data() + 8);
    const std::uint32_t bins = wire::get_u32(req.payload.data() + 12);
    if (bw == 0 || bins == 0 || bins > p.max_bins)
        throw ProtocolViolation("histogram request out of bounds");

    std::vector<std::uint32_t> counts(bins, 0);
    const TimePs width = bw;
    const TimePs end = origin + static_cast<TimePs>(bins) * width;
    for (const TimeTag& tag : tags) {
        if (tag.time < origin || tag.time >= end)
            continue;
        std::uint32_t& cell = counts[static_cast<std::size_t>((tag.time - origin) / width)];
        if (cell != std::numeric_limits<std::uint32_t>::max())
            ++cell;
    }
    Frame resp{FrameType::HistResp, {}};
    resp.payload.reserve(counts.size() * 4);
    for (const std::uint32_t c : counts)
        wire::put_u32(resp.payload, c);
    write_frame(t, resp);

    const Frame off = expect(t, FrameType::Offset);
    check_payload_size(off, 8);
    const TimePs offset = wire::get_i64(off.payload.data());

    write_frame(t, Frame{FrameType::Bye, {}});
    return offset;
}

} // namespace

void write_frame(Transport& transport, const Frame& frame) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(5 + frame.payload.size());
    wire::put_u32(bytes, static_cast<std::uint32_t>(frame.payload.size() + 1));
    bytes.push_back(static_cast<std::uint8_t>(frame.type));
    bytes.insert(bytes.end(), frame.payload.begin(), frame.payload.end());
    transport.send(bytes.data(), bytes.size());
}

Frame read_frame(Transport& transport) {
    std::uint8_t head[4];
    transport.recv(head, 4);
    const std::uint32_t length = wire::get_u32(head);
    if (length == 0)
        throw ProtocolViolation("frame length must count the type byte");
    if (length > kMaxFramePayload)
        throw ProtocolViolation("frame too large");

    Frame frame;
    std::uint8_t type = 0;
    transport.recv(&type, 1);
    if (type < 1 || type > 5)
        throw ProtocolViolation("unknown frame type " + std::to_string(type));
    frame.type = static_cast<FrameType>(type);
    frame.payload.resize(length - 1);
    if (!frame.payload.empty())
        transport.recv(frame.payload.data(), frame.payload.size());
    return frame;
}

TimePs run_sync(Role role, const TagStream& tags, Transport& transport,
                const SyncParams& params) {
    if (params.bin_width_ps <= 0 || params.search_range_ps < params.bin_width_ps ||
        params.probe_span_ps <= 0 ||
        params.bin_width_ps > std::numeric_limits<std::uint32_t>::max())
        throw ProtocolViolation("sync parameters out of range");
    return role == Role::Alice ? run_alice(tags, transport, params)
                               : run_bob(tags, transport, params);
}

} // namespace qlink::tagio
