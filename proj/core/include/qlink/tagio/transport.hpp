#pragma once

#include "qlink/error.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

namespace qlink::tagio {

QLINK_DEFINE_ERROR(TransportClosed);
QLINK_DEFINE_ERROR(Timeout);
QLINK_DEFINE_ERROR(ConnectFailure);

// Reliable ordered byte pipe between the two parties.
class Transport {
public:
    virtual ~Transport() = default;
    virtual void send(const std::uint8_t* data, std::size_t size) = 0;
    // Blocks until exactly size bytes arrive. TransportClosed once the peer
    // is gone and the buffer is drained; Timeout if nothing shows up.
    virtual void recv(std::uint8_t* data, std::size_t size) = 0;
};

// In-memory duplex pair. Sends never block (unbounded buffering), so a test
// can pre-queue one side's whole conversation and run the other side to
// completion on a single thread; threaded full-duplex use works too.
std::pair<std::shared_ptr<Transport>, std::shared_ptr<Transport>>
loopback_pair(double timeout_s = 5.0);

std::unique_ptr<Transport> tcp_connect(const std::string& host, std::uint16_t port,
                                       double timeout_s = 30.0);
std::unique_ptr<Transport> tcp_listen_accept(std::uint16_t port, double timeout_s = 30.0);

} // namespace qlink::tagio
