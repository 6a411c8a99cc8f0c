#include "qlink/tagio/transport.hpp"

#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

namespace qlink::tagio {
namespace {

struct Pipe {
    std::mutex mutex;
    std::condition_variable ready;
    std::deque<std::uint8_t> buffer;
    bool closed = false;

    void push(const std::uint8_t* data, std::size_t size) {
        {
            std::lock_guard lock(mutex);
            buffer.insert(buffer.end(), data, data + size);
        }
        ready.notify_all();
    }

    void pull(std::uint8_t* data, std::size_t size, double timeout_s) {
        std::unique_lock lock(mutex);
        std::size_t got = 0;
        while (got < size) {
            if (buffer.empty()) {
                if (closed)
                    throw TransportClosed("peer endpoint destroyed");
                if (!ready.wait_for(lock, std::chrono::duration<double>(timeout_s),
                                    [&] { return !buffer.empty() || closed; }))
                    throw Timeout("no data within the receive timeout");
                continue;
            }
            const std::size_t n = std::min(size - got, buffer.size());
            std::copy_n(buffer.begin(), n, data + got);
            buffer.erase(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(n));
            got += n;
        }
    }

    void close() {
        {
            std::lock_guard lock(mutex);
            closed = true;
        }
        ready.notify_all();
    }
};

class LoopbackEndpoint final : public Transport {
public:
    LoopbackEndpoint(std::shared_ptr<Pipe> out, std::shared_ptr<Pipe> in, double timeout_s)
        : out_(std::move(out)), in_(std::move(in)), timeout_s_(timeout_s) {}
    ~LoopbackEndpoint() override { out_->close(); }

    void send(const std::uint8_t* data, std::size_t size) override {
        bool closed;
        {
            std::lock_guard lock(out_->mutex);
            closed = out_->closed;
        }
        if (closed)
            throw TransportClosed("peer endpoint destroyed");
        out_->push(data, size);
    }

    void recv(std::uint8_t* data, std::size_t size) override {
        in_->pull(data, size, timeout_s_);
    }

private:
    std::shared_ptr<Pipe> out_;
    std::shared_ptr<Pipe> in_;
    double timeout_s_;
};

class TcpTransport final : public Transport {
public:
    TcpTransport(int fd, double timeout_s) : fd_(fd) {
        timeval tv{};
        tv.tv_sec = static_cast<long>(timeout_s);
        tv.tv_usec = static_cast<long>((timeout_s - static_cast<double>(tv.tv_sec)) * 1e6);
        setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
        int one = 1;
        setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    }
    ~TcpTransport() override { ::close(fd_); }

    void send(const std::uint8_t* data, std::size_t size) override {
        while (size > 0) {
            const ssize_t n = ::send(fd_, data, size, MSG_NOSIGNAL);
            if (n <= 0)
                throw TransportClosed("send failed: " + std::string(std::strerror(errno)));
            data += n;
            size -= static_cast<std::size_t>(n);
        }
    }

    void recv(std::uint8_t* data, std::size_t size) override {
        while (size > 0) {
            const ssize_t n = ::recv(fd_, data, size, 0);
            if (n == 0)
                throw TransportClosed("connection closed by peer");
            if (n < 0) {
                if (errno == EAGAIN || errno == EWOULDBLOCK)
                    throw Timeout("no data within the receive timeout");
                throw TransportClosed("recv failed: " + std::string(std::strerror(errno)));
            }
            data += n;
            size -= static_cast<std::size_t>(n);
        }
    }

private:
    int fd_;
};

} // namespace

std::pair<std::shared_ptr<Transport>, std::shared_ptr<Transport>> loopback_pair(double timeout_s) {
    auto ab = std::make_shared<Pipe>();
    auto ba = std::make_shared<Pipe>();
    return {std::make_shared<LoopbackEndpoint>(ab, ba, timeout_s),
            std::make_shared<LoopbackEndpoint>(ba, ab, timeout_s)};
}

std::unique_ptr<Transport> tcp_connect(const std::string& host, std::uint16_t port,
                                       double timeout_s) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const std::string service = std::to_string(port);
    if (getaddrinfo(host.c_str(), service.c_str(), &hints, &result) != 0 || !result)
        throw ConnectFailure("cannot resolve host: " + host);

    int fd = -1;
    for (addrinfo* ai = result; ai; ai = ai->ai_next) {
        fd = socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0)
            continue;
        if (connect(fd, ai->ai_addr, ai->ai_addrlen) == 0)
            break;
        ::close(fd);
        fd = -1;
    }
    freeaddrinfo(result);
    if (fd < 0)
        throw ConnectFailure("cannot connect to " + host + ":" + service);
    return std::make_unique<TcpTransport>(fd, timeout_s);
}

std::unique_ptr<Transport> tcp_listen_accept(std::uint16_t port, double timeout_s) {
    const int server = socket(AF_INET, SOCK_STREAM, 0);
    if (server < 0)
        throw ConnectFailure("cannot create listening socket");
    int one = 1;
    setsockopt(server, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (bind(server, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
        listen(server, 1) != 0) {
        ::close(server);
        throw ConnectFailure("cannot listen on port " + std::to_string(port));
    }

    timeval tv{};
    tv.tv_sec = static_cast<long>(timeout_s);
    tv.tv_usec = static_cast<long>((timeout_s - static_cast<double>(tv.tv_sec)) * 1e6);
    setsockopt(server, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);

    const int fd = accept(server, nullptr, nullptr);
    ::close(server);
    if (fd < 0) {
        if (errno == EAGAIN || errno == EWOULDBLOCK)
            throw Timeout("no incoming connection within the timeout");
        throw ConnectFailure("accept failed");
    }
    return std::make_unique<TcpTransport>(fd, timeout_s);
}

} // namespace qlink::tagio
