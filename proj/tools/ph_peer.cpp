// Runs one private handshake between two peers over TCP, or emits
// deterministic test vectors for a seeded run.

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ph/sim.hpp"
#include "ph/vectors.hpp"

namespace {

using namespace ph;

constexpr int kExitOk = 0;
constexpr int kExitTransport = 1;
constexpr int kExitProtocolAbort = 2;

struct Address {
    std::string host;
    std::string port;
};

Address parse_address(const std::string& s) {
    auto colon = s.rfind(':');
    if (colon == std::string::npos || colon + 1 >= s.size()) {
        throw ConfigError("address must be host:port");
    }
    return {s.substr(0, colon), s.substr(colon + 1)};
}

class Socket {
public:
    explicit Socket(int fd) : fd_(fd) {}
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
    ~Socket() {
        if (fd_ >= 0) ::close(fd_);
    }

    int fd() const { return fd_; }

    void send_all(std::span<const std::uint8_t> data) {
        std::size_t off = 0;
        while (off < data.size()) {
            ssize_t n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
            if (n <= 0) throw ConfigError("send failed");
            off += static_cast<std::size_t>(n);
        }
    }

    void recv_exact(std::span<std::uint8_t> out) {
        std::size_t off = 0;
        while (off < out.size()) {
            ssize_t n = ::recv(fd_, out.data() + off, out.size() - off, 0);
            if (n <= 0) throw ConfigError("connection closed or receive timed out");
            off += static_cast<std::size_t>(n);
        }
    }

private:
    int fd_;
};

void set_timeouts(int fd) {
    timeval tv{};
    tv.tv_sec = 10;
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

Socket dial(const Address& addr) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (::getaddrinfo(addr.host.c_str(), addr.port.c_str(), &hints, &res) != 0 || !res) {
        throw ConfigError("cannot resolve " + addr.host + ":" + addr.port);
    }
    int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (fd < 0) {
        ::freeaddrinfo(res);
        throw ConfigError("cannot create socket");
    }
    if (::connect(fd, res->ai_addr, res->ai_addrlen) != 0) {
        ::freeaddrinfo(res);
        ::close(fd);
        throw ConfigError("connect failed");
    }
    ::freeaddrinfo(res);
    set_timeouts(fd);
    return Socket(fd);
}

Socket listen_once(const Address& addr) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    if (::getaddrinfo(addr.host.empty() ? nullptr : addr.host.c_str(), addr.port.c_str(),
                      &hints, &res) != 0 ||
        !res) {
        throw ConfigError("cannot resolve listen address");
    }
    int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (fd < 0) {
        ::freeaddrinfo(res);
        throw ConfigError("cannot create socket");
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, res->ai_addr, res->ai_addrlen) != 0 || ::listen(fd, 1) != 0) {
        ::freeaddrinfo(res);
        ::close(fd);
        throw ConfigError("bind/listen failed");
    }
    ::freeaddrinfo(res);
    int conn = ::accept(fd, nullptr, nullptr);
    ::close(fd);
    if (conn < 0) throw ConfigError("accept failed");
    set_timeouts(conn);
    return Socket(conn);
}

Bytes read_frame(Socket& sock) {
    Bytes header(kHeaderSize);
    sock.recv_exact(header);
    std::uint32_t length = (std::uint32_t(header[2]) << 24) | (std::uint32_t(header[3]) << 16) |
                           (std::uint32_t(header[4]) << 8) | std::uint32_t(header[5]);
    if (length > kMaxPayload) {
        throw FormatError(FormatErrorKind::Length, "declared payload exceeds transport cap");
    }
    Bytes frame = std::move(header);
    frame.resize(kHeaderSize + length);
    sock.recv_exact(std::span<std::uint8_t>(frame.data() + kHeaderSize, length));
    return frame;
}

struct MsgLog {
    bool enabled = false;
    std::size_t n = 0;

    void log(Dir dir, std::span<const std::uint8_t> bytes) {
        if (!enabled) return;
        std::cout << "msg " << n++ << " " << to_string(dir) << " " << to_hex(bytes) << "\n";
    }
};

std::string join_matched(const std::set<std::string>& ids) {
    if (ids.empty()) return "(none)";
    std::string out;
    for (const std::string& id : ids) {
        if (!out.empty()) out += ",";
        out += id;
    }
    return out;
}

template <typename Machine>
int drive(Machine& machine, Socket& sock, Role role, MsgLog& log) {
    Dir out_dir = role == Role::Initiator ? Dir::IToR : Dir::RToI;
    Dir in_dir = role == Role::Initiator ? Dir::RToI : Dir::IToR;

    if (role == Role::Initiator) {
        Bytes first = encode(machine.start());
        log.log(out_dir, first);
        sock.send_all(first);
    }
    while (!machine.done()) {
        Bytes frame = read_frame(sock);
        log.log(in_dir, frame);
        WireMessage msg = decode(frame);
        for (const WireMessage& reply : machine.on_message(msg)) {
            Bytes bytes = encode(reply);
            log.log(out_dir, bytes);
            sock.send_all(bytes);
        }
    }
    return kExitOk;
}

const char* abort_name(SingleHandshake::Abort a) {
    switch (a) {
        case SingleHandshake::Abort::None: return "none";
        case SingleHandshake::Abort::BadElement: return "bad-element";
        case SingleHandshake::Abort::BadState: return "unexpected-message";
    }
    return "?";
}

const char* abort_name(MultiHandshake::Abort a) {
    switch (a) {
        case MultiHandshake::Abort::None: return "none";
        case MultiHandshake::Abort::BadElement: return "bad-element";
        case MultiHandshake::Abort::BadState: return "unexpected-message";
        case MultiHandshake::Abort::TagCountMismatch: return "tag-count-mismatch";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"private handshake peer"};

    std::string listen_addr, connect_addr, protocol_name, creds_path, group_path, seed_hex,
        vectors_path;
    std::size_t m_flag = 0;
    std::vector<std::string> hide_ids;

    auto* listen_opt = app.add_option("--listen", listen_addr, "accept one peer at host:port");
    auto* connect_opt = app.add_option("--connect", connect_addr, "connect to a peer");
    app.add_option("--protocol", protocol_name, "single|multi")->required();
    app.add_option("--creds", creds_path, "credential file (id:hex lines)");
    app.add_option("--m", m_flag, "membership cap (multi protocol tag count)");
    app.add_option("--group", group_path, "group parameter file (hex p, q, g)");
    app.add_option("--hide", hide_ids, "group id to hide this session (repeatable)");
    app.add_option("--seed", seed_hex, "deterministic session seed, hex (test only)");
    app.add_option("--emit-vectors", vectors_path, "write seeded test vectors and exit");
    listen_opt->excludes(connect_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        Protocol protocol;
        if (protocol_name == "single") protocol = Protocol::Single;
        else if (protocol_name == "multi") protocol = Protocol::Multi;
        else throw ConfigError("--protocol must be single or multi");

        GroupParams params =
            group_path.empty() ? GroupParams::modp2048() : GroupParams::load_file(group_path);

        NodeConfig node;
        if (!creds_path.empty()) {
            CredentialFile cf = load_credentials(creds_path);
            node.creds = cf.secrets;
            if (cf.max_memberships) node.m = *cf.max_memberships;
        }
        if (m_flag > 0) node.m = m_flag;
        for (const std::string& id : hide_ids) node.hidden.insert(id);

        std::optional<Bytes> seed;
        if (!seed_hex.empty()) seed = from_hex(seed_hex);

        if (!vectors_path.empty()) {
            if (!seed) throw ConfigError("--emit-vectors requires --seed");
            VectorConfig cfg{protocol, params, node.creds, node.hidden, node.m, *seed};
            write_vectors_file(vectors_path, cfg);
            std::cout << "vectors written: " << vectors_path << "\n";
            return kExitOk;
        }

        if (listen_addr.empty() == connect_addr.empty()) {
            throw ConfigError("exactly one of --listen / --connect required");
        }
        Role role = connect_addr.empty() ? Role::Responder : Role::Initiator;

        std::unique_ptr<RandomSource> rng;
        if (seed) {
            rng = std::make_unique<Drbg>(role_stream(*seed, role));
        } else {
            rng = std::make_unique<SystemRandom>();
        }

        Socket sock = role == Role::Initiator ? dial(parse_address(connect_addr))
                                              : listen_once(parse_address(listen_addr));

        MsgLog log;
        log.enabled = seed.has_value();

        std::set<std::string> matched;
        const char* abort = "none";
        if (protocol == Protocol::Single) {
            SingleHandshake machine = build_single_machine(node, role, params, *rng);
            drive(machine, sock, role, log);
            matched = machine.outcome()->matched;
            abort = abort_name(machine.abort_reason());
            if (machine.abort_reason() != SingleHandshake::Abort::None) {
                std::cerr << "abort: " << abort << "\n";
                return kExitProtocolAbort;
            }
        } else {
            MultiHandshake machine = build_multi_machine(node, role, params, *rng);
            drive(machine, sock, role, log);
            matched = machine.outcome()->matched;
            abort = abort_name(machine.abort_reason());
            if (machine.abort_reason() != MultiHandshake::Abort::None) {
                std::cerr << "abort: " << abort << "\n";
                return kExitProtocolAbort;
            }
        }

        std::cout << "matched: " << join_matched(matched) << "\n";
        std::cout << "session-key: established\n";
        return kExitOk;
    } catch (const FormatError& e) {
        std::cerr << "format error (" << to_string(e.kind) << "): " << e.what() << "\n";
        return kExitTransport;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    }
}
