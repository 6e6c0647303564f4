#pragma once

#include <map>
#include <memory>
#include <string>

#include "yoshimura/config_space.hpp"

namespace yoshimura::api {

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;  ///< always JSON
};

struct ServiceOptions {
    std::uint64_t cap = kDefaultEnumerationCap;
    unsigned max_concurrent_searches = 2;
};

// Request handling for the /v1 JSON API.  Every response depends on the
// request alone; the service only bounds how many enumerations and searches
// run at once.
class Service {
public:
    explicit Service(ServiceOptions options = {});
    ~Service();

    Response handle(const Request& request) const;

private:
    struct Limiter;
    ServiceOptions options_;
    std::unique_ptr<Limiter> limiter_;
};

// Status code used for a library error type.
int status_for(const std::exception& e) noexcept;

// Port from YOSHIMURA_PORT, else 8080.
int default_port();

// HTTP front end for Service.  bind() with port 0 picks a free port.
class HttpServer {
public:
    explicit HttpServer(ServiceOptions options = {});
    ~HttpServer();

    int bind(const std::string& host, int port);
    void run();  ///< blocks until stop()
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Blocks serving the API until the process is stopped.
void serve(const std::string& host, int port, ServiceOptions options = {});

}  // namespace yoshimura::api
