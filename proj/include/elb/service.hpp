#pragma once

#include <string>

namespace elb::service {

struct Response {
  int status = 200;
  std::string body;  // application/json
};

/// Pure request handlers: the response depends only on the request body.
/// Errors: 400 {"error", "code": "malformed"}, 422 {"error", "code": "degenerate" | "inadmissible"}.
Response handle_residual(const std::string& body);
Response handle_project(const std::string& body);
Response handle_approximate(const std::string& body);
Response handle_zone_boundary();

}  // namespace elb::service

namespace httplib {
class Server;
}

namespace elb::service {

/// Installs the /api routes and CORS handling on a server.
void register_routes(httplib::Server& server, const std::string& allowed_origin = "*");

}  // namespace elb::service
