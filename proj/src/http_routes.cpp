#include <httplib.h>

#include "elb/service.hpp"

namespace elb::service {

void register_routes(httplib::Server& server, const std::string& allowed_origin) {
  server.set_default_headers({{"Access-Control-Allow-Origin", allowed_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Post("/api/residual", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_residual(req.body));
  });
  server.Post("/api/project", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_project(req.body));
  });
  server.Post("/api/approximate", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_approximate(req.body));
  });
  server.Get("/api/zone-boundary", [reply](const httplib::Request&, httplib::Response& res) {
    reply(res, handle_zone_boundary());
  });
}

}  // namespace elb::service
