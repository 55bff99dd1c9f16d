#include <httplib.h>

#include <CLI11.hpp>
#include <iostream>

#include "elb/service.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HTTP service for the elastic-curve tools"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string origin = "*";
  app.add_option("--host", host, "bind address");
  app.add_option("--port", port, "port")->check(CLI::Range(1, 65535));
  app.add_option("--cors-origin", origin, "Access-Control-Allow-Origin value");
  CLI11_PARSE(app, argc, argv);

  httplib::Server server;
  elb::service::register_routes(server, origin);
  std::cerr << "listening on " << host << ':' << port << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot bind " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}
