#include "elb/service.hpp"

#include <functional>

#include "elb/api.hpp"

namespace elb::service {
namespace {

using io::json;

Response error(int status, const std::string& code, const std::string& message) {
  return {status, json{{"error", message}, {"code", code}}.dump()};
}

Response guarded(const std::function<json()>& f) {
  try {
    return {200, io::dump(f())};
  } catch (const io::InputError& e) {
    return error(400, "malformed", e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, "malformed", e.what());
  } catch (const DegenerateError& e) {
    return error(422, "degenerate", e.what());
  } catch (const CuspError& e) {
    return error(422, "degenerate", e.what());
  } catch (const AngleConstraintViolation& e) {
    return error(422, "inadmissible", e.what());
  } catch (const std::exception& e) {
    return error(500, "internal", e.what());
  }
}

json curve_body(const std::string& body) {
  const json j = io::parse(body);
  // Accepts a bare curve or {"curve": {...}}.
  if (j.is_object() && j.contains("curve")) return j.at("curve");
  return j;
}

}  // namespace

Response handle_residual(const std::string& body) {
  return guarded([&] { return api::residual(io::curve_from_json(curve_body(body))); });
}

Response handle_project(const std::string& body) {
  return guarded([&] { return api::project(api::project_request_from_json(io::parse(body))); });
}

Response handle_approximate(const std::string& body) {
  return guarded([&] { return api::approximate(io::curve_from_json(curve_body(body))); });
}

Response handle_zone_boundary() {
  return guarded([] { return api::zone_boundary(); });
}

}  // namespace elb::service
