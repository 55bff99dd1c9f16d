#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "elb/elastica.hpp"
#include "elb/elastica_fit.hpp"
#include "elb/feedback_projection.hpp"
#include "elb/geom.hpp"
#include "elb/harness.hpp"
#include "elb/residual.hpp"
#include "elb/zone.hpp"

namespace elb::io {

using json = nlohmann::json;

/// Malformed input: wrong shape, missing fields or non-finite numbers.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"control_points": [[x0,y0],[x1,y1],[x2,y2],[x3,y3]]}
json to_json(const CubicBezier& c);
/// Throws InputError on malformed input and DegenerateError when p0 == p3.
CubicBezier curve_from_json(const json& j);

/// {"k", "s_start", "s_end", "scale", "rotation", "translation": [x, y], "mirrored"}
json to_json(const ElasticaSegment& s);
ElasticaSegment segment_from_json(const json& j);

json to_json(const LambdaFit& f);
json to_json(const PolygonGeometry& g);
json to_json(const FitResult& r);
json to_json(const ProjectionReport& r);
json to_json(const FeedbackConfig& c);
json to_json(const harness::Stats& s);
json to_json(const harness::ExperimentSummary& s);

/// Parses text; InputError on syntax errors.
json parse(const std::string& text);

/// Reads a file, or standard input for "-".
std::string read_text(const std::string& path);
/// Writes via a temporary file and rename, or to standard output for "-".
void write_text_atomic(const std::string& path, const std::string& text);

/// Compact dump; doubles use the shortest representation that round-trips exactly.
std::string dump(const json& j, int indent = -1);

/// printf("%.17g")
std::string format_double(double v);

/// Points along a curve, uniform in parameter.
std::vector<Point2> polyline(const CubicBezier& c, int n);
std::vector<Point2> polyline(const ElasticaSegment& s, int n);
/// 128 to 512 points, growing with the curve's turning.
int polyline_density(const CubicBezier& c);
json to_json(const std::vector<Point2>& pts);

}  // namespace elb::io
