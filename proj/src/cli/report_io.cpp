#include "mnv/cli/report_io.hpp"

#include <charconv>
#include <cstdio>

namespace mnv {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json to_json(const VerificationReport& r, bool with_millis) {
    Json j;
    j["check"] = r.check;
    j["status"] = r.passed ? "pass" : "fail";
    j["degree"] = r.degree;
    j["terms"] = r.terms;
    if (with_millis) j["millis"] = r.millis;
    if (!r.failure.empty()) j["failure"] = r.failure;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

VerificationReport verification_from_json(const Json& j) {
    VerificationReport r;
    r.check = j.at("check").get<std::string>();
    r.passed = j.at("status").get<std::string>() == "pass";
    r.degree = j.at("degree").get<unsigned>();
    r.terms = j.at("terms").get<std::size_t>();
    r.millis = j.value("millis", 0.0);
    r.failure = j.value("failure", std::string());
    r.detail = j.value("detail", std::string());
    return r;
}

Json to_json(const QuadratureReport& r) {
    Json j;
    j["s"] = r.s;
    j["tolerance"] = r.tolerance;
    j["value"] = r.value;
    j["tail_correction"] = r.tail_correction;
    j["inner_estimate_error"] = r.inner_estimate_error;
    j["radius_used"] = r.radius_used;
    j["cells"] = r.cells;
    return j;
}

QuadratureReport quadrature_from_json(const Json& j) {
    QuadratureReport r;
    r.s = j.at("s").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.value = j.at("value").get<double>();
    r.tail_correction = j.at("tail_correction").get<double>();
    r.inner_estimate_error = j.at("inner_estimate_error").get<double>();
    r.radius_used = j.at("radius_used").get<double>();
    r.cells = j.at("cells").get<std::size_t>();
    return r;
}

Json to_json(const ProbeSeries& p) {
    Json j;
    j["kind"] = p.kind;
    j["field"] = p.field;
    j["phi"] = p.phi;
    j["s"] = p.s;
    j["abscissae"] = p.abscissae;
    j["values"] = p.values;
    j["extrapolated_limit"] = p.extrapolated_limit;
    j["method"] = p.method;
    j["reference"] = p.reference ? Json(*p.reference) : Json(nullptr);
    j["sup"] = p.sup;
    return j;
}

ProbeSeries probe_from_json(const Json& j) {
    ProbeSeries p;
    p.kind = j.at("kind").get<std::string>();
    p.field = j.at("field").get<std::string>();
    p.phi = j.at("phi").get<double>();
    p.s = j.at("s").get<double>();
    p.abscissae = j.at("abscissae").get<std::vector<double>>();
    p.values = j.at("values").get<std::vector<double>>();
    p.extrapolated_limit = j.at("extrapolated_limit").get<double>();
    p.method = j.at("method").get<std::string>();
    if (!j.at("reference").is_null()) p.reference = j.at("reference").get<double>();
    p.sup = j.at("sup").get<double>();
    return p;
}

Json to_json(const GeometryReport& g, bool with_millis) {
    Json j;
    j["conformal"] = Json::array({to_json(g.conformal[0], with_millis), to_json(g.conformal[1], with_millis)});
    j["potential"] = to_json(g.potential, with_millis);
    j["sign_convention"] = g.sign_convention;
    j["sign_samples"] = g.sign_samples;
    return j;
}

GeometryReport geometry_from_json(const Json& j) {
    GeometryReport g;
    g.conformal[0] = verification_from_json(j.at("conformal").at(0));
    g.conformal[1] = verification_from_json(j.at("conformal").at(1));
    g.potential = verification_from_json(j.at("potential"));
    g.sign_convention = j.at("sign_convention").get<int>();
    g.sign_samples = j.at("sign_samples").get<std::size_t>();
    return g;
}

}  // namespace mnv
