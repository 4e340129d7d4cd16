#include "expunge/certificate_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace expunge {

using nlohmann::json;

namespace {

json row_json(const RowIndex& row) { return json(row.parts()); }

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorCode::ParseError, "certificate: " + message);
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return obj.at(key);
}

Int integer(const json& value, const char* what) {
  if (!value.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return value.get<Int>();
}

std::vector<Int> integers(const json& value, const char* what) {
  if (!value.is_array()) parse_fail(std::string(what) + " must be an array");
  std::vector<Int> out;
  for (const auto& v : value) out.push_back(integer(v, what));
  return out;
}

RowIndex parse_row(const json& value) {
  auto parts = integers(value, "row");
  if (parts.empty()) parse_fail("empty row");
  return RowIndex(std::move(parts));
}

std::vector<RowIndex> parse_rows(const json& value) {
  if (!value.is_array()) parse_fail("row list must be an array");
  std::vector<RowIndex> out;
  for (const auto& row : value) out.push_back(parse_row(row));
  return out;
}

}  // namespace

std::string serialize_certificate(const Certificate& cert) {
  json doc;
  doc["format"] = std::string(kCertificateFormat);
  doc["case"] = {{"g", cert.params.g}, {"r", cert.params.r}, {"d", cert.params.d}, {"m", cert.params.m}};
  doc["delta"] = cert.sequence.entries();
  doc["shift"] = cert.sequence.shift();
  doc["w"] = cert.w.entries;
  json selected = json::array();
  for (const auto& row : cert.selected) selected.push_back(row_json(row));
  doc["selected"] = selected;
  json steps = json::array();
  for (const auto& step : cert.steps) {
    json s;
    s["rule"] = std::string(to_string(step.rule));
    s["column"] = step.column;
    json rows = json::array();
    for (const auto& row : step.rows) rows.push_back(row_json(row));
    s["rows"] = rows;
    json params = json::object();
    if (step.j) params["j"] = *step.j;
    if (step.n) params["n"] = *step.n;
    if (step.witness) params["witness"] = *step.witness;
    s["params"] = params;
    steps.push_back(s);
  }
  doc["steps"] = steps;
  return doc.dump(2) + "\n";
}

Certificate parse_certificate(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  const auto& format = field(doc, "format");
  if (!format.is_string() || format.get<std::string>() != kCertificateFormat)
    parse_fail("unsupported format version");
  const auto& c = field(doc, "case");
  const Int g = integer(field(c, "g"), "g"), r = integer(field(c, "r"), "r");
  const Int d = integer(field(c, "d"), "d"), m = integer(field(c, "m"), "m");
  const CaseParams params = CaseParams::make(g, r, d, m);
  GrdSequence seq = GrdSequence::validate(integers(field(doc, "delta"), "delta"), g, r, d,
                                          integer(field(doc, "shift"), "shift"));
  TwistVector w{integers(field(doc, "w"), "w"), mul(m, d)};
  if (w.genus() != g) parse_fail("w must have g-1 entries");

  std::vector<RuleStep> steps;
  const auto& steps_json = field(doc, "steps");
  if (!steps_json.is_array()) parse_fail("steps must be an array");
  for (const auto& s : steps_json) {
    const auto& rule_text = field(s, "rule");
    if (!rule_text.is_string()) parse_fail("rule must be a string");
    RuleStep step;
    step.rule = parse_rule(rule_text.get<std::string>());
    step.column = integer(field(s, "column"), "column");
    step.rows = parse_rows(field(s, "rows"));
    const auto& p = field(s, "params");
    if (!p.is_object()) parse_fail("params must be an object");
    for (const auto& [key, value] : p.items()) {
      if (key == "j")
        step.j = integer(value, "j");
      else if (key == "n")
        step.n = integer(value, "n");
      else if (key == "witness")
        step.witness = integer(value, "witness");
      else
        parse_fail("unknown step parameter '" + key + "'");
    }
    steps.push_back(std::move(step));
  }
  return Certificate{params, std::move(seq), std::move(w), parse_rows(field(doc, "selected")), std::move(steps)};
}

void write_certificate_file(const std::string& path, const Certificate& cert) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << serialize_certificate(cert);
}

Certificate read_certificate_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

}  // namespace expunge
