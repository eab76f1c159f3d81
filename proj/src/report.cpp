#include "srlab/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

namespace srlab {

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Info: return "info";
  }
  return "?";
}

const char* origin_name(RefOrigin o) {
  switch (o) {
    case RefOrigin::Published: return "published";
    case RefOrigin::Exact: return "exact";
    case RefOrigin::Derived: return "derived";
  }
  return "?";
}

void append_escaped(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int Report::failures() const {
  int n = 0;
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) ++n;
  return n;
}

std::string to_json(const Report& r) {
  std::string out;
  out += "{\n  \"command\": ";
  append_escaped(out, r.command);
  out += ",\n  \"args\": {";
  bool first = true;
  for (const auto& [k, v] : r.args) {
    if (!first) out += ", ";
    first = false;
    append_escaped(out, k);
    out += ": ";
    append_escaped(out, v);
  }
  out += "},\n  \"seed\": " + std::to_string(r.seed);
  out += ",\n  \"deterministic\": ";
  out += r.deterministic ? "true" : "false";
  out += ",\n  \"checks\": [\n";
  for (size_t i = 0; i < r.checks.size(); ++i) {
    const Check& c = r.checks[i];
    out += "    {\"name\": ";
    append_escaped(out, c.name);
    out += ", \"status\": ";
    append_escaped(out, status_name(c.status));
    out += ", \"measured\": " + format_double(c.measured);
    out += ", \"reference\": " + format_double(c.reference);
    out += ", \"tolerance\": " + format_double(c.tolerance);
    out += ", \"origin\": ";
    append_escaped(out, origin_name(c.origin));
    if (!c.note.empty()) {
      out += ", \"note\": ";
      append_escaped(out, c.note);
    }
    out += i + 1 < r.checks.size() ? "},\n" : "}\n";
  }
  out += "  ],\n  \"summary\": {\"pass\": ";
  int pass = 0, fail = 0, info = 0;
  for (const auto& c : r.checks) {
    if (c.status == CheckStatus::Pass) ++pass;
    else if (c.status == CheckStatus::Fail) ++fail;
    else ++info;
  }
  out += std::to_string(pass) + ", \"fail\": " + std::to_string(fail) +
         ", \"info\": " + std::to_string(info) + "}\n}\n";
  return out;
}

std::string to_json(const ModulusReport& r) {
  std::string out = "{\"primal\": " + format_double(r.primal);
  out += ", \"dual_bound\": " + format_double(r.dual_bound);
  out += ", \"max_violation\": " + format_double(r.max_violation);
  out += ", \"iterations\": " + std::to_string(r.iterations) + "}";
  return out;
}

std::string to_json(const MeasureNetwork& net) {
  std::string out = "{\"nodes\": [";
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    if (i) out += ", ";
    out += "{\"id\": " + std::to_string(i) +
           ", \"mu\": " + format_double(net.nodes[i].mu);
    if (net.nodes[i].coords) {
      const auto& c = *net.nodes[i].coords;
      out += ", \"coords\": [" + format_double(c.c1) + ", " + format_double(c.c2) +
             ", " + format_double(c.c3) + "]";
    }
    out += "}";
  }
  out += "], \"edges\": [";
  for (size_t e = 0; e < net.edges.size(); ++e) {
    if (e) out += ", ";
    out += "{\"i\": " + std::to_string(net.edges[e].i) +
           ", \"j\": " + std::to_string(net.edges[e].j) +
           ", \"len\": " + format_double(net.edges[e].len) + "}";
  }
  out += "]}";
  return out;
}

MeasureNetwork network_from_json(std::istream& is) {
  nlohmann::json j;
  is >> j;
  MeasureNetwork net;
  if (!j.contains("nodes") || !j.contains("edges"))
    throw std::invalid_argument("network JSON needs nodes and edges arrays");
  const auto& nodes = j.at("nodes");
  net.nodes.resize(nodes.size());
  for (const auto& nj : nodes) {
    const size_t id = nj.at("id").get<size_t>();
    if (id >= net.nodes.size()) throw std::invalid_argument("node id out of range");
    net.nodes[id].mu = nj.at("mu").get<double>();
    if (nj.contains("coords")) {
      const auto& c = nj.at("coords");
      net.nodes[id].coords =
          GroupPoint{GroupId::Heisenberg, c.at(0).get<double>(),
                     c.at(1).get<double>(), c.at(2).get<double>()};
    }
  }
  for (const auto& ej : j.at("edges"))
    net.edges.push_back({ej.at("i").get<int>(), ej.at("j").get<int>(),
                         ej.at("len").get<double>()});
  validate_network(net);
  return net;
}

}  // namespace srlab
