#include "bjaudit/json_out.hpp"

#include <cmath>

#include "bjaudit/csv.hpp"

namespace bjaudit {

namespace {

void write(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, value, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? csv::format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  out += '\n';
  return out;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json to_json(const ApproxParams& p) {
  // q and tau are infinite together; JSON has no infinity, so spell it.
  const auto num_or_inf = [](double x) { return std::isinf(x) ? Json("inf") : Json(x); };
  return Json{{"theta", p.theta()}, {"q", num_or_inf(p.q())}, {"s", p.s()}, {"tau", num_or_inf(p.tau())}};
}

Json to_json(const AuditReport& r) {
  Json j;
  j["inequality_name"] = r.inequality_name;
  j["params"] = r.params ? to_json(*r.params) : Json(nullptr);
  j["constant_name"] = r.constant_name;
  j["constant"] = finite_or_null(r.constant);
  j["abs_tol"] = r.abs_tol;
  j["grid"] = r.grid;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["min_margin"] = r.min_margin ? finite_or_null(*r.min_margin) : Json(nullptr);
  j["violated"] = r.violated;
  j["witness_t"] = r.witness_t ? Json(*r.witness_t) : Json(nullptr);
  return j;
}

}  // namespace bjaudit
