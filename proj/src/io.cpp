#include "isospin/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "isospin/error.hpp"

namespace isospin {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep a marker that the value is floating point.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void dump(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) {
          out += nl;
          out += pad;
        }
        first = false;
        dump(e, indent, depth + 1, out);
      }
      if (!flat) {
        out += nl;
        out += close_pad;
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::InvalidFormat, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, std::string(what) + " is not finite");
  return v;
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  return out;
}

Json vector_to_json(std::span<const Complex> v) {
  Json arr = Json::array();
  for (const auto& z : v) arr.push_back(Json::array({z.real(), z.imag()}));
  return arr;
}

Json matrix_to_json(const ComplexMatrix& m) { return vector_to_json(m.entries()); }

Json channel_to_json(const KrausChannel& ch) {
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"label", ch.label()}, {"dim", ch.dim()}, {"kraus", kraus}};
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
    throw Error(ErrorCode::InvalidFormat, "channel JSON needs \"dim\" and \"kraus\"");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
    throw Error(ErrorCode::InvalidFormat, "\"dim\" must be a positive integer");
  const auto dim = j["dim"].get<std::size_t>();
  const std::string label = j.value("label", std::string("imported"));
  if (!j["kraus"].is_array() || j["kraus"].empty())
    throw Error(ErrorCode::InvalidFormat, "\"kraus\" must be a non-empty array");
  std::vector<ComplexMatrix> kraus;
  for (const auto& op : j["kraus"]) {
    if (!op.is_array() || op.size() != dim * dim)
      throw Error(ErrorCode::InvalidFormat, "each Kraus operator needs dim*dim entries");
    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (const auto& z : op) {
      if (!z.is_array() || z.size() != 2)
        throw Error(ErrorCode::InvalidFormat, "entries are [re, im] pairs");
      entries.emplace_back(number_at(z[0], "re"), number_at(z[1], "im"));
    }
    kraus.emplace_back(dim, dim, std::move(entries));
  }
  return KrausChannel(dim, std::move(kraus), label);
}

Json entropy_report_to_json(const EntropyReport& r, bool bits) {
  Json j;
  if (bits)
    j["min_entropy_bits"] = r.min_entropy / std::log(2.0);
  else
    j["min_entropy_nats"] = r.min_entropy;
  j["argmin"] = vector_to_json(r.argmin.amplitudes());
  j["restarts"] = r.restarts;
  j["converged"] = r.converged_restarts;
  j["seed"] = r.seed;
  return j;
}

Json check_results_to_json(const std::vector<CheckResult>& results) {
  Json arr = Json::array();
  for (const auto& c : results)
    arr.push_back(Json{{"name", c.name},
                       {"passed", c.passed},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"details", c.details}});
  return arr;
}

}  // namespace isospin
