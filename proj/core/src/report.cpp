#include "pfunc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace pfunc {

namespace {

using ojson = nlohmann::ordered_json;

void write_number(std::ostream& out, double v) {
  if (!std::isfinite(v)) {
    out << "null";
    return;
  }
  if (v == 0.0) v = 0.0;  // drop the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

// nlohmann prints floats in shortest round-trip form; reports use %.17g.
void write(std::ostream& out, const ojson& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner << ojson(it.key()).dump() << ": ";
        write(out, it.value(), indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      if (scalars) {
        out << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out << ", ";
          write(out, j[k], indent + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out << ",\n";
        out << inner;
        write(out, j[k], indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case ojson::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

ojson check_json(const CheckReport& r) {
  ojson j;
  j["id"] = r.checkId;
  j["pass"] = r.pass;
  j["vacuous"] = r.vacuous;
  j["kind"] = to_string(r.kind);
  j["worst_residual"] = r.worstResidual;
  j["worst_location"] = r.worstLocation;
  j["tolerance"] = r.tolerance;
  j["stats"] = {{"min", r.stats.min}, {"max", r.stats.max}, {"mean", r.stats.mean}};
  ojson prov = ojson::object();
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  j["provenance"] = prov;
  ojson extras = ojson::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = extras;
  ojson subs = ojson::array();
  for (const auto& s : r.subchecks) subs.push_back(check_json(s));
  j["subchecks"] = subs;
  j["notes"] = r.notes;
  j["error"] = r.error ? ojson(*r.error) : ojson(nullptr);
  return j;
}

std::string render(const ojson& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

}  // namespace

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::AtLeast: return "ge";
    case CheckKind::AtMost: return "le";
    case CheckKind::Exceeds: return "gt";
  }
  return "?";
}

bool outcome_matches(const CheckReport& r, const std::string& expect) {
  if (expect == "pass") return r.pass && !r.error;
  if (expect == "fail") return !r.pass && !r.error;
  if (expect == "vacuous") return r.pass && r.vacuous;
  if (expect == "error") return r.error.has_value();
  if (expect.rfind("error:", 0) == 0) {
    const std::string code = expect.substr(6);
    return r.error && r.error->rfind(code + ":", 0) == 0;
  }
  return false;
}

std::string to_json(const CheckReport& report) { return render(check_json(report)); }

std::string to_json(const JobReport& r) {
  ojson j;
  j["schema"] = kReportSchema;
  j["jobId"] = r.jobId;
  j["equation"] = r.equation;
  j["pfunction"] = r.pfunction;
  ojson field = ojson::object();
  for (const auto& [k, v] : r.field) field[k] = v;
  j["field"] = field;
  if (r.telemetry) {
    j["solverTelemetry"] = {{"solver", r.telemetry->solver},
                            {"iterations", r.telemetry->iterations},
                            {"residualHistory", r.telemetry->residualHistory},
                            {"recheckResidual", r.telemetry->recheckResidual}};
  } else {
    j["solverTelemetry"] = nullptr;
  }
  ojson checks = ojson::array();
  for (const auto& c : r.checks) {
    ojson cj = check_json(c.report);
    cj["expect"] = c.expect;
    cj["as_expected"] = c.asExpected;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["error"] = r.error ? ojson(*r.error) : ojson(nullptr);
  j["asExpected"] = r.asExpected;
  j["wallTimeMs"] = r.wallTimeMs;
  return render(j);
}

}  // namespace pfunc
