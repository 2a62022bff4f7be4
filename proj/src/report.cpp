#include "qwass/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qwass {

namespace {

using nlohmann::json;

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json state_echo(const StateSpec& s) {
  if (s.bloch) return json::array({round12(s.bloch->r[0]), round12(s.bloch->r[1]), round12(s.bloch->r[2])});
  return matrix_to_json(s.state.matrix());
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({round12(m(i, j).real()), round12(m(i, j).imag())});
    rows.push_back(row);
  }
  return rows;
}

json echo_instance(const InstanceFile& file) {
  json j;
  if (file.rho) j["rho"] = state_echo(*file.rho);
  if (file.omega) j["omega"] = state_echo(*file.omega);
  j["cost"] = to_string(file.cost);
  j["observables"] = to_string(file.observables);
  j["p"] = round12(file.p);
  j["mode"] = to_string(file.mode);
  return j;
}

CertificateReport make_certificate(const SdpCertificate& cert) {
  return {round12(cert.max_primal_residual), round12(cert.dual_residual), round12(cert.min_eig_x),
          round12(cert.min_eig_s), round12(cert.relative_gap), cert.passed};
}

ReportRecord make_distance_record(const InstanceFile& file, const TransportResult& result, double seconds) {
  ReportRecord r;
  r.command = "distance";
  r.instance = echo_instance(file);
  r.status = to_string(result.status);
  r.iterations = result.iterations;
  r.primal = round12(result.primal);
  r.dual = round12(result.dual);
  r.gap = round12(result.gap);
  r.distance = round12(result.distance);
  r.dual_attained = result.dual_attained;
  r.degenerate = result.degenerate;
  r.certificate = make_certificate(result.certificate);
  if (const auto cf = closed_form_distance(file)) {
    r.closed_form = ClosedFormReport{cf->formula, round12(cf->value), round12(std::abs(result.primal - cf->value))};
  }
  r.seconds = round12(seconds);
  return r;
}

DivergenceReport make_divergence_report(const DivergenceResult& result) {
  return {round12(result.cross), round12(result.self_rho), round12(result.self_omega), round12(result.squared),
          round12(result.value)};
}

json to_json(const ReportRecord& r) {
  json j;
  j["command"] = r.command;
  j["instance"] = r.instance;
  j["status"] = r.status;
  j["iterations"] = r.iterations;
  j["primal"] = r.primal;
  j["dual"] = r.dual;
  j["gap"] = r.gap;
  j["distance"] = r.distance;
  j["dual_attained"] = r.dual_attained;
  j["degenerate"] = r.degenerate;
  if (r.certificate) {
    const auto& c = *r.certificate;
    j["certificate"] = {{"max_primal_residual", c.max_primal_residual},
                        {"dual_residual", c.dual_residual},
                        {"min_eig_x", c.min_eig_x},
                        {"min_eig_s", c.min_eig_s},
                        {"relative_gap", c.relative_gap},
                        {"passed", c.passed}};
  }
  if (r.divergence) {
    const auto& d = *r.divergence;
    j["divergence"] = {{"cross", d.cross},
                       {"self_rho", d.self_rho},
                       {"self_omega", d.self_omega},
                       {"squared", d.squared},
                       {"value", d.value}};
  }
  if (r.closed_form) {
    j["closed_form"] = {
        {"formula", r.closed_form->formula}, {"value", r.closed_form->value}, {"deviation", r.closed_form->deviation}};
  }
  if (r.potentials) j["potentials"] = *r.potentials;
  j["seconds"] = r.seconds;
  return j;
}

ReportRecord record_from_json(const json& j) {
  ReportRecord r;
  r.command = j.at("command").get<std::string>();
  r.instance = j.at("instance");
  r.status = j.at("status").get<std::string>();
  r.iterations = j.at("iterations").get<int>();
  r.primal = j.at("primal").get<double>();
  r.dual = j.at("dual").get<double>();
  r.gap = j.at("gap").get<double>();
  r.distance = j.at("distance").get<double>();
  r.dual_attained = j.at("dual_attained").get<bool>();
  r.degenerate = j.at("degenerate").get<bool>();
  if (j.contains("certificate")) {
    const json& c = j["certificate"];
    r.certificate = CertificateReport{c.at("max_primal_residual").get<double>(), c.at("dual_residual").get<double>(),
                                      c.at("min_eig_x").get<double>(),           c.at("min_eig_s").get<double>(),
                                      c.at("relative_gap").get<double>(),        c.at("passed").get<bool>()};
  }
  if (j.contains("divergence")) {
    const json& d = j["divergence"];
    r.divergence = DivergenceReport{d.at("cross").get<double>(), d.at("self_rho").get<double>(),
                                    d.at("self_omega").get<double>(), d.at("squared").get<double>(),
                                    d.at("value").get<double>()};
  }
  if (j.contains("closed_form")) {
    const json& c = j["closed_form"];
    r.closed_form = ClosedFormReport{c.at("formula").get<std::string>(), c.at("value").get<double>(),
                                     c.at("deviation").get<double>()};
  }
  if (j.contains("potentials")) r.potentials = j["potentials"];
  r.seconds = j.at("seconds").get<double>();
  return r;
}

std::string serialize(const ReportRecord& record) { return to_json(record).dump(); }

ReportRecord parse_record(const std::string& line) {
  try {
    return record_from_json(json::parse(line));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report record: ") + e.what());
  }
}

std::string format_human(const ReportRecord& r) {
  std::ostringstream out;
  auto row = [&out](const std::string& name, const std::string& value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-20s", name.c_str());
    out << buf << value << '\n';
  };
  row("command", r.command);
  row("instance", r.instance.dump());
  row("status", r.iterations > 0 ? r.status + " (" + std::to_string(r.iterations) + " iterations)" : r.status);
  row("primal", fmt12(r.primal));
  row("dual", fmt12(r.dual));
  row("gap", fmt12(r.gap));
  if (r.command != "divergence") row("distance", fmt12(r.distance));
  row("dual attained", r.dual_attained ? "yes" : "no");
  row("degenerate", r.degenerate ? "yes" : "no");
  if (r.certificate) {
    const auto& c = *r.certificate;
    row("certificate", std::string(c.passed ? "passed" : "failed") + " (primal residual " +
                           fmt12(c.max_primal_residual) + ", dual residual " + fmt12(c.dual_residual) +
                           ", relative gap " + fmt12(c.relative_gap) + ")");
  }
  if (r.divergence) {
    const auto& d = *r.divergence;
    row("D^2(rho, omega)", fmt12(d.cross));
    row("D^2(rho, rho)", fmt12(d.self_rho));
    row("D^2(omega, omega)", fmt12(d.self_omega));
    row("d^2", fmt12(d.squared));
    row("d", fmt12(d.value));
  }
  if (r.closed_form) {
    row("closed form", r.closed_form->formula + " = " + fmt12(r.closed_form->value) + " (deviation " +
                           fmt12(r.closed_form->deviation) + ")");
  }
  if (r.potentials) row("potentials", r.potentials->dump());
  row("seconds", fmt12(r.seconds));
  return out.str();
}

}  // namespace qwass
