#pragma once

// Report records written by the command-line tool. Every floating-point
// field is rounded to 12 significant digits when the record is built, so a
// record survives a JSON round trip unchanged.

#include <optional>
#include <string>

#include <json.hpp>

#include "qwass/instance.hpp"
#include "qwass/transport.hpp"

namespace qwass {

/// x rounded to 12 significant digits.
double round12(double x);

struct CertificateReport {
  double max_primal_residual = 0.0;
  double dual_residual = 0.0;
  double min_eig_x = 0.0;
  double min_eig_s = 0.0;
  double relative_gap = 0.0;
  bool passed = false;

  bool operator==(const CertificateReport&) const = default;
};

struct DivergenceReport {
  double cross = 0.0;
  double self_rho = 0.0;
  double self_omega = 0.0;
  double squared = 0.0;
  double value = 0.0;

  bool operator==(const DivergenceReport&) const = default;
};

struct ClosedFormReport {
  std::string formula;
  double value = 0.0;
  double deviation = 0.0;

  bool operator==(const ClosedFormReport&) const = default;
};

struct ReportRecord {
  std::string command;
  nlohmann::json instance;
  std::string status;
  int iterations = 0;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double distance = 0.0;
  bool dual_attained = false;
  bool degenerate = false;
  std::optional<CertificateReport> certificate;
  std::optional<DivergenceReport> divergence;
  std::optional<ClosedFormReport> closed_form;
  std::optional<nlohmann::json> potentials;
  double seconds = 0.0;

  bool operator==(const ReportRecord&) const = default;
};

/// Instance echo: states as Bloch vectors when given that way, otherwise as
/// matrices of [re, im] pairs.
nlohmann::json echo_instance(const InstanceFile& file);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

CertificateReport make_certificate(const SdpCertificate& cert);
ReportRecord make_distance_record(const InstanceFile& file, const TransportResult& result, double seconds);
DivergenceReport make_divergence_report(const DivergenceResult& result);

nlohmann::json to_json(const ReportRecord& record);
ReportRecord record_from_json(const nlohmann::json& j);

/// One-line JSON rendering.
std::string serialize(const ReportRecord& record);
ReportRecord parse_record(const std::string& line);

/// Aligned `name  value` lines for people.
std::string format_human(const ReportRecord& record);

}  // namespace qwass
