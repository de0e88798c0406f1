#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace chebproj {

/// One sweep measurement: a (k, weight, family, n, trial) cell. Failed cells
/// keep their identifying fields, carry the error text, and have ok = false;
/// numeric fields then hold zeros so every emitted value stays finite.
struct ReportRow {
    int k = 0;
    std::string weight_tag;
    std::string family;
    int n = 0;
    std::uint64_t seed = 0;
    double mesh_norm = 0.0;  // largest interval length
    double op_norm = 0.0;
    double value_at_a = 0.0;  // Lebesgue function at the endpoints
    double value_at_b = 0.0;
    double min_phi_product = 0.0;
    double h_deviation = 0.0;  // relative deviation of the conserved form
    double decay_q = 0.0;
    bool decay_ok = false;
    bool phi_ok = false;
    bool h_ok = false;
    bool ok = false;
    std::string error;
    double wall_ms = 0.0;
};

/// One refinement step: the mesh after `step` midpoint insertions.
/// probe_delta is the largest sampled change of the projection across the
/// insertion, over the whole probe family.
struct RefineRow {
    int step = 0;
    int n = 0;
    std::uint64_t seed = 0;
    double mesh_norm = 0.0;
    double op_norm = 0.0;
    double probe_delta = 0.0;
    double decay_q = 0.0;
    bool schedule_ok = false;  // insertion matches the length-only simulation
    bool ok = false;
    std::string error;
    double wall_ms = 0.0;
};

inline constexpr const char* kReportSchema = "chebproj-report-v1";
inline constexpr const char* kRefineSchema = "chebproj-refine-v1";
inline constexpr const char* kBasisSchema = "chebproj-basis-v1";
inline constexpr const char* kSummarySchema = "chebproj-summary-v1";

/// 17 significant digits, enough to reproduce the exact double on parse.
std::string format_float(double v);
/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& s);

/// Streams rows of the fixed schema; the schema tag is the first column of
/// every line. When with_timing is false the wall_ms column is written as 0,
/// which keeps output byte-identical across reruns of the same config.
class CsvWriter {
  public:
    CsvWriter(std::ostream& out, bool with_timing);

    void sweep_header();
    void sweep_row(const ReportRow& row);

    void refine_header();
    void refine_row(const RefineRow& row);

    void basis_header();
    void basis_row(const std::string& kind, int index, double x, double value);

  private:
    std::ostream& out_;
    bool with_timing_;
};

}  // namespace chebproj
