#include "chebproj/report.hpp"

#include <cstdio>

namespace chebproj {

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

CsvWriter::CsvWriter(std::ostream& out, bool with_timing)
    : out_(out), with_timing_(with_timing) {}

void CsvWriter::sweep_header() {
    out_ << "schema,k,weight,family,n,seed,mesh_norm,op_norm,value_at_a,value_at_b,"
            "min_phi_product,h_deviation,decay_q,decay_ok,phi_ok,h_ok,ok,error,wall_ms\n";
}

void CsvWriter::sweep_row(const ReportRow& r) {
    out_ << kReportSchema << ',' << r.k << ',' << csv_escape(r.weight_tag) << ','
         << csv_escape(r.family) << ',' << r.n << ',' << r.seed << ','
         << format_float(r.mesh_norm) << ',' << format_float(r.op_norm) << ','
         << format_float(r.value_at_a) << ',' << format_float(r.value_at_b) << ','
         << format_float(r.min_phi_product) << ',' << format_float(r.h_deviation) << ','
         << format_float(r.decay_q) << ',' << int(r.decay_ok) << ',' << int(r.phi_ok) << ','
         << int(r.h_ok) << ',' << int(r.ok) << ',' << csv_escape(r.error) << ','
         << format_float(with_timing_ ? r.wall_ms : 0.0) << '\n';
}

void CsvWriter::refine_header() {
    out_ << "schema,step,n,seed,mesh_norm,op_norm,probe_delta,decay_q,schedule_ok,ok,"
            "error,wall_ms\n";
}

void CsvWriter::refine_row(const RefineRow& r) {
    out_ << kRefineSchema << ',' << r.step << ',' << r.n << ',' << r.seed << ','
         << format_float(r.mesh_norm) << ',' << format_float(r.op_norm) << ','
         << format_float(r.probe_delta) << ',' << format_float(r.decay_q) << ','
         << int(r.schedule_ok) << ',' << int(r.ok) << ',' << csv_escape(r.error) << ','
         << format_float(with_timing_ ? r.wall_ms : 0.0) << '\n';
}

void CsvWriter::basis_header() { out_ << "schema,kind,index,x,value\n"; }

void CsvWriter::basis_row(const std::string& kind, int index, double x, double value) {
    out_ << kBasisSchema << ',' << csv_escape(kind) << ',' << index << ','
         << format_float(x) << ',' << format_float(value) << '\n';
}

}  // namespace chebproj
