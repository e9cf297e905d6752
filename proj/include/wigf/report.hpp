#pragma once

#include <string>
#include <vector>

namespace wigf {

// Simulation report keyed by (beta, t, n). CSV columns: beta,t,n,bias,mse.
struct ReportRow {
    double beta = 0.0;
    double t = 0.0;
    std::size_t n = 0;
    double bias = 0.0;
    double mse = 0.0;
    double estimate_mean = 0.0;
    bool valid = true;
    std::string error;
};

struct ReportTable {
    std::vector<ReportRow> rows;

    std::string to_csv() const;
    std::string to_json() const;

    // (valid) row lookup; throws domain_error when absent
    const ReportRow& at(double beta, double t, std::size_t n) const;
};

} // namespace wigf
