#include "wigf/report.hpp"

#include <cstdio>
#include <sstream>

#include "wigf/errors.hpp"

#include "json.hpp"

namespace wigf {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string ReportTable::to_csv() const {
    std::ostringstream os;
    os << "beta,t,n,bias,mse\n";
    for (const auto& r : rows) {
        if (!r.valid) {
            os << num(r.beta) << ',' << num(r.t) << ',' << r.n << ",nan,nan\n";
            continue;
        }
        os << num(r.beta) << ',' << num(r.t) << ',' << r.n << ',' << num(r.bias) << ','
           << num(r.mse) << '\n';
    }
    return os.str();
}

std::string ReportTable::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["beta"] = r.beta;
        row["t"] = r.t;
        row["n"] = r.n;
        if (r.valid) {
            row["bias"] = r.bias;
            row["mse"] = r.mse;
            row["estimate_mean"] = r.estimate_mean;
        } else {
            row["error"] = r.error;
        }
        j.push_back(std::move(row));
    }
    return j.dump(2);
}

const ReportRow& ReportTable::at(double beta, double t, std::size_t n) const {
    for (const auto& r : rows)
        if (r.beta == beta && r.t == t && r.n == n) return r;
    throw domain_error("no report row for the requested (beta, t, n)");
}

} // namespace wigf
