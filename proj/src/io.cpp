#include "sympint/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include <json.hpp>

namespace sympint {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string json_array(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(values[i]);
    }
    out += "]";
    return out;
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += "\"";
    return out;
}

}  // namespace

SquareMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParams("cannot open matrix file '" + path + "'");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw BadParams("matrix file '" + path + "' is not valid JSON: " + e.what());
    }

    if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows")) {
        throw BadParams("matrix file '" + path + "' needs fields \"n\" and \"rows\"");
    }
    if (!doc["n"].is_number_integer() || doc["n"].get<long>() < 1) {
        throw BadParams("matrix file '" + path + "': \"n\" must be a positive integer");
    }
    const int dof = doc["n"].get<int>();
    const auto& rows = doc["rows"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(2 * dof)) {
        throw BadParams("matrix file '" + path + "': expected " + std::to_string(2 * dof) + " rows");
    }

    SquareMatrix m(dof);
    for (int i = 0; i < 2 * dof; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(2 * dof)) {
            throw BadParams("matrix file '" + path + "': row " + std::to_string(i) +
                            " is ragged (expected " + std::to_string(2 * dof) + " entries)");
        }
        for (int j = 0; j < 2 * dof; ++j) {
            const auto& cell = row[static_cast<std::size_t>(j)];
            if (!cell.is_number()) {
                throw BadParams("matrix file '" + path + "': non-numeric entry at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
            }
            const double v = cell.get<double>();
            if (!std::isfinite(v)) {
                throw BadParams("matrix file '" + path + "': non-finite entry at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
            }
            m(i, j) = v;
        }
    }
    return m;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    const int n = traj.states.empty() ? 0 : traj.states.front().dof();
    out << "t";
    for (int i = 1; i <= n; ++i) out << ",q" << i;
    for (int i = 1; i <= n; ++i) out << ",p" << i;
    out << ",H\n";
    for (std::size_t row = 0; row < traj.states.size(); ++row) {
        out << format_double(traj.times[row]);
        const PhasePoint& z = traj.states[row];
        for (int i = 0; i < z.size(); ++i) out << "," << format_double(z[i]);
        out << "," << format_double(traj.energies[row]) << "\n";
    }
}

std::string report_to_json(const VerificationReport& report) {
    std::string out = "{\n";
    out += "  \"per_step_symplectic_residual\": " + json_array(report.per_step_symplectic_residual) +
           ",\n";
    out += "  \"max_symplectic_residual\": " + format_double(report.max_symplectic_residual) + ",\n";
    out += "  \"a1a2_residual\": " + json_array(report.a1a2_residual) + ",\n";
    out += "  \"energy_drift\": " + format_double(report.energy_drift) + ",\n";
    out += "  \"condition_i_residual\": " + format_double(report.condition_i_residual) + ",\n";
    out += "  \"condition_ii_residual\": " + format_double(report.condition_ii_residual) + ",\n";
    out += "  \"verdict\": " + json_string(to_string(report.verdict)) + ",\n";
    out += "  \"annotation\": " + json_string(report.annotation) + "\n";
    out += "}\n";
    return out;
}

std::string convergence_to_json(const ConvergenceEstimate& est) {
    std::string out = "{\n";
    out += "  \"slope\": " + format_double(est.slope) + ",\n";
    out += "  \"errors\": " + json_array(est.errors) + "\n";
    out += "}\n";
    return out;
}

}  // namespace sympint
