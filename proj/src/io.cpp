#include "lexpfam/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lexpfam::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<Vec>& rows) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    for (const Vec& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << format_double(row[j]);
        }
        out << '\n';
    }
    if (!out) throw ParseError("write failed for " + path);
}

CsvData read_csv(const std::string& path, int expected_cols) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    CsvData data;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (lineno == 1) {
            data.header = fields;
            if (expected_cols >= 0 && static_cast<int>(fields.size()) != expected_cols) {
                throw ParseError(path + " line 1: expected " + std::to_string(expected_cols) +
                                 " columns, found " + std::to_string(fields.size()));
            }
            continue;
        }
        const std::size_t want = data.header.size();
        if (fields.size() != want) {
            throw ParseError(path + " line " + std::to_string(lineno) + ": expected " +
                             std::to_string(want) + " columns, found " +
                             std::to_string(fields.size()));
        }
        Vec row(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            errno = 0;
            char* end = nullptr;
            row[j] = std::strtod(fields[j].c_str(), &end);
            if (end == fields[j].c_str() || *end != '\0' || errno == ERANGE) {
                throw ParseError(path + " line " + std::to_string(lineno) +
                                 ": cannot parse number '" + fields[j] + "'");
            }
        }
        data.rows.push_back(std::move(row));
    }
    if (data.header.empty()) throw ParseError(path + ": empty file");
    return data;
}

nlohmann::json trace_to_json(const SolverTrace& trace) {
    nlohmann::json records = nlohmann::json::array();
    for (const TraceRecord& r : trace.records) {
        records.push_back({{"k", r.k},
                           {"eta", r.eta.coords()},
                           {"theta", r.theta.coords()},
                           {"loglik", r.loglik},
                           {"step_norm", r.step_norm},
                           {"weights", r.weights.w}});
    }
    return nlohmann::json{{"schema_version", kSchemaVersion},
                          {"lambda", trace.lambda},
                          {"termination", to_string(trace.termination)},
                          {"records", std::move(records)}};
}

SolverTrace trace_from_json(const nlohmann::json& j) {
    try {
        SolverTrace trace;
        trace.lambda = j.at("lambda").get<double>();
        trace.termination = termination_from_string(j.at("termination").get<std::string>());
        for (const auto& rj : j.at("records")) {
            TraceRecord rec{rj.at("k").get<int>(),
                            DualParam(rj.at("eta").get<Vec>()),
                            NaturalParam(rj.at("theta").get<Vec>()),
                            rj.at("loglik").get<double>(),
                            rj.at("step_norm").get<double>(),
                            WeightVector{rj.at("weights").get<Vec>()}};
            trace.records.push_back(std::move(rec));
        }
        return trace;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed trace: ") + e.what());
    } catch (const InvalidParameter& e) {
        throw ParseError(std::string("malformed trace: ") + e.what());
    }
}

SolverTrace load_trace(const std::string& path) { return trace_from_json(load_json(path)); }

void save_trace(const std::string& path, const SolverTrace& trace) {
    save_json(path, trace_to_json(trace));
}

void save_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("write failed for " + path);
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace lexpfam::io
