#include "orthoalg/io.hpp"

#include <cstdint>
#include <fstream>

namespace orthoalg::io {

namespace {

cplx parse_entry(const json& e, int row, int col) {
    if (e.is_number()) return cplx(e.get<double>(), 0.0);
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return cplx(e[0].get<double>(), e[1].get<double>());
    throw Error("entry (" + std::to_string(row) + "," + std::to_string(col) +
                ") must be a number or an [re, im] pair");
}

}  // namespace

ObservableFile parse_observable(const json& j) {
    if (!j.is_object()) throw Error("observable file must be a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw Error("observable file needs an integer \"dim\"");
    const int dim = j["dim"].get<int>();
    if (dim < 1) throw Error("\"dim\" must be at least 1");
    if (!j.contains("entries") || !j["entries"].is_array())
        throw Error("observable file needs an \"entries\" array");

    const auto& rows = j["entries"];
    if (static_cast<int>(rows.size()) != dim)
        throw Error("\"entries\" has " + std::to_string(rows.size()) + " rows, expected " +
                    std::to_string(dim));

    ObservableFile f;
    f.entries.resize(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw Error("row " + std::to_string(r) + " must be an array of " +
                        std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c)
            f.entries(r, c) = parse_entry(row[static_cast<std::size_t>(c)], r, c);
    }

    if (j.contains("name")) {
        if (!j["name"].is_string()) throw Error("\"name\" must be a string");
        f.name = j["name"].get<std::string>();
    }
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object()) throw Error("\"tolerances\" must be an object");
        f.tolerance_overrides = j["tolerances"];
    }
    return f;
}

ObservableFile read_observable_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error("'" + path + "' is not valid JSON: " + e.what());
    }
    try {
        return parse_observable(j);
    } catch (const Error& e) {
        throw Error("'" + path + "': " + e.what());
    }
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

json observable_to_json(const Matrix& m, const std::string& name) {
    json j;
    j["name"] = name;
    j["dim"] = m.rows();
    j["entries"] = matrix_to_json(m);
    return j;
}

void write_observable_file(const std::string& path, const Matrix& m, const std::string& name) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << observable_to_json(m, name).dump(2) << "\n";
}

Tolerances apply_overrides(Tolerances base, const json& overrides) {
    if (!overrides.is_object()) throw Error("tolerance overrides must be an object");
    for (const auto& [key, value] : overrides.items()) {
        if (!value.is_number()) throw Error("tolerance \"" + key + "\" must be a number");
        double v = value.get<double>();
        if (key == "cluster_rel")
            base.cluster_rel = v;
        else if (key == "zero_abs")
            base.zero_abs = v;
        else if (key == "proj_tol")
            base.proj_tol = v;
        else if (key == "hermitian_tol")
            base.hermitian_tol = v;
        else
            throw Error("unknown tolerance \"" + key + "\"");
    }
    base.validate();
    return base;
}

json tolerances_to_json(const Tolerances& t) {
    return json{{"cluster_rel", t.cluster_rel},
                {"zero_abs", t.zero_abs},
                {"proj_tol", t.proj_tol},
                {"hermitian_tol", t.hermitian_tol}};
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

json RunReport::to_json(bool include_wall_time) const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["parameters"] = parameters;
    j["verdicts"] = verdicts;
    j["residuals"] = residuals;
    j["counterexamples"] = counterexamples;
    j["tolerances"] = tolerances;
    if (include_wall_time) j["wall_time_ms"] = wall_time_ms;
    return j;
}

std::string RunReport::to_jsonl(bool include_wall_time) const {
    return to_json(include_wall_time).dump();
}

}  // namespace orthoalg::io
