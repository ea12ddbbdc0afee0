#include "skewinfo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "skewinfo/error.hpp"

namespace skewinfo::io {

using nlohmann::json;

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (x == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j, Eigen::Index dim) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim)
        throw Error(ErrorKind::ParseError, "matrix must be an array of " + std::to_string(dim) + " rows");
    ComplexMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
            throw Error(ErrorKind::ParseError,
                        "row " + std::to_string(r) + " must hold " + std::to_string(dim) + " entries");
        for (Eigen::Index c = 0; c < dim; ++c) {
            const json& z = row[static_cast<std::size_t>(c)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw Error(ErrorKind::ParseError, "entries must be [re, im] number pairs");
            m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

json state_to_json(const ComplexMatrix& rho) {
    return json{{"dim", rho.rows()}, {"matrix", matrix_to_json(rho)}};
}

json channel_to_json(const KrausChannel& channel) {
    json ops = json::array();
    for (const auto& k : channel.operators()) ops.push_back(matrix_to_json(k));
    return json{{"dim", channel.dim()},
                {"kraus", std::move(ops)},
                {"convention", std::string(to_string(channel.convention()))}};
}

namespace {

Eigen::Index read_dim(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
        throw Error(ErrorKind::ParseError, "missing integer field \"dim\"");
    const auto dim = j["dim"].get<long long>();
    if (dim < 1) throw Error(ErrorKind::ParseError, "\"dim\" must be positive");
    return static_cast<Eigen::Index>(dim);
}

}  // namespace

DensityMatrix state_from_json(const json& j, double tol) {
    const Eigen::Index dim = read_dim(j);
    if (!j.contains("matrix")) throw Error(ErrorKind::ParseError, "missing field \"matrix\"");
    return validate_density(matrix_from_json(j["matrix"], dim), tol);
}

KrausChannel channel_from_json(const json& j, double tol) {
    const Eigen::Index dim = read_dim(j);
    if (!j.contains("kraus") || !j["kraus"].is_array())
        throw Error(ErrorKind::ParseError, "missing array field \"kraus\"");
    if (!j.contains("convention") || !j["convention"].is_string())
        throw Error(ErrorKind::ParseError, "missing string field \"convention\"");
    const Convention convention = convention_from_string(j["convention"].get<std::string>());
    std::vector<ComplexMatrix> ops;
    for (const auto& k : j["kraus"]) ops.push_back(matrix_from_json(k, dim));
    return validate_channel(std::move(ops), convention, tol);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

json parse_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

}  // namespace

DensityMatrix read_state(const std::filesystem::path& path, double tol) {
    return state_from_json(parse_json_file(path), tol);
}

KrausChannel read_channel(const std::filesystem::path& path, double tol) {
    return channel_from_json(parse_json_file(path), tol);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error(ErrorKind::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::IoError, "cannot rename onto " + path.string());
    }
}

}  // namespace skewinfo::io
