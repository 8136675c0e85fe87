#include "phasepom/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace phasepom {

namespace {

std::string escape_json(const std::string& s) {
    nlohmann::ordered_json j = s;
    return j.dump();
}

void dump_rec(const nlohmann::ordered_json& j, std::string& out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad_in + escape_json(it.key()) + ": ";
                dump_rec(it.value(), out, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            bool flat = true;
            for (const auto& el : j)
                if (el.is_structured() && !el.empty()) flat = false;
            if (flat && j.size() <= 8) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump_rec(j[i], out, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump_rec(j[i], out, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case nlohmann::ordered_json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_json(const nlohmann::ordered_json& j) {
    std::string out;
    dump_rec(j, out, 0);
    out += "\n";
    return out;
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream f(path);
    if (!f) throw IOError("cannot open for writing: " + path);
    f << dump_json(j);
    if (!f) throw IOError("write failed: " + path);
}

nlohmann::ordered_json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IOError("cannot open: " + path);
    try {
        return nlohmann::ordered_json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw IOError("invalid JSON in " + path + ": " + e.what());
    }
}

void write_matrix_json(const std::string& path, const CMat& m) {
    nlohmann::ordered_json j;
    if (m.rows() == m.cols()) {
        j["dim"] = m.rows();
    } else {
        j["rows"] = m.rows();
        j["cols"] = m.cols();
    }
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            entries.push_back({m(r, c).real(), m(r, c).imag()});
    j["entries"] = std::move(entries);
    write_json_file(path, j);
}

CMat read_matrix_json(const std::string& path) {
    const nlohmann::ordered_json j = read_json_file(path);
    long rows = 0, cols = 0;
    try {
        if (j.contains("dim")) {
            rows = cols = j.at("dim").get<long>();
        } else {
            rows = j.at("rows").get<long>();
            cols = j.at("cols").get<long>();
        }
        if (rows <= 0 || cols <= 0 || rows > 4096 || cols > 4096)
            throw IOError("matrix dimensions out of range in " + path);
        const auto& entries = j.at("entries");
        if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows * cols))
            throw IOError("entry count does not match dimensions in " + path);
        CMat m(rows, cols);
        std::size_t k = 0;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c, ++k) {
                const auto& e = entries[k];
                if (!e.is_array() || e.size() != 2)
                    throw IOError("entries must be [re, im] pairs in " + path);
                m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
            }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw IOError("malformed matrix file " + path + ": " + e.what());
    }
}

void write_field_csv(const std::string& path, const PhaseGrid& grid, const CVec& values) {
    if (values.size() != grid.nodes())
        throw std::invalid_argument("write_field_csv: field size does not match grid");
    std::ofstream f(path);
    if (!f) throw IOError("cannot open for writing: " + path);
    f << "q,p,re,im\n";
    for (int i = 0; i < grid.points; ++i)
        for (int j = 0; j < grid.points; ++j) {
            const Complex v = values[grid.index(i, j)];
            f << format_double(grid.q(i)) << ',' << format_double(grid.p(j)) << ','
              << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
    if (!f) throw IOError("write failed: " + path);
}

CsvField read_field_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IOError("cannot open: " + path);
    std::string line;
    if (!std::getline(f, line)) throw IOError("empty field file: " + path);
    if (line == "q,p,re,im\r") line.pop_back();
    if (line != "q,p,re,im") throw IOError("bad field header in " + path);
    std::vector<double> q, p;
    std::vector<Complex> vals;
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        double col[4];
        const char* s = line.c_str();
        char* end = nullptr;
        for (int c = 0; c < 4; ++c) {
            col[c] = std::strtod(s, &end);
            if (end == s)
                throw IOError("bad number at " + path + ":" + std::to_string(lineno));
            s = end;
            if (c < 3) {
                if (*s != ',')
                    throw IOError("expected comma at " + path + ":" + std::to_string(lineno));
                ++s;
            }
        }
        q.push_back(col[0]);
        p.push_back(col[1]);
        vals.push_back(Complex(col[2], col[3]));
    }
    CsvField out;
    out.q = Eigen::Map<const RVec>(q.data(), static_cast<long>(q.size()));
    out.p = Eigen::Map<const RVec>(p.data(), static_cast<long>(p.size()));
    out.values = Eigen::Map<const CVec>(vals.data(), static_cast<long>(vals.size()));
    return out;
}

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace phasepom
