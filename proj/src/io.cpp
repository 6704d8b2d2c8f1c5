#include "fsp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fsp {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a_hex(const std::string& s) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(s)));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void save_field(const std::string& path, const Field& u, const std::string& column,
                const std::string& cfg_hash) {
    std::ostringstream os;
    os << "# fsp field v1\n";
    os << "# config " << cfg_hash << "\n";
    os << "dim " << u.grid.dim << "\n";
    os << "n " << u.grid.n << "\n";
    os << "L " << format_g17(u.grid.L) << "\n";
    os << "column " << column << "\n";
    for (double x : u.values) os << format_g17(x) << "\n";
    write_text_file(path, os.str());
}

Field load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::string line;
    int dim = 0, n = 0;
    double L = 0.0;
    bool have_dim = false, have_n = false, have_L = false, have_col = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "dim") { ls >> dim; have_dim = true; }
        else if (key == "n") { ls >> n; have_n = true; }
        else if (key == "L") { ls >> L; have_L = true; }
        else if (key == "column") { have_col = true; }
        else throw std::runtime_error("field file: unexpected header line '" + line + "' in " + path);
        if (have_dim && have_n && have_L && have_col) break;
    }
    if (!(have_dim && have_n && have_L && have_col))
        throw std::runtime_error("field file: incomplete header in " + path);
    Field u(make_grid(dim, n, L));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("field file: truncated values in " + path);
        u[i] = std::stod(line);
    }
    return u;
}

void save_csv(const std::string& path, const CsvTable& table, const std::string& cfg_hash) {
    std::ostringstream os;
    os << "# config " << cfg_hash << "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i)
        os << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << format_g17(row[i]) << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
    write_text_file(path, os.str());
}

}  // namespace fsp
