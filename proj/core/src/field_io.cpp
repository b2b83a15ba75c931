#include "xgev/field_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace xgev {

namespace {

constexpr char kMagic[5] = {'X', 'G', 'E', 'V', '1'};
constexpr std::uint8_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

}  // namespace

void save_field(const SampledField& field, const std::string& path) {
    field.grid.validate();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os.write(kMagic, 5);
    os.put(static_cast<char>(kVersion));
    put_u32(os, static_cast<std::uint32_t>(field.grid.dim));
    for (int a = 0; a < field.grid.dim; ++a)
        put_u32(os, static_cast<std::uint32_t>(field.grid.n[a]));
    for (int a = 0; a < field.grid.dim; ++a) {
        put_f64(os, field.grid.lo[a]);
        put_f64(os, field.grid.hi[a]);
    }
    for (const auto& v : field.values) {
        put_f64(os, v.real());
        put_f64(os, v.imag());
    }
    if (!os) throw std::runtime_error("short write to " + path);
}

SampledField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    char magic[5];
    is.read(magic, 5);
    if (!is || std::memcmp(magic, kMagic, 5) != 0)
        throw std::runtime_error("bad magic in " + path);
    int version = is.get();
    if (version != kVersion) throw std::runtime_error("unsupported version");
    GridSpec g;
    g.dim = static_cast<int>(get_u32(is));
    if (g.dim != 1 && g.dim != 2) throw std::runtime_error("bad dimension");
    g.n = {1, 1};
    for (int a = 0; a < g.dim; ++a) g.n[a] = static_cast<int>(get_u32(is));
    if (g.dim == 1) g.n[1] = 1;
    for (int a = 0; a < g.dim; ++a) {
        g.lo[a] = get_f64(is);
        g.hi[a] = get_f64(is);
    }
    g.validate();
    SampledField f(g);
    for (auto& v : f.values) {
        double re = get_f64(is);
        double im = get_f64(is);
        v = cplx(re, im);
    }
    if (!is) throw std::runtime_error("truncated payload in " + path);
    is.peek();
    if (!is.eof()) throw std::runtime_error("trailing bytes in " + path);
    return f;
}

void save_field_csv(const SampledField& field, const std::string& path) {
    if (field.grid.dim != 1)
        throw std::invalid_argument("CSV field format is 1-D only");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os.precision(17);
    for (const auto& v : field.values) os << v.real() << "," << v.imag() << "\n";
    if (!os) throw std::runtime_error("short write to " + path);
}

SampledField load_field_csv(const std::string& path, const GridSpec& grid) {
    if (grid.dim != 1) throw std::invalid_argument("CSV field format is 1-D only");
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    SampledField f(grid);
    std::string line;
    std::size_t idx = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (idx >= f.values.size()) throw std::runtime_error("too many CSV rows");
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double re, im;
        if (!(ls >> re >> im)) throw std::runtime_error("bad CSV row");
        f.values[idx++] = cplx(re, im);
    }
    if (idx != f.values.size()) throw std::runtime_error("row count mismatch");
    return f;
}

}  // namespace xgev
