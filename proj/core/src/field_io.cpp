#include "advstab/field_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace advstab {

static_assert(std::endian::native == std::endian::little,
              "field container writer assumes a little-endian host");

namespace {

void put_i64(std::ofstream& os, std::int64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void put_f64(std::ofstream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::int64_t get_i64(std::ifstream& is) {
    std::int64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

} // namespace

void write_field(const ScalarField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("write_field: cannot open " + path);
    const Grid& g = f.grid();
    put_i64(os, g.dim());
    put_i64(os, g.n());
    put_f64(os, g.length());
    os.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (!os) throw Error("write_field: short write to " + path);
}

ScalarField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("read_field: cannot open " + path);
    std::int64_t dim = get_i64(is);
    std::int64_t n = get_i64(is);
    double L = 0.0;
    is.read(reinterpret_cast<char*>(&L), sizeof(L));
    Grid g(static_cast<int>(dim), static_cast<int>(n), L);
    ScalarField f(g);
    is.read(reinterpret_cast<char*>(f.values().data()),
            static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (!is) throw Error("read_field: truncated container " + path);
    return f;
}

void write_vector_field(const VectorField& u, const std::string& path) {
    for (int a = 0; a < u.grid().dim(); ++a) {
        ScalarField c(u.grid());
        c.values() = u.comp(a);
        write_field(c, path + "." + std::to_string(a));
    }
}

VectorField read_vector_field(const std::string& path, int dim) {
    VectorField u(read_field(path + ".0").grid());
    for (int a = 0; a < dim; ++a) {
        ScalarField c = read_field(path + "." + std::to_string(a));
        u.comp(a) = c.values();
    }
    return u;
}

void write_field_csv(const ScalarField& f, const std::string& path) {
    const Grid& g = f.grid();
    std::string out;
    char line[128];
    if (g.dim() == 1) {
        out += "index,x,value\n";
        for (int i = 0; i < g.n(); ++i) {
            std::snprintf(line, sizeof(line), "%d,%.17g,%.17g\n", i, g.center(i), f[i]);
            out += line;
        }
    } else {
        out += "index,x,y,value\n";
        for (int j = 0; j < g.n(); ++j)
            for (int i = 0; i < g.n(); ++i) {
                std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g,%.17g\n",
                              static_cast<long long>(g.index(i, j)),
                              g.center(i), g.center(j), f.at(i, j));
                out += line;
            }
    }
    atomic_write_text(path, out);
}

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("atomic_write_text: cannot open " + tmp.string());
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) throw Error("atomic_write_text: short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace advstab
