#include "fns/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace fns {

static_assert(std::endian::native == std::endian::little,
              "FNS1 I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'F', 'N', 'S', '1'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 8 + 8 + 1;

void put(std::vector<char>& buf, const void* p, std::size_t n) {
    const char* c = static_cast<const char*>(p);
    buf.insert(buf.end(), c, c + n);
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& u,
                    double gamma, double time) {
    std::vector<char> buf;
    buf.reserve(kHeaderBytes);
    put(buf, kMagic, 4);
    const std::uint32_t dim = static_cast<std::uint32_t>(u.grid.dim);
    const std::uint32_t n = static_cast<std::uint32_t>(u.grid.n);
    put(buf, &dim, 4);
    put(buf, &n, 4);
    put(buf, &gamma, 8);
    put(buf, &time, 8);
    const std::uint8_t flags = (u.mean_zero ? 1 : 0) | (u.div_free ? 2 : 0);
    put(buf, &flags, 1);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_snapshot: cannot open " + tmp);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        for (const auto& comp : u.c)
            out.write(reinterpret_cast<const char*>(comp.data()),
                      static_cast<std::streamsize>(comp.size() * sizeof(cplx)));
        if (!out) throw std::runtime_error("write_snapshot: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_snapshot: rename to " + path + " failed");
}

SpectralField read_snapshot(const std::string& path, SnapshotMeta* meta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    char header[kHeaderBytes];
    in.read(header, kHeaderBytes);
    if (in.gcount() != static_cast<std::streamsize>(kHeaderBytes))
        throw std::runtime_error("read_snapshot: " + path + " truncated (no header)");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw std::runtime_error("read_snapshot: " + path + " is not an FNS1 file");
    std::uint32_t dim = 0, n = 0;
    double gamma = 0, time = 0;
    std::uint8_t flags = 0;
    std::memcpy(&dim, header + 4, 4);
    std::memcpy(&n, header + 8, 4);
    std::memcpy(&gamma, header + 12, 8);
    std::memcpy(&time, header + 20, 8);
    std::memcpy(&flags, header + 28, 1);
    if (dim < 1 || dim > 3 || n < 8 || n > 4096 || n % 2 != 0)
        throw std::runtime_error("read_snapshot: " + path + " has an invalid grid header");

    SpectralField u = make_spectral_field(make_grid(int(dim), int(n)), int(dim));
    for (auto& comp : u.c) {
        in.read(reinterpret_cast<char*>(comp.data()),
                static_cast<std::streamsize>(comp.size() * sizeof(cplx)));
        if (in.gcount() != static_cast<std::streamsize>(comp.size() * sizeof(cplx)))
            throw std::runtime_error("read_snapshot: " + path + " truncated payload");
    }
    if (in.peek() != std::ifstream::traits_type::eof())
        throw std::runtime_error("read_snapshot: " + path + " has trailing bytes");

    u.mean_zero = flags & 1;
    u.div_free = flags & 2;
    const double scale = max_coeff(u);
    if (u.mean_zero && scale > 0) {
        double mean = 0;
        for (const auto& comp : u.c) mean += std::abs(comp[0]);
        if (mean > 1e-9 * scale)
            throw std::runtime_error(
                "read_snapshot: mean_zero flag contradicts coefficients in " + path);
    }
    if (u.div_free && scale > 0 && divergence_sup(u) > 1e-9 * scale)
        throw std::runtime_error(
            "read_snapshot: div_free flag contradicts coefficients in " + path);
    if (meta) {
        meta->gamma = gamma;
        meta->time = time;
    }
    return u;
}

}  // namespace fns
