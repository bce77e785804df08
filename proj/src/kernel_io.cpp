#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "fns/kernel_tables.hpp"

namespace fns {

static_assert(std::endian::native == std::endian::little,
              "FNK1 I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'F', 'N', 'K', '1'};
// magic, dim, samples, deriv_order, deriv_axis, comp_j, comp_m (u32/i32),
// gamma, t, frac_order, extent (f64)
constexpr std::size_t kHeaderBytes = 4 + 6 * 4 + 4 * 8;

void put(std::vector<char>& buf, const void* p, std::size_t n) {
    const char* c = static_cast<const char*>(p);
    buf.insert(buf.end(), c, c + n);
}

}  // namespace

void write_kernel_table(const std::string& path, const KernelTable& tab) {
    if (std::int64_t(tab.values.size()) != tab.size())
        throw std::invalid_argument("write_kernel_table: inconsistent table");
    std::vector<char> buf;
    buf.reserve(kHeaderBytes);
    put(buf, kMagic, 4);
    const std::uint32_t dim = std::uint32_t(tab.dim);
    const std::uint32_t samples = std::uint32_t(tab.samples);
    const std::int32_t k = tab.deriv_order, axis = tab.deriv_axis;
    const std::int32_t cj = tab.comp_j, cm = tab.comp_m;
    put(buf, &dim, 4);
    put(buf, &samples, 4);
    put(buf, &k, 4);
    put(buf, &axis, 4);
    put(buf, &cj, 4);
    put(buf, &cm, 4);
    put(buf, &tab.gamma, 8);
    put(buf, &tab.t, 8);
    put(buf, &tab.frac_order, 8);
    put(buf, &tab.extent, 8);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_kernel_table: cannot open " + tmp);
        out.write(buf.data(), std::streamsize(buf.size()));
        out.write(reinterpret_cast<const char*>(tab.values.data()),
                  std::streamsize(tab.values.size() * sizeof(double)));
        if (!out) throw std::runtime_error("write_kernel_table: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_kernel_table: rename to " + path + " failed");
}

KernelTable read_kernel_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_kernel_table: cannot open " + path);
    char header[kHeaderBytes];
    in.read(header, kHeaderBytes);
    if (in.gcount() != std::streamsize(kHeaderBytes))
        throw std::runtime_error("read_kernel_table: " + path + " truncated (no header)");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw std::runtime_error("read_kernel_table: " + path + " is not an FNK1 file");

    KernelTable tab;
    std::uint32_t dim = 0, samples = 0;
    std::int32_t k = 0, axis = 0, cj = 0, cm = 0;
    std::memcpy(&dim, header + 4, 4);
    std::memcpy(&samples, header + 8, 4);
    std::memcpy(&k, header + 12, 4);
    std::memcpy(&axis, header + 16, 4);
    std::memcpy(&cj, header + 20, 4);
    std::memcpy(&cm, header + 24, 4);
    std::memcpy(&tab.gamma, header + 28, 8);
    std::memcpy(&tab.t, header + 36, 8);
    std::memcpy(&tab.frac_order, header + 44, 8);
    std::memcpy(&tab.extent, header + 52, 8);
    if (dim < 1 || dim > 3 || samples < 8 || samples % 2 != 0 || samples > (1u << 20))
        throw std::runtime_error("read_kernel_table: " + path + " has an invalid header");
    tab.dim = int(dim);
    tab.samples = int(samples);
    tab.deriv_order = k;
    tab.deriv_axis = axis;
    tab.comp_j = cj;
    tab.comp_m = cm;

    tab.values.resize(std::size_t(tab.size()));
    in.read(reinterpret_cast<char*>(tab.values.data()),
            std::streamsize(tab.values.size() * sizeof(double)));
    if (in.gcount() != std::streamsize(tab.values.size() * sizeof(double)))
        throw std::runtime_error("read_kernel_table: " + path + " truncated payload");
    if (in.peek() != std::ifstream::traits_type::eof())
        throw std::runtime_error("read_kernel_table: " + path + " has trailing bytes");
    return tab;
}

}  // namespace fns
