#include "fns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace fns {

namespace {

// One cached plan per (shape, sign). FFTW plan creation is not thread-safe;
// execution via fftw_execute_dft on distinct buffers is.
struct PlanCache {
    std::mutex mu;
    std::map<std::pair<std::vector<int>, int>, fftw_plan> plans;

    fftw_plan get(const std::vector<int>& shape, int sign) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(shape, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;

        std::size_t total = 1;
        for (int s : shape) {
            if (s < 1) throw std::invalid_argument("dft: bad shape");
            total *= static_cast<std::size_t>(s);
        }
        // Scratch buffers only for planning; execution uses caller arrays
        // (legal because FFTW_UNALIGNED drops all alignment constraints).
        fftw_complex* scratch = fftw_alloc_complex(total);
        if (!scratch) throw std::runtime_error("dft: out of memory planning transform");
        fftw_plan p = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(),
                                    scratch, scratch, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        if (!p) throw std::runtime_error("dft: fftw_plan_dft failed");
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void dft(const std::vector<int>& shape, cplx* in, cplx* out, int sign) {
    if (sign != -1 && sign != 1) throw std::invalid_argument("dft: sign must be +-1");
    fftw_plan p = cache().get(shape, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in),
                     reinterpret_cast<fftw_complex*>(out));
}

PhysicalField to_physical(const SpectralField& u) {
    const TorusGrid& g = u.grid;
    std::vector<int> shape(static_cast<std::size_t>(g.dim), g.n);
    PhysicalField out = make_physical_field(g, u.comps());
    std::vector<cplx> buf(g.total_modes());
    for (int a = 0; a < u.comps(); ++a) {
        buf = u.c[a];
        dft(shape, buf.data(), buf.data(), +1);
        auto& v = out.v[a];
        for (std::size_t i = 0; i < buf.size(); ++i) v[i] = buf[i].real();
    }
    return out;
}

SpectralField to_spectral(const PhysicalField& u) {
    const TorusGrid& g = u.grid;
    std::vector<int> shape(static_cast<std::size_t>(g.dim), g.n);
    SpectralField out = make_spectral_field(g, u.comps());
    const double scale = 1.0 / static_cast<double>(g.total_modes());
    std::vector<cplx> buf(g.total_modes());
    for (int a = 0; a < u.comps(); ++a) {
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = cplx{u.v[a][i], 0.0};
        dft(shape, buf.data(), buf.data(), -1);
        auto& c = out.c[a];
        for (std::size_t i = 0; i < buf.size(); ++i) c[i] = buf[i] * scale;
    }
    return out;
}

}  // namespace fns
