#include "strichartz/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace strichartz {

Grid::Grid(int dim, int size_per_dim) : dim_(dim), size_(size_per_dim) {
    if (dim < 1 || dim > 3) throw usage_error("grid dimension must be 1, 2 or 3");
    if (size_per_dim < 1) throw usage_error("grid size must be positive");
    total_ = 1;
    for (int j = 0; j < dim; ++j) total_ *= static_cast<std::size_t>(size_);
    data_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * total_));
    if (!data_) throw std::bad_alloc();
    fill_zero();
}

Grid::Grid(const Grid& other) : dim_(other.dim_), size_(other.size_), total_(other.total_) {
    if (other.data_) {
        data_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * total_));
        if (!data_) throw std::bad_alloc();
        std::memcpy(data_, other.data_, sizeof(std::complex<double>) * total_);
    }
}

Grid::Grid(Grid&& other) noexcept
    : dim_(other.dim_), size_(other.size_), total_(other.total_), data_(other.data_) {
    other.data_ = nullptr;
    other.total_ = 0;
}

Grid& Grid::operator=(const Grid& other) {
    if (this != &other) {
        Grid tmp(other);
        *this = std::move(tmp);
    }
    return *this;
}

Grid& Grid::operator=(Grid&& other) noexcept {
    if (this != &other) {
        if (data_) fftw_free(data_);
        dim_ = other.dim_;
        size_ = other.size_;
        total_ = other.total_;
        data_ = other.data_;
        other.data_ = nullptr;
        other.total_ = 0;
    }
    return *this;
}

Grid::~Grid() {
    if (data_) fftw_free(data_);
}

void Grid::fill_zero() {
    std::fill_n(data_, total_, std::complex<double>(0.0, 0.0));
}

std::size_t Grid::wrap_index(const int* coords) const {
    std::size_t idx = 0;
    for (int j = 0; j < dim_; ++j) {
        int r = coords[j] % size_;
        if (r < 0) r += size_;
        idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(r);
    }
    return idx;
}

namespace fft {
namespace {

std::mutex plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> plan_cache;

fftw_plan get_plan(int dim, int size, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    const auto key = std::make_tuple(dim, size, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    std::size_t total = 1;
    for (int j = 0; j < dim; ++j) total *= static_cast<std::size_t>(size);
    fftw_complex* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    if (!buf) throw std::bad_alloc();
    int dims[3] = {size, size, size};
    fftw_plan plan = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE);
    fftw_free(buf);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plan_cache.emplace(key, plan);
    return plan;
}

void execute(Grid& g, int sign) {
    fftw_plan plan = get_plan(g.dim(), g.size(), sign);
    fftw_complex* ptr = reinterpret_cast<fftw_complex*>(g.data());
    fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void backward(Grid& g) { execute(g, FFTW_BACKWARD); }

void forward(Grid& g) {
    execute(g, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(g.total());
    std::complex<double>* d = g.data();
    for (std::size_t i = 0; i < g.total(); ++i) d[i] *= scale;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace fft

}  // namespace strichartz
