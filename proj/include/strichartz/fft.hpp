#pragma once

#include <complex>
#include <cstddef>

#include "strichartz/errors.hpp"

namespace strichartz {

// Dense complex field on a uniform G^d grid of the unit cell, row-major with
// the last axis fastest. Allocated through FFTW so every buffer shares the
// same alignment and one cached plan serves all of them.
class Grid {
public:
    Grid() = default;
    Grid(int dim, int size_per_dim);
    Grid(const Grid& other);
    Grid(Grid&& other) noexcept;
    Grid& operator=(const Grid& other);
    Grid& operator=(Grid&& other) noexcept;
    ~Grid();

    int dim() const { return dim_; }
    int size() const { return size_; }
    std::size_t total() const { return total_; }

    std::complex<double>* data() { return data_; }
    const std::complex<double>* data() const { return data_; }
    std::complex<double>& operator[](std::size_t i) { return data_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return data_[i]; }

    void fill_zero();

    // Linear index of integer coordinates reduced mod G per axis.
    std::size_t wrap_index(const int* coords) const;

private:
    int dim_ = 0;
    int size_ = 0;
    std::size_t total_ = 0;
    std::complex<double>* data_ = nullptr;
};

// In-place transforms; plans are cached per (dim, size, direction) behind a
// mutex, execution is the thread-safe new-array interface.
namespace fft {

// u[x] = sum_n c[n] e^{+2 pi i n.x/G}  (unnormalized inverse DFT).
void backward(Grid& g);

// c[n] = (1/G^d) sum_x u[x] e^{-2 pi i n.x/G}  (normalized forward DFT).
void forward(Grid& g);

std::size_t next_pow2(std::size_t n);

}  // namespace fft

}  // namespace strichartz
