#include "strichartz/fourier_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace strichartz {

namespace {

bool coord_less(const Coord& a, const Coord& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

FourierState::FourierState(IrrationalTorus torus) : torus_(torus) {}

FourierState::FourierState(IrrationalTorus torus, std::vector<Mode> modes)
    : torus_(torus), modes_(std::move(modes)) {
    for (auto& m : modes_) {
        for (int j = torus_.dim; j < 3; ++j) {
            if (m.n[j] != 0) throw usage_error("mode has nonzero coordinate beyond torus dimension");
        }
    }
    std::sort(modes_.begin(), modes_.end(),
              [](const Mode& a, const Mode& b) { return coord_less(a.n, b.n); });
    // merge duplicates, drop exact zeros
    std::vector<Mode> merged;
    merged.reserve(modes_.size());
    for (const auto& m : modes_) {
        if (!merged.empty() && merged.back().n == m.n) {
            merged.back().c += m.c;
        } else {
            merged.push_back(m);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Mode& m) { return m.c == std::complex<double>(0.0, 0.0); }),
                 merged.end());
    modes_ = std::move(merged);
}

std::complex<double> FourierState::at(const Coord& n) const {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), n,
                               [](const Mode& m, const Coord& key) { return coord_less(m.n, key); });
    if (it != modes_.end() && it->n == n) return it->c;
    return {0.0, 0.0};
}

double FourierState::l2_norm() const {
    double s = 0.0;
    for (const auto& m : modes_) s += std::norm(m.c);
    return std::sqrt(s);
}

FourierState::Box FourierState::support_box() const {
    Box box;
    if (modes_.empty()) return box;
    box.empty = false;
    box.lo = box.hi = modes_.front().n;
    for (const auto& m : modes_) {
        for (int j = 0; j < 3; ++j) {
            box.lo[j] = std::min(box.lo[j], m.n[j]);
            box.hi[j] = std::max(box.hi[j], m.n[j]);
        }
    }
    return box;
}

int FourierState::max_abs_freq() const {
    int r = 0;
    for (const auto& m : modes_) {
        for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(m.n[j]));
    }
    return r;
}

FourierState scale(const FourierState& s, std::complex<double> factor) {
    std::vector<Mode> out = s.modes();
    for (auto& m : out) m.c *= factor;
    return FourierState(s.torus(), std::move(out));
}

double l2_distance(const FourierState& a, const FourierState& b) {
    // merge walk over the two sorted supports
    double s = 0.0;
    std::size_t i = 0, j = 0;
    const auto& ma = a.modes();
    const auto& mb = b.modes();
    while (i < ma.size() || j < mb.size()) {
        if (j >= mb.size() || (i < ma.size() && coord_less(ma[i].n, mb[j].n))) {
            s += std::norm(ma[i].c);
            ++i;
        } else if (i >= ma.size() || coord_less(mb[j].n, ma[i].n)) {
            s += std::norm(mb[j].c);
            ++j;
        } else {
            s += std::norm(ma[i].c - mb[j].c);
            ++i;
            ++j;
        }
    }
    return std::sqrt(s);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_csv(const FourierState& s, std::ostream& out) {
    const int d = s.dim();
    for (int j = 0; j < d; ++j) out << 'n' << (j + 1) << ',';
    out << "re,im\n";
    for (const auto& m : s.modes()) {
        for (int j = 0; j < d; ++j) out << m.n[j] << ',';
        out << format_double(m.c.real()) << ',' << format_double(m.c.imag()) << '\n';
    }
}

FourierState load_csv(std::istream& in, const IrrationalTorus& torus) {
    std::string line;
    if (!std::getline(in, line)) throw data_error("state csv: missing header");
    std::vector<Mode> modes;
    const int d = torus.dim;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        Mode m;
        std::string tok;
        for (int j = 0; j < d; ++j) {
            if (!std::getline(ss, tok, ',')) throw data_error("state csv: short row");
            m.n[j] = std::stoi(tok);
        }
        if (!std::getline(ss, tok, ',')) throw data_error("state csv: missing re");
        const double re = std::strtod(tok.c_str(), nullptr);
        if (!std::getline(ss, tok, ',')) throw data_error("state csv: missing im");
        const double im = std::strtod(tok.c_str(), nullptr);
        m.c = {re, im};
        modes.push_back(m);
    }
    return FourierState(torus, std::move(modes));
}

namespace {

constexpr char kMagic[4] = {'S', 'T', 'Z', 'F'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw data_error("state binary: truncated");
    return v;
}

}  // namespace

void save_binary(const FourierState& s, std::ostream& out) {
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, static_cast<std::uint32_t>(s.dim()));
    for (int j = 0; j < s.dim(); ++j) put(out, s.torus().alpha[j]);
    put(out, s.torus().c_bound);
    put(out, static_cast<std::uint64_t>(s.size()));
    for (const auto& m : s.modes()) {
        for (int j = 0; j < s.dim(); ++j) put(out, static_cast<std::int32_t>(m.n[j]));
        put(out, m.c.real());
        put(out, m.c.imag());
    }
}

FourierState load_binary(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) throw data_error("state binary: bad magic");
    const auto version = get<std::uint32_t>(in);
    if (version != kVersion) throw data_error("state binary: unsupported version");
    const auto d = get<std::uint32_t>(in);
    if (d != 2 && d != 3) throw data_error("state binary: bad dimension");
    std::array<double, 3> alpha{1.0, 1.0, 1.0};
    for (std::uint32_t j = 0; j < d; ++j) alpha[j] = get<double>(in);
    const double c_bound = get<double>(in);
    IrrationalTorus torus(static_cast<int>(d), std::span<const double>(alpha.data(), d), c_bound);
    const auto count = get<std::uint64_t>(in);
    std::vector<Mode> modes;
    modes.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Mode m;
        for (std::uint32_t j = 0; j < d; ++j) m.n[j] = get<std::int32_t>(in);
        const double re = get<double>(in);
        const double im = get<double>(in);
        m.c = {re, im};
        modes.push_back(m);
    }
    return FourierState(torus, std::move(modes));
}

void save_csv_file(const FourierState& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open for write: " + path);
    save_csv(s, out);
}

FourierState load_csv_file(const std::string& path, const IrrationalTorus& torus) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open: " + path);
    return load_csv(in, torus);
}

void save_binary_file(const FourierState& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot open for write: " + path);
    save_binary(s, out);
}

FourierState load_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open: " + path);
    return load_binary(in);
}

}  // namespace strichartz
