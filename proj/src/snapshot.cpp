#include "wavecascade/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "wavecascade/errors.hpp"

namespace wavecascade {

namespace {

constexpr std::array<char, 16> kMagic = {'W', 'A', 'V', 'E', 'C', 'A', 'S', 'C',
                                         'A', 'D', 'E', '-', 'F', '6', '4', '\0'};

template <class T>
void put_le(std::ostream& out, T v) {
    static_assert(sizeof(T) == 4 || sizeof(T) == 8);
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    U bits = std::bit_cast<U>(v);
    unsigned char buf[sizeof(T)];
    for (std::size_t b = 0; b < sizeof(T); ++b) buf[b] = static_cast<unsigned char>(bits >> (8 * b));
    out.write(reinterpret_cast<const char*>(buf), sizeof buf);
}

template <class T>
T get_le(std::istream& in) {
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof buf)) throw InvalidInput("truncated snapshot");
    U bits = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) bits |= static_cast<U>(buf[b]) << (8 * b);
    return std::bit_cast<T>(bits);
}

}  // namespace

void write_snapshot(std::ostream& out, const ScalarField& u) {
    const PeriodicGrid& g = u.grid();
    out.write(kMagic.data(), kMagic.size());
    put_le(out, static_cast<std::uint32_t>(g.nx()));
    put_le(out, static_cast<std::uint32_t>(g.ny()));
    put_le(out, g.lx());
    put_le(out, g.ly());
    for (double v : u.values()) put_le(out, v);
    if (!out) throw Error("failed writing snapshot");
}

ScalarField read_snapshot(std::istream& in) {
    std::array<char, 16> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw InvalidInput("not a WAVECASCADE-F64 snapshot");
    }
    const auto nx = get_le<std::uint32_t>(in);
    const auto ny = get_le<std::uint32_t>(in);
    const double lx = get_le<double>(in);
    const double ly = get_le<double>(in);
    PeriodicGrid g(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
    ScalarField u(g);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = get_le<double>(in);
    return u;
}

void write_snapshot(const std::string& path, const ScalarField& u) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    write_snapshot(f, u);
}

ScalarField read_snapshot(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open " + path);
    return read_snapshot(f);
}

}  // namespace wavecascade
