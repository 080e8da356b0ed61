#include "fnlslab/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fnls {

static_assert(std::endian::native == std::endian::little,
              "checkpoint container assumes a little-endian host");

namespace {

constexpr char kTrajMagic[8] = {'F', 'N', 'L', 'S', 'T', 'R', 'J', '1'};
constexpr char kFieldMagic[8] = {'F', 'N', 'L', 'S', 'F', 'L', 'D', '1'};

void write_snapshots(std::ofstream& os, const char* magic,
                     const Trajectory& traj) {
    const Grid& g = *traj.states.front().grid;
    os.write(magic, 8);
    std::uint32_t version = 1, dim = g.dim(), points = g.points();
    double half = g.half_extent();
    std::uint64_t count = traj.size();
    os.write(reinterpret_cast<const char*>(&version), 4);
    os.write(reinterpret_cast<const char*>(&dim), 4);
    os.write(reinterpret_cast<const char*>(&points), 4);
    os.write(reinterpret_cast<const char*>(&half), 8);
    os.write(reinterpret_cast<const char*>(&count), 8);
    for (std::size_t s = 0; s < traj.size(); ++s) {
        double t = traj.times[s];
        os.write(reinterpret_cast<const char*>(&t), 8);
        os.write(reinterpret_cast<const char*>(traj.states[s].values.data()),
                 static_cast<std::streamsize>(g.size() * sizeof(cplx)));
    }
    if (!os) throw std::runtime_error("checkpoint write failed");
}

Trajectory read_snapshots(std::ifstream& is, const char* magic) {
    char got[8];
    is.read(got, 8);
    if (!is || std::memcmp(got, magic, 8) != 0)
        throw std::runtime_error("checkpoint: bad magic");
    std::uint32_t version = 0, dim = 0, points = 0;
    double half = 0.0;
    std::uint64_t count = 0;
    is.read(reinterpret_cast<char*>(&version), 4);
    is.read(reinterpret_cast<char*>(&dim), 4);
    is.read(reinterpret_cast<char*>(&points), 4);
    is.read(reinterpret_cast<char*>(&half), 8);
    is.read(reinterpret_cast<char*>(&count), 8);
    if (!is || version != 1)
        throw std::runtime_error("checkpoint: unsupported header");
    GridPtr grid = make_grid(static_cast<int>(dim), half,
                             static_cast<int>(points));
    Trajectory traj;
    for (std::uint64_t s = 0; s < count; ++s) {
        double t = 0.0;
        is.read(reinterpret_cast<char*>(&t), 8);
        Field f(grid, t);
        is.read(reinterpret_cast<char*>(f.values.data()),
                static_cast<std::streamsize>(grid->size() * sizeof(cplx)));
        if (!is) throw std::runtime_error("checkpoint: truncated payload");
        traj.append(t, std::move(f));
    }
    return traj;
}

}  // namespace

void save_trajectory(const Trajectory& traj, const std::string& path) {
    if (traj.size() == 0)
        throw std::invalid_argument("cannot checkpoint an empty trajectory");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_snapshots(os, kTrajMagic, traj);
}

Trajectory load_trajectory(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_snapshots(is, kTrajMagic);
}

void save_field(const Field& f, const std::string& path) {
    Trajectory traj;
    traj.append(f.time_tag, f);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_snapshots(os, kFieldMagic, traj);
}

Field load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    Trajectory traj = read_snapshots(is, kFieldMagic);
    if (traj.size() != 1)
        throw std::runtime_error("checkpoint: expected a single field");
    return traj.states.front();
}

}  // namespace fnls
