#include "mhd2d/checkpoint.hpp"

#include <bit>
#include <fstream>
#include <vector>

#include "mhd2d/errors.hpp"

namespace mhd2d {

namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_f64(std::vector<unsigned char>& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
public:
    Reader(const std::vector<unsigned char>& data, const std::string& name) : data_(data), name_(name) {}

    void need(std::size_t count) const {
        if (pos_ + count > data_.size()) throw IoError("checkpoint " + name_ + " is truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    unsigned char byte() {
        need(1);
        return data_[pos_++];
    }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    const std::vector<unsigned char>& data_;
    std::string name_;
    std::size_t pos_ = 0;
};

void put_field(std::vector<unsigned char>& out, const SpectralField& F) {
    for (const auto& c : F.coeffs()) {
        put_f64(out, c.real());
        put_f64(out, c.imag());
    }
}

SpectralField read_field(Reader& in, const GridSpec& grid) {
    SpectralField F(grid);
    for (auto& c : F.coeffs()) {
        const double re = in.f64();
        const double im = in.f64();
        c = Complex(re, im);
    }
    return F;
}

}  // namespace

Checkpoint make_checkpoint(const FlowState& state, const RunConfig& config) {
    return Checkpoint{Checkpoint::kVersion, state.beta, state.t, config.ic.seed, config.digest(), state};
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    std::vector<unsigned char> out;
    out.reserve(Checkpoint::kHeaderSize + 32 * ckpt.state.grid().size());
    out.insert(out.end(), Checkpoint::kMagic.begin(), Checkpoint::kMagic.end());
    put_u32(out, ckpt.version);
    put_u32(out, static_cast<std::uint32_t>(ckpt.n()));
    put_f64(out, ckpt.beta);
    put_f64(out, ckpt.t);
    put_u64(out, ckpt.seed);
    out.insert(out.end(), ckpt.config_digest.begin(), ckpt.config_digest.end());
    put_field(out, ckpt.state.omega_hat);
    put_field(out, ckpt.state.j_hat);

    // write-then-rename so a crash never leaves a half-written checkpoint
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
        if (!f) throw IoError("failed writing checkpoint " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move checkpoint into place at " + path.string() + ": " + ec.message());
}

Checkpoint load_checkpoint(const std::filesystem::path& path, double dealias_fraction) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open checkpoint " + path.string());
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    Reader in(data, path.string());

    for (char expected : Checkpoint::kMagic)
        if (in.byte() != static_cast<unsigned char>(expected)) throw IoError("not a checkpoint (bad magic): " + path.string());
    const std::uint32_t version = in.u32();
    if (version != Checkpoint::kVersion) throw IoError("unsupported checkpoint version " + std::to_string(version));
    const std::uint32_t n = in.u32();
    const double beta = in.f64();
    const double t = in.f64();
    const std::uint64_t seed = in.u64();
    Digest digest{};
    for (auto& b : digest) b = in.byte();

    GridSpec grid = [&] {
        try {
            return GridSpec(static_cast<int>(n), dealias_fraction);
        } catch (const ConfigError& e) {
            throw IoError(std::string("checkpoint header: ") + e.what());
        }
    }();
    if (in.remaining() != 32 * grid.size()) throw IoError("checkpoint payload size does not match n = " + std::to_string(n));
    SpectralField w = read_field(in, grid);
    SpectralField j = read_field(in, grid);
    FlowState state = [&] {
        try {
            return make_state(std::move(w), std::move(j), t, beta);
        } catch (const std::exception& e) {
            throw IoError(std::string("checkpoint holds an invalid state: ") + e.what());
        }
    }();
    return Checkpoint{version, beta, t, seed, digest, std::move(state)};
}

}  // namespace mhd2d
