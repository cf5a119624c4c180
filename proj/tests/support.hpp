#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include "sfxs/bytes.hpp"

namespace support {

/// Small deterministic RNG (splitmix64) so property tests are reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(double p) { return static_cast<double>(next() >> 11) / 9007199254740992.0 < p; }

    sfxs::Bytes bytes(std::size_t n) {
        sfxs::Bytes out(n, 0);
        for (auto& b : out) b = static_cast<std::uint8_t>(next());
        return out;
    }

    std::string identifier(std::size_t min_len, std::size_t max_len) {
        static constexpr char alphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-";
        std::size_t n = min_len + below(max_len - min_len + 1);
        std::string out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(alphabet[below(sizeof alphabet - 1)]);
        return out;
    }

private:
    std::uint64_t state_;
};

inline std::filesystem::path fixture_dir() {
    return SFXS_FIXTURES_DIR;
}

inline sfxs::Bytes read_fixture(const std::string& name) {
    std::ifstream in(fixture_dir() / name, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return sfxs::Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace support
