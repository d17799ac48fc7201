#include "bestarm/hash.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>

namespace bestarm {

namespace {

constexpr std::uint32_t rol(std::uint32_t x, int n) {
    return (x << n) | (x >> (32 - n));
}

struct Sha1 {
    std::array<std::uint32_t, 5> h{0x67452301u, 0xefcdab89u, 0x98badcfeu, 0x10325476u,
                                   0xc3d2e1f0u};
    std::uint64_t length = 0;
    std::array<std::uint8_t, 64> block{};
    std::size_t block_fill = 0;

    void process_block() {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i) {
            w[i] = (std::uint32_t(block[4 * i]) << 24) | (std::uint32_t(block[4 * i + 1]) << 16) |
                   (std::uint32_t(block[4 * i + 2]) << 8) | std::uint32_t(block[4 * i + 3]);
        }
        for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);

        auto [a, b, c, d, e] = h;
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) { f = (b & c) | (~b & d); k = 0x5a827999u; }
            else if (i < 40) { f = b ^ c ^ d; k = 0x6ed9eba1u; }
            else if (i < 60) { f = (b & c) | (b & d) | (c & d); k = 0x8f1bbcdcu; }
            else { f = b ^ c ^ d; k = 0xca62c1d6u; }
            const std::uint32_t t = rol(a, 5) + f + e + k + w[i];
            e = d; d = c; c = rol(b, 30); b = a; a = t;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d; h[4] += e;
    }

    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        length += len;
        while (len > 0) {
            const std::size_t take = std::min(len, block.size() - block_fill);
            std::memcpy(block.data() + block_fill, p, take);
            block_fill += take;
            p += take;
            len -= take;
            if (block_fill == block.size()) {
                process_block();
                block_fill = 0;
            }
        }
    }

    std::string finish() {
        const std::uint64_t bit_len = length * 8;
        const std::uint8_t one = 0x80;
        update(&one, 1);
        const std::uint8_t zero = 0;
        while (block_fill != 56) update(&zero, 1);
        std::uint8_t len_be[8];
        for (int i = 0; i < 8; ++i) len_be[i] = static_cast<std::uint8_t>(bit_len >> (56 - 8 * i));
        update(len_be, 8);

        static const char* hex = "0123456789abcdef";
        std::string out(40, '0');
        for (int i = 0; i < 5; ++i) {
            for (int b = 0; b < 4; ++b) {
                const std::uint8_t byte = static_cast<std::uint8_t>(h[i] >> (24 - 8 * b));
                out[8 * i + 2 * b] = hex[byte >> 4];
                out[8 * i + 2 * b + 1] = hex[byte & 0xf];
            }
        }
        return out;
    }
};

}  // namespace

std::string sha1_hex(std::string_view data) {
    Sha1 s;
    s.update(data.data(), data.size());
    return s.finish();
}

std::string git_blob_sha1(std::string_view data) {
    Sha1 s;
    const std::string header = "blob " + std::to_string(data.size());
    s.update(header.data(), header.size() + 1);  // include the trailing NUL
    s.update(data.data(), data.size());
    return s.finish();
}

}  // namespace bestarm
