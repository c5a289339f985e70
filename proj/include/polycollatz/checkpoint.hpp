#pragma once

// Checkpoint file for long searches.
//
// Layout (all integers little-endian):
//   magic "PCCK" | u32 version | u8 kind | u32 n | u32 chunk_bits
//   then records: u32 payload_size (= 36) | u32 degree | u64 chunk | u64 best
//                 | u64 witness | u64 examined
// A truncated final record (interrupted write) is ignored on load.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "polycollatz/error.hpp"

namespace polycollatz {

class CheckpointError : public Error {
public:
    using Error::Error;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointHeader {
    std::uint8_t kind = 0;  // 1 = f search
    std::uint32_t n = 0;
    std::uint32_t chunk_bits = 0;

    friend bool operator==(const CheckpointHeader&, const CheckpointHeader&) = default;
};

/// Reduction state of one completed chunk.
struct ChunkResult {
    std::uint32_t degree = 0;
    std::uint64_t chunk = 0;
    std::uint64_t best = 0;
    std::uint64_t witness = 0;
    std::uint64_t examined = 0;

    friend bool operator==(const ChunkResult&, const ChunkResult&) = default;
};

namespace detail {

inline constexpr std::uint32_t kRecordPayload = 4 + 8 * 4;

template <class T>
void put_le(std::string& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out += static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF);
}

template <class T>
T get_le(const std::string& in, std::size_t& pos) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    pos += sizeof(T);
    return static_cast<T>(v);
}

inline std::string encode_header(const CheckpointHeader& h) {
    std::string out = "PCCK";
    put_le(out, kCheckpointVersion);
    put_le(out, h.kind);
    put_le(out, h.n);
    put_le(out, h.chunk_bits);
    return out;
}

inline std::string encode_record(const ChunkResult& r) {
    std::string out;
    put_le(out, kRecordPayload);
    put_le(out, r.degree);
    put_le(out, r.chunk);
    put_le(out, r.best);
    put_le(out, r.witness);
    put_le(out, r.examined);
    return out;
}

inline constexpr std::size_t kHeaderSize = 4 + 4 + 1 + 4 + 4;

}  // namespace detail

/// Reads a checkpoint and checks it belongs to the search described by
/// `expected`. Throws CheckpointError on version or parameter mismatch.
inline std::vector<ChunkResult> load_checkpoint(const std::filesystem::path& path, const CheckpointHeader& expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
    const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() < detail::kHeaderSize || data.compare(0, 4, "PCCK") != 0) {
        throw CheckpointError("not a checkpoint file: " + path.string());
    }
    std::size_t pos = 4;
    const auto version = detail::get_le<std::uint32_t>(data, pos);
    if (version != kCheckpointVersion) {
        throw CheckpointError("checkpoint version " + std::to_string(version) + " is not supported");
    }
    CheckpointHeader h;
    h.kind = detail::get_le<std::uint8_t>(data, pos);
    h.n = detail::get_le<std::uint32_t>(data, pos);
    h.chunk_bits = detail::get_le<std::uint32_t>(data, pos);
    if (!(h == expected)) {
        throw CheckpointError("checkpoint was written for a different search (n=" + std::to_string(h.n) +
                              ", chunk_bits=" + std::to_string(h.chunk_bits) + ")");
    }
    std::vector<ChunkResult> records;
    while (data.size() - pos >= 4) {
        const auto size = detail::get_le<std::uint32_t>(data, pos);
        if (size != detail::kRecordPayload) throw CheckpointError("corrupt checkpoint record size " + std::to_string(size));
        if (data.size() - pos < size) break;  // interrupted write
        ChunkResult r;
        r.degree = detail::get_le<std::uint32_t>(data, pos);
        r.chunk = detail::get_le<std::uint64_t>(data, pos);
        r.best = detail::get_le<std::uint64_t>(data, pos);
        r.witness = detail::get_le<std::uint64_t>(data, pos);
        r.examined = detail::get_le<std::uint64_t>(data, pos);
        records.push_back(r);
    }
    return records;
}

/// Single-writer append log. Opening rewrites the file with the header and
/// any records carried over from a previous run.
class CheckpointWriter {
public:
    CheckpointWriter(const std::filesystem::path& path, const CheckpointHeader& header,
                     const std::vector<ChunkResult>& carried = {})
        : out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw CheckpointError("cannot write checkpoint " + path.string());
        std::string buf = detail::encode_header(header);
        for (const auto& r : carried) buf += detail::encode_record(r);
        out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        out_.flush();
    }

    void append(const ChunkResult& r) {
        const auto buf = detail::encode_record(r);
        out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        out_.flush();
        if (!out_) throw CheckpointError("checkpoint write failed");
    }

private:
    std::ofstream out_;
};

}  // namespace polycollatz
