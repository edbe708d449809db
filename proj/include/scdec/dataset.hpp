#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "scdec/pauli.hpp"
#include "scdec/pure_error.hpp"
#include "scdec/surface_code.hpp"

namespace scdec {

// Labeled decoding samples in the on-disk record layout: per sample
// {err_x, err_z, syndrome, ped_x, ped_z, label}, bit-fields byte-aligned,
// little-endian bit order. Binary file = 48-byte header + records; the CSV
// mirror carries the same fields as hex columns.
class Dataset {
public:
    Dataset(int distance, double p, std::uint64_t seed, std::uint64_t stream_id);

    int distance() const { return d_; }
    double p() const { return p_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t ped_table_hash() const { return ped_table_hash_; }
    void set_ped_table_hash(std::uint64_t h) { ped_table_hash_ = h; }

    std::size_t size() const { return count_; }
    std::size_t record_size() const;

    void append(const PauliOp& true_error, const SyndromeVector& syndrome,
                const PauliOp& ped_correction, LogicalClass label);

    PauliOp true_error(std::size_t i) const;
    SyndromeVector syndrome(std::size_t i) const;
    PauliOp ped_correction(std::size_t i) const;
    LogicalClass label(std::size_t i) const;

    const std::vector<std::uint8_t>& records() const { return records_; }

    void save_binary(const std::string& path) const;
    static Dataset load_binary(const std::string& path);
    void save_csv(const std::string& path) const;
    static Dataset load_csv(const std::string& path);

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    int d_ = 0;
    double p_ = 0.0;
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t ped_table_hash_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint8_t> records_;
};

// Default training-set sizes per distance.
std::size_t default_training_count(int distance);

// Samples depolarizing errors, computes syndromes, PED corrections, and class
// labels in one pass. Reproducible from (seed, stream_id); records land in
// trial order.
Dataset generate_dataset(const CodeLayout& layout, const PureErrorTable& table, double p,
                         std::size_t count, std::uint64_t seed, std::uint64_t stream_id = 0);

}  // namespace scdec
