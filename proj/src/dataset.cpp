#include "scdec/dataset.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "scdec/noise.hpp"

namespace scdec {

namespace {

constexpr char kMagic[4] = {'Q', 'S', 'D', '1'};
constexpr std::size_t kHeaderSize = 48;

std::size_t bit_bytes(std::size_t bits) { return (bits + 7) / 8; }

void pack_bits(std::uint8_t* dest, const BitVec& v) {
    std::memcpy(dest, v.bytes().data(), bit_bytes(v.size()));
}

BitVec unpack_bits(const std::uint8_t* src, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((src[i >> 3] >> (i & 7)) & 1) v.set(i, true);
    }
    return v;
}

template <typename T>
void put_le(std::uint8_t* dest, T value) {
    std::memcpy(dest, &value, sizeof(T));  // little-endian platform, asserted in pauli.cpp
}

template <typename T>
T get_le(const std::uint8_t* src) {
    T value;
    std::memcpy(&value, src, sizeof(T));
    return value;
}

std::array<std::uint8_t, kHeaderSize> encode_header(const Dataset& ds) {
    std::array<std::uint8_t, kHeaderSize> h{};
    std::memcpy(h.data(), kMagic, 4);
    put_le<std::uint16_t>(h.data() + 4, static_cast<std::uint16_t>(ds.distance()));
    put_le<std::uint16_t>(h.data() + 6, 0);  // flags, reserved
    put_le<double>(h.data() + 8, ds.p());
    put_le<std::uint64_t>(h.data() + 16, ds.size());
    put_le<std::uint64_t>(h.data() + 24, ds.seed());
    put_le<std::uint64_t>(h.data() + 32, ds.stream_id());
    put_le<std::uint64_t>(h.data() + 40, ds.ped_table_hash());
    return h;
}

}  // namespace

Dataset::Dataset(int distance, double p, std::uint64_t seed, std::uint64_t stream_id)
    : d_(distance), p_(p), seed_(seed), stream_id_(stream_id) {
    if (distance < 3 || distance % 2 == 0) {
        throw std::invalid_argument("Dataset: invalid distance " + std::to_string(distance));
    }
}

std::size_t Dataset::record_size() const {
    const std::size_t n = static_cast<std::size_t>(d_) * d_;
    return 4 * bit_bytes(n) + bit_bytes(n - 1) + 1;
}

void Dataset::append(const PauliOp& true_error, const SyndromeVector& syndrome,
                     const PauliOp& ped_correction, LogicalClass label) {
    const std::size_t n = static_cast<std::size_t>(d_) * d_;
    if (true_error.n_qubits() != n || ped_correction.n_qubits() != n ||
        syndrome.size() != n - 1) {
        throw std::invalid_argument("Dataset::append: field sizes do not match distance");
    }
    const std::size_t nb = bit_bytes(n);
    const std::size_t sb = bit_bytes(n - 1);
    const std::size_t base = records_.size();
    records_.resize(base + record_size());
    std::uint8_t* rec = records_.data() + base;
    pack_bits(rec, true_error.x);
    pack_bits(rec + nb, true_error.z);
    pack_bits(rec + 2 * nb, syndrome);
    pack_bits(rec + 2 * nb + sb, ped_correction.x);
    pack_bits(rec + 3 * nb + sb, ped_correction.z);
    rec[4 * nb + sb] = static_cast<std::uint8_t>(label);
    ++count_;
}

PauliOp Dataset::true_error(std::size_t i) const {
    const std::size_t n = static_cast<std::size_t>(d_) * d_;
    const std::size_t nb = bit_bytes(n);
    const std::uint8_t* rec = records_.data() + i * record_size();
    PauliOp e(n);
    e.x = unpack_bits(rec, n);
    e.z = unpack_bits(rec + nb, n);
    return e;
}

SyndromeVector Dataset::syndrome(std::size_t i) const {
    const std::size_t n = static_cast<std::size_t>(d_) * d_;
    const std::uint8_t* rec = records_.data() + i * record_size();
    return unpack_bits(rec + 2 * bit_bytes(n), n - 1);
}

PauliOp Dataset::ped_correction(std::size_t i) const {
    const std::size_t n = static_cast<std::size_t>(d_) * d_;
    const std::size_t nb = bit_bytes(n);
    const std::size_t sb = bit_bytes(n - 1);
    const std::uint8_t* rec = records_.data() + i * record_size();
    PauliOp c(n);
    c.x = unpack_bits(rec + 2 * nb + sb, n);
    c.z = unpack_bits(rec + 3 * nb + sb, n);
    return c;
}

LogicalClass Dataset::label(std::size_t i) const {
    const std::size_t n = static_cast<std::size_t>(d_) * d_;
    const std::uint8_t byte = records_[i * record_size() + 4 * bit_bytes(n) + bit_bytes(n - 1)];
    if (byte > 3) throw std::runtime_error("Dataset: corrupt label byte");
    return static_cast<LogicalClass>(byte);
}

void Dataset::save_binary(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("Dataset::save_binary: cannot open " + path);
    const auto header = encode_header(*this);
    out.write(reinterpret_cast<const char*>(header.data()), header.size());
    out.write(reinterpret_cast<const char*>(records_.data()),
              static_cast<std::streamsize>(records_.size()));
    if (!out) throw std::runtime_error("Dataset::save_binary: write failed on " + path);
}

Dataset Dataset::load_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("Dataset::load_binary: cannot open " + path);
    std::array<std::uint8_t, kHeaderSize> h{};
    in.read(reinterpret_cast<char*>(h.data()), h.size());
    if (!in || std::memcmp(h.data(), kMagic, 4) != 0) {
        throw std::runtime_error("Dataset::load_binary: bad magic in " + path);
    }
    const int d = get_le<std::uint16_t>(h.data() + 4);
    Dataset ds(d, get_le<double>(h.data() + 8), get_le<std::uint64_t>(h.data() + 24),
               get_le<std::uint64_t>(h.data() + 32));
    ds.ped_table_hash_ = get_le<std::uint64_t>(h.data() + 40);
    const std::uint64_t count = get_le<std::uint64_t>(h.data() + 16);
    ds.records_.resize(count * ds.record_size());
    in.read(reinterpret_cast<char*>(ds.records_.data()),
            static_cast<std::streamsize>(ds.records_.size()));
    if (!in || in.gcount() != static_cast<std::streamsize>(ds.records_.size())) {
        throw std::runtime_error("Dataset::load_binary: truncated records in " + path);
    }
    ds.count_ = count;
    return ds;
}

void Dataset::save_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("Dataset::save_csv: cannot open " + path);
    char meta[160];
    std::snprintf(meta, sizeof(meta), "# d=%d p=%.17g count=%zu seed=%llu stream=%llu ped=%llu\n",
                  d_, p_, count_, static_cast<unsigned long long>(seed_),
                  static_cast<unsigned long long>(stream_id_),
                  static_cast<unsigned long long>(ped_table_hash_));
    out << meta << "err_x,err_z,syndrome,ped_x,ped_z,label\n";
    for (std::size_t i = 0; i < count_; ++i) {
        const PauliOp e = true_error(i);
        const PauliOp c = ped_correction(i);
        out << e.x.to_hex() << ',' << e.z.to_hex() << ',' << syndrome(i).to_hex() << ','
            << c.x.to_hex() << ',' << c.z.to_hex() << ','
            << static_cast<int>(label(i)) << '\n';
    }
    if (!out) throw std::runtime_error("Dataset::save_csv: write failed on " + path);
}

Dataset Dataset::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Dataset::load_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw std::runtime_error("Dataset::load_csv: missing metadata line in " + path);
    }
    int d = 0;
    double p = 0.0;
    std::size_t count = 0;
    unsigned long long seed = 0, stream = 0, ped = 0;
    if (std::sscanf(line.c_str(), "# d=%d p=%lg count=%zu seed=%llu stream=%llu ped=%llu", &d, &p,
                    &count, &seed, &stream, &ped) != 6) {
        throw std::runtime_error("Dataset::load_csv: malformed metadata in " + path);
    }
    if (!std::getline(in, line)) {
        throw std::runtime_error("Dataset::load_csv: missing column header in " + path);
    }
    Dataset ds(d, p, seed, stream);
    ds.ped_table_hash_ = ped;
    const std::size_t n = static_cast<std::size_t>(d) * d;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string, 6> fields;
        std::size_t start = 0;
        for (int f = 0; f < 6; ++f) {
            const std::size_t comma = line.find(',', start);
            if (f < 5 && comma == std::string::npos) {
                throw std::runtime_error("Dataset::load_csv: malformed row in " + path);
            }
            fields[f] = line.substr(start, comma == std::string::npos ? comma : comma - start);
            start = comma + 1;
        }
        PauliOp e(n), c(n);
        e.x = BitVec::from_hex(fields[0], n);
        e.z = BitVec::from_hex(fields[1], n);
        const SyndromeVector s = BitVec::from_hex(fields[2], n - 1);
        c.x = BitVec::from_hex(fields[3], n);
        c.z = BitVec::from_hex(fields[4], n);
        const int lbl = std::stoi(fields[5]);
        if (lbl < 0 || lbl > 3) throw std::runtime_error("Dataset::load_csv: bad label");
        ds.append(e, s, c, static_cast<LogicalClass>(lbl));
    }
    if (ds.count_ != count) {
        throw std::runtime_error("Dataset::load_csv: row count does not match metadata");
    }
    return ds;
}

std::size_t default_training_count(int distance) {
    switch (distance) {
        case 3: return 256;
        case 5: return 200000;
        case 7: return 3000000;
        case 9: return 20000000;
        default: throw std::invalid_argument("default_training_count: no default for distance " +
                                             std::to_string(distance));
    }
}

Dataset generate_dataset(const CodeLayout& layout, const PureErrorTable& table, double p,
                         std::size_t count, std::uint64_t seed, std::uint64_t stream_id) {
    if (count < 1) throw std::invalid_argument("generate_dataset: count must be >= 1");
    Dataset ds(layout.distance(), p, seed, stream_id);
    ds.set_ped_table_hash(table.hash());
    const NoiseParams params{p, seed, stream_id};
    for (std::size_t i = 0; i < count; ++i) {
        const PauliOp e = sample_error(layout, params, i);
        const SyndromeVector s = layout.syndrome(e);
        const PauliOp corr = table.decode(s);
        const LogicalClass label = layout.logical_class(compose(e, corr));
        ds.append(e, s, corr, label);
    }
    return ds;
}

}  // namespace scdec
