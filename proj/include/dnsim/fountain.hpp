#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_set>
#include <vector>

// Systematic rateless erasure code: a dense random-linear fountain over
// GF(256). Source data is segmented into blocks; each block can emit its K
// source symbols verbatim followed by an unbounded stream of repair symbols
// whose coefficient rows are a pure function of (block_id, esi). A receiver
// decodes a block from any symbol set whose coefficient matrix has rank K.

namespace dnsim::fc {

// Thread-local count of symbol operations (one GF multiply-accumulate over a
// full symbol payload). Encoder materialization and decoder elimination both
// add to it; used to compare codec work between transmission schemes.
uint64_t& symbol_ops();

// Coefficient derivation: splitmix64 keyed by (block_id, esi). Fixed for the
// life of the format so two encoders agree symbol-for-symbol.
uint64_t coeff_seed(uint32_t block_id, uint32_t esi);
void coefficient_row(uint32_t block_id, uint32_t esi, uint32_t k, uint8_t* out);

struct SourceBlock {
  uint32_t block_id = 0;
  uint32_t symbol_size = 0;
  uint32_t k = 0;               // number of source symbols
  uint64_t data_length = 0;     // true payload bytes before zero padding
  std::vector<uint8_t> data;    // k * symbol_size bytes, last symbol padded

  std::span<const uint8_t> symbol(uint32_t i) const {
    return {data.data() + static_cast<size_t>(i) * symbol_size, symbol_size};
  }
};

struct CodedSymbol {
  uint32_t block_id = 0;
  uint32_t esi = 0;
  bool is_systematic = false;
  std::vector<uint8_t> payload;
};

// Wire layout: block_id (4B big-endian), esi (4B big-endian), payload.
std::vector<uint8_t> serialize(const CodedSymbol& s);
CodedSymbol deserialize(std::span<const uint8_t> wire, uint32_t symbol_size);
size_t wire_size(uint32_t symbol_size);

// Splits data into blocks of at most max_k symbols each. Empty input yields a
// single one-symbol block with data_length 0. Throws std::invalid_argument on
// symbol_size == 0 or max_k == 0.
std::vector<SourceBlock> segment(std::span<const uint8_t> data,
                                 uint32_t symbol_size, uint32_t max_k,
                                 uint32_t first_block_id = 0);

// Single symbol for any esi: source symbol below k, repair at or above.
CodedSymbol make_symbol(const SourceBlock& b, uint32_t esi);

// First k outputs are the source symbols, the rest repair with esi k..n-1.
// Throws on n_total < k ("rate below unity").
std::vector<CodedSymbol> encode_systematic(const SourceBlock& b,
                                           uint32_t n_total);

// ceil(k * ratio) symbols, systematic first. Throws on ratio < 1.
std::vector<CodedSymbol> fixed_rate_encode(const SourceBlock& b, double ratio);

// Unbounded repair symbol generator; stateless restart from any esi
// reproduces identical symbols. Throws on start_esi < k.
class RepairStream {
 public:
  RepairStream(std::shared_ptr<const SourceBlock> block, uint32_t start_esi);
  CodedSymbol next();
  uint32_t next_esi() const { return next_esi_; }

 private:
  std::shared_ptr<const SourceBlock> block_;
  uint32_t next_esi_;
};

enum class PushResult { kDecodable, kNeedMore };

// Incremental Gaussian elimination over GF(256). Received systematic symbols
// become pivots directly; repair rows are reduced against everything already
// known, so the stored rows only span the still-missing columns.
class Decoder {
 public:
  Decoder(uint32_t block_id, uint32_t k, uint32_t symbol_size);

  PushResult push(const CodedSymbol& s);
  PushResult push(uint32_t esi, std::span<const uint8_t> payload);

  bool decodable() const { return rank_ == k_; }
  uint32_t rank() const { return rank_; }
  uint32_t k() const { return k_; }
  uint32_t block_id() const { return block_id_; }
  uint32_t symbols_pushed() const { return symbols_pushed_; }

  // True when pushing this esi cannot raise the rank (already seen / solved).
  bool redundant_esi(uint32_t esi) const;

  // Recovered block content (k * symbol_size bytes, then truncated to
  // truncate_to when truncate_to < that). Requires decodable().
  std::vector<uint8_t> assemble(uint64_t truncate_to) const;

 private:
  struct Row {
    uint32_t pivot;
    std::vector<uint8_t> coeffs;   // k wide, zero at known columns
    std::vector<uint8_t> payload;
  };

  void solve();
  bool reduce_and_insert(Row&& row);

  uint32_t block_id_;
  uint32_t k_;
  uint32_t symbol_size_;
  uint32_t rank_ = 0;
  uint32_t n_known_ = 0;
  uint32_t symbols_pushed_ = 0;
  bool solved_ = false;
  std::vector<uint8_t> known_;     // per-source-symbol flag
  std::vector<uint8_t> source_;    // k * symbol_size, filled as recovered
  std::vector<Row> rows_;          // echelon rows over missing columns
  std::unordered_set<uint32_t> seen_repair_;
};

// On-demand FC: a virtual block formed from still-missing source symbols
// padded with already-received ones. The layout is fixed so both ends agree
// without signaling: padding occupies virtual esi 0..padding-1, missing
// symbols follow.
struct VirtualBlockSpec {
  uint32_t vblock_id = 0;
  std::vector<uint32_t> padding_esi;  // source esi of the padding symbols
  std::vector<uint32_t> missing_esi;  // source esi of the missing symbols

  uint32_t virtual_k() const {
    return static_cast<uint32_t>(padding_esi.size() + missing_esi.size());
  }
};

// Deterministic composition both ends can derive from the missing set alone:
// padding = the pad_count largest received esi, ascending.
VirtualBlockSpec make_virtual_block_spec(uint32_t vblock_id, uint32_t k,
                                         const std::vector<uint32_t>& missing,
                                         uint32_t pad_count);

// n_repair repair symbols over the virtual block. Throws when the spec is
// empty; n_repair == 0 yields an empty list.
std::vector<CodedSymbol> od_fc_encode(const SourceBlock& b,
                                      const VirtualBlockSpec& spec,
                                      uint32_t n_repair);

}  // namespace dnsim::fc
