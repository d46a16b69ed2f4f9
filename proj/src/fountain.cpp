#include "dnsim/fountain.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "dnsim/gf256.hpp"

namespace dnsim::fc {

uint64_t& symbol_ops() {
  thread_local uint64_t ops = 0;
  return ops;
}

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t coeff_seed(uint32_t block_id, uint32_t esi) {
  uint64_t s = (static_cast<uint64_t>(block_id) << 32) | esi;
  // one scramble round so nearby (block_id, esi) pairs decorrelate
  return splitmix64(s);
}

void coefficient_row(uint32_t block_id, uint32_t esi, uint32_t k,
                     uint8_t* out) {
  uint64_t state = coeff_seed(block_id, esi);
  uint32_t i = 0;
  while (i < k) {
    uint64_t word = splitmix64(state);
    uint32_t take = std::min(8u, k - i);
    std::memcpy(out + i, &word, take);
    i += take;
  }
}

std::vector<uint8_t> serialize(const CodedSymbol& s) {
  std::vector<uint8_t> wire(8 + s.payload.size());
  for (int i = 0; i < 4; ++i) {
    wire[i] = static_cast<uint8_t>(s.block_id >> (24 - 8 * i));
    wire[4 + i] = static_cast<uint8_t>(s.esi >> (24 - 8 * i));
  }
  std::copy(s.payload.begin(), s.payload.end(), wire.begin() + 8);
  return wire;
}

CodedSymbol deserialize(std::span<const uint8_t> wire, uint32_t symbol_size) {
  if (wire.size() != 8 + static_cast<size_t>(symbol_size))
    throw std::invalid_argument("coded symbol wire size mismatch");
  CodedSymbol s;
  for (int i = 0; i < 4; ++i) {
    s.block_id = (s.block_id << 8) | wire[i];
    s.esi = (s.esi << 8) | wire[4 + i];
  }
  s.payload.assign(wire.begin() + 8, wire.end());
  return s;
}

size_t wire_size(uint32_t symbol_size) { return 8 + symbol_size; }

std::vector<SourceBlock> segment(std::span<const uint8_t> data,
                                 uint32_t symbol_size, uint32_t max_k,
                                 uint32_t first_block_id) {
  if (symbol_size == 0) throw std::invalid_argument("symbol_size must be > 0");
  if (max_k == 0) throw std::invalid_argument("max_k must be >= 1");

  uint64_t total_symbols =
      (data.size() + symbol_size - 1) / symbol_size;
  if (total_symbols == 0) total_symbols = 1;  // empty input: one zero symbol

  std::vector<SourceBlock> blocks;
  uint64_t sym_off = 0;
  uint32_t id = first_block_id;
  while (sym_off < total_symbols) {
    uint32_t k = static_cast<uint32_t>(
        std::min<uint64_t>(max_k, total_symbols - sym_off));
    SourceBlock b;
    b.block_id = id++;
    b.symbol_size = symbol_size;
    b.k = k;
    uint64_t byte_off = sym_off * symbol_size;
    uint64_t bytes = data.size() > byte_off
                         ? std::min<uint64_t>(data.size() - byte_off,
                                              static_cast<uint64_t>(k) * symbol_size)
                         : 0;
    b.data_length = bytes;
    b.data.assign(static_cast<size_t>(k) * symbol_size, 0);
    if (bytes > 0) std::memcpy(b.data.data(), data.data() + byte_off, bytes);
    blocks.push_back(std::move(b));
    sym_off += k;
  }
  return blocks;
}

CodedSymbol make_symbol(const SourceBlock& b, uint32_t esi) {
  CodedSymbol s;
  s.block_id = b.block_id;
  s.esi = esi;
  if (esi < b.k) {
    s.is_systematic = true;
    auto sym = b.symbol(esi);
    s.payload.assign(sym.begin(), sym.end());
    return s;
  }
  s.is_systematic = false;
  s.payload.assign(b.symbol_size, 0);
  std::vector<uint8_t> coeffs(b.k);
  coefficient_row(b.block_id, esi, b.k, coeffs.data());
  for (uint32_t i = 0; i < b.k; ++i) {
    if (coeffs[i] == 0) continue;
    gf::mul_add(s.payload.data(), b.symbol(i).data(), coeffs[i],
                b.symbol_size);
    ++symbol_ops();
  }
  return s;
}

std::vector<CodedSymbol> encode_systematic(const SourceBlock& b,
                                           uint32_t n_total) {
  if (n_total < b.k) throw std::invalid_argument("rate below unity");
  std::vector<CodedSymbol> out;
  out.reserve(n_total);
  for (uint32_t esi = 0; esi < n_total; ++esi)
    out.push_back(make_symbol(b, esi));
  return out;
}

std::vector<CodedSymbol> fixed_rate_encode(const SourceBlock& b,
                                           double ratio) {
  if (ratio < 1.0) throw std::invalid_argument("fixed-rate ratio must be >= 1");
  uint32_t n = static_cast<uint32_t>(std::ceil(static_cast<double>(b.k) * ratio));
  return encode_systematic(b, n);
}

RepairStream::RepairStream(std::shared_ptr<const SourceBlock> block,
                           uint32_t start_esi)
    : block_(std::move(block)), next_esi_(start_esi) {
  if (start_esi < block_->k)
    throw std::invalid_argument("repair stream must start at esi >= k");
}

CodedSymbol RepairStream::next() { return make_symbol(*block_, next_esi_++); }

Decoder::Decoder(uint32_t block_id, uint32_t k, uint32_t symbol_size)
    : block_id_(block_id),
      k_(k),
      symbol_size_(symbol_size),
      known_(k, 0),
      source_(static_cast<size_t>(k) * symbol_size, 0) {}

bool Decoder::redundant_esi(uint32_t esi) const {
  if (decodable()) return true;
  if (esi < k_) return known_[esi] != 0;
  return seen_repair_.count(esi) != 0;
}

PushResult Decoder::push(const CodedSymbol& s) {
  if (s.block_id != block_id_)
    throw std::invalid_argument("coded symbol pushed into wrong block");
  return push(s.esi, s.payload);
}

// Stored rows form a forward echelon over the still-missing columns: they are
// kept sorted by pivot, each row is zero before its pivot and at every known
// column, and pivots are unique. Full reduction is deferred to solve(), which
// back-substitutes payloads only.

// Reduces *row (zero before all stored pivots it hits) against the echelon
// and inserts it if independent. Returns true when the rank grew.
bool Decoder::reduce_and_insert(Row&& row) {
  for (const Row& r : rows_) {
    uint8_t c = row.coeffs[r.pivot];
    if (c == 0) continue;
    gf::mul_add(row.coeffs.data() + r.pivot, r.coeffs.data() + r.pivot, c,
                k_ - r.pivot);
    gf::mul_add(row.payload.data(), r.payload.data(), c, symbol_size_);
    ++symbol_ops();
  }
  uint32_t p = 0;
  while (p < k_ && row.coeffs[p] == 0) ++p;
  if (p == k_) return false;  // linearly dependent

  uint8_t lead = row.coeffs[p];
  if (lead != 1) {
    gf::scale(row.coeffs.data() + p, gf::inv(lead), k_ - p);
    gf::scale(row.payload.data(), gf::inv(lead), symbol_size_);
    ++symbol_ops();
  }
  row.pivot = p;
  auto pos = std::lower_bound(
      rows_.begin(), rows_.end(), p,
      [](const Row& r, uint32_t piv) { return r.pivot < piv; });
  rows_.insert(pos, std::move(row));
  ++rank_;
  return true;
}

PushResult Decoder::push(uint32_t esi, std::span<const uint8_t> payload) {
  if (payload.size() != symbol_size_)
    throw std::invalid_argument("coded symbol size mismatch");
  ++symbols_pushed_;
  if (decodable()) return PushResult::kDecodable;

  if (esi < k_) {
    if (known_[esi]) return PushResult::kNeedMore;  // duplicate
    known_[esi] = 1;
    ++n_known_;
    std::memcpy(source_.data() + static_cast<size_t>(esi) * symbol_size_,
                payload.data(), symbol_size_);
    // substitute into stored rows; at most one row pivots on this column and
    // gets re-inserted, the others only zero a coefficient
    Row repivot;
    bool have_repivot = false;
    for (auto it = rows_.begin(); it != rows_.end();) {
      uint8_t c = it->pivot <= esi ? it->coeffs[esi] : 0;
      if (c != 0) {
        gf::mul_add(it->payload.data(), payload.data(), c, symbol_size_);
        ++symbol_ops();
        it->coeffs[esi] = 0;
        if (it->pivot == esi) {
          repivot = std::move(*it);
          have_repivot = true;
          it = rows_.erase(it);
          --rank_;
          continue;
        }
      }
      ++it;
    }
    ++rank_;
    if (have_repivot)
      (void)reduce_and_insert(std::move(repivot));  // dependent -> info already held
    if (decodable()) solve();
    return decodable() ? PushResult::kDecodable : PushResult::kNeedMore;
  }

  if (!seen_repair_.insert(esi).second)
    return PushResult::kNeedMore;  // duplicate repair symbol

  Row row;
  row.coeffs.resize(k_);
  coefficient_row(block_id_, esi, k_, row.coeffs.data());
  row.payload.assign(payload.begin(), payload.end());

  // substitute known source symbols
  if (n_known_ > 0) {
    for (uint32_t i = 0; i < k_; ++i) {
      if (row.coeffs[i] == 0 || !known_[i]) continue;
      gf::mul_add(row.payload.data(),
                  source_.data() + static_cast<size_t>(i) * symbol_size_,
                  row.coeffs[i], symbol_size_);
      ++symbol_ops();
      row.coeffs[i] = 0;
    }
  }
  (void)reduce_and_insert(std::move(row));
  if (decodable()) solve();
  return decodable() ? PushResult::kDecodable : PushResult::kNeedMore;
}

void Decoder::solve() {
  if (solved_) return;
  // payload-only back-substitution, descending pivot order; every nonzero
  // trailing coefficient points at a symbol recovered in an earlier step
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    Row& r = *it;
    for (uint32_t c = r.pivot + 1; c < k_; ++c) {
      if (r.coeffs[c] == 0) continue;
      gf::mul_add(r.payload.data(),
                  source_.data() + static_cast<size_t>(c) * symbol_size_,
                  r.coeffs[c], symbol_size_);
      ++symbol_ops();
    }
    std::memcpy(source_.data() + static_cast<size_t>(r.pivot) * symbol_size_,
                r.payload.data(), symbol_size_);
    known_[r.pivot] = 1;
  }
  rows_.clear();
  rows_.shrink_to_fit();
  solved_ = true;
}

std::vector<uint8_t> Decoder::assemble(uint64_t truncate_to) const {
  if (!decodable())
    throw std::logic_error("assemble() before the block is decodable");
  uint64_t n = std::min<uint64_t>(truncate_to, source_.size());
  return {source_.begin(), source_.begin() + static_cast<size_t>(n)};
}

VirtualBlockSpec make_virtual_block_spec(uint32_t vblock_id, uint32_t k,
                                         const std::vector<uint32_t>& missing,
                                         uint32_t pad_count) {
  VirtualBlockSpec spec;
  spec.vblock_id = vblock_id;
  spec.missing_esi = missing;
  std::sort(spec.missing_esi.begin(), spec.missing_esi.end());
  // padding: the pad_count largest received esi, ascending
  std::vector<uint32_t> received;
  received.reserve(k);
  size_t mi = 0;
  for (uint32_t esi = 0; esi < k; ++esi) {
    if (mi < spec.missing_esi.size() && spec.missing_esi[mi] == esi) {
      ++mi;
      continue;
    }
    received.push_back(esi);
  }
  uint32_t take = std::min<uint32_t>(pad_count,
                                     static_cast<uint32_t>(received.size()));
  spec.padding_esi.assign(received.end() - take, received.end());
  return spec;
}

std::vector<CodedSymbol> od_fc_encode(const SourceBlock& b,
                                      const VirtualBlockSpec& spec,
                                      uint32_t n_repair) {
  if (spec.virtual_k() == 0)
    throw std::invalid_argument("virtual block must hold at least one symbol");
  if (spec.missing_esi.empty())
    throw std::invalid_argument("on-demand encoding needs missing symbols");

  // materialize the virtual block: padding first, then missing
  SourceBlock vb;
  vb.block_id = spec.vblock_id;
  vb.symbol_size = b.symbol_size;
  vb.k = spec.virtual_k();
  vb.data_length = static_cast<uint64_t>(vb.k) * vb.symbol_size;
  vb.data.resize(vb.data_length);
  size_t off = 0;
  for (uint32_t esi : spec.padding_esi) {
    auto sym = b.symbol(esi);
    std::memcpy(vb.data.data() + off, sym.data(), b.symbol_size);
    off += b.symbol_size;
  }
  for (uint32_t esi : spec.missing_esi) {
    auto sym = b.symbol(esi);
    std::memcpy(vb.data.data() + off, sym.data(), b.symbol_size);
    off += b.symbol_size;
  }

  std::vector<CodedSymbol> out;
  out.reserve(n_repair);
  for (uint32_t i = 0; i < n_repair; ++i)
    out.push_back(make_symbol(vb, vb.k + i));
  return out;
}

}  // namespace dnsim::fc
