#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "forge/bignat.hpp"

namespace forge {

// Ordered plan of named bit blocks, listed highest-order first. Gadget items
// and targets are assembled against such a plan; blocks are addressed by
// name because the constructions interleave many block families and
// positional indexing is error-prone.
class BitBlockLayout {
  public:
    struct Block {
        std::string name;
        std::uint64_t width;   // bits
        std::uint64_t offset;  // from bit 0 = sum of widths of all later blocks
    };

    const std::vector<Block>& blocks() const { return blocks_; }
    std::uint64_t total_width() const { return total_width_; }
    bool has_block(const std::string& name) const { return index_.count(name) > 0; }
    const Block& block(const std::string& name) const;

  private:
    friend BitBlockLayout build_layout(const std::vector<std::pair<std::string, std::uint64_t>>&);
    std::vector<Block> blocks_;
    std::map<std::string, std::size_t> index_;
    std::uint64_t total_width_ = 0;
};

// errors: DuplicateBlockName, ZeroWidth
BitBlockLayout build_layout(const std::vector<std::pair<std::string, std::uint64_t>>& blocks);

// Collects per-block values and assembles them into one number. Unset
// blocks default to 0; a value that does not fit its declared width raises
// BlockOverflow at assemble time (a gadget construction bug, never data).
class BlockWriter {
  public:
    explicit BlockWriter(const BitBlockLayout& layout) : layout_(&layout) {}

    void set(const std::string& block, BigNat value);
    const BitBlockLayout& layout() const { return *layout_; }
    const std::map<std::string, BigNat>& pending() const { return pending_; }

  private:
    const BitBlockLayout* layout_;
    std::map<std::string, BigNat> pending_;
};

// Sum over blocks of value * 2^offset. errors: BlockOverflow(name)
BigNat assemble(const BlockWriter& writer);

// (x >> offset) mod 2^width. errors: UnknownBlock
BigNat extract_block(const BigNat& x, const BitBlockLayout& layout, const std::string& name);

}  // namespace forge
