#include "forge/bitblock.hpp"

#include "forge/error.hpp"

namespace forge {

const BitBlockLayout::Block& BitBlockLayout::block(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownBlock(name);
    return blocks_[it->second];
}

BitBlockLayout build_layout(const std::vector<std::pair<std::string, std::uint64_t>>& blocks) {
    BitBlockLayout layout;
    std::uint64_t total = 0;
    for (const auto& [name, width] : blocks) {
        if (width == 0) throw ZeroWidth(name);
        if (layout.index_.count(name)) throw DuplicateBlockName(name);
        layout.index_[name] = layout.blocks_.size();
        layout.blocks_.push_back({name, width, 0});
        total += width;
    }
    layout.total_width_ = total;
    std::uint64_t below = total;
    for (auto& b : layout.blocks_) {
        below -= b.width;
        b.offset = below;
    }
    return layout;
}

void BlockWriter::set(const std::string& block, BigNat value) {
    layout_->block(block);  // UnknownBlock early
    pending_.insert_or_assign(block, std::move(value));
}

BigNat assemble(const BlockWriter& writer) {
    BigNat acc(0);
    for (const auto& [name, value] : writer.pending()) {
        const auto& b = writer.layout().block(name);
        if (value.bit_length() > b.width) throw BlockOverflow(name);
        acc += value << b.offset;
    }
    return acc;
}

BigNat extract_block(const BigNat& x, const BitBlockLayout& layout, const std::string& name) {
    const auto& b = layout.block(name);
    return (x >> b.offset).mod(BigNat::two_pow(b.width));
}

}  // namespace forge
