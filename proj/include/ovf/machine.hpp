// SPDX-License-Identifier: Apache-2.0
//
// Machine integer type descriptors: bit width, signedness and the
// representable range.

#pragma once

#include "ovf/interval.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace ovf {

struct MachineType {
    int bits;
    bool is_signed;

    static MachineType make_signed(int bits) { return validated({bits, true}); }
    static MachineType make_unsigned(int bits) { return validated({bits, false}); }

    // "int32", "uint8", ...
    static std::optional<MachineType> parse(std::string_view text) {
        bool sgn = true;
        if (text.starts_with("uint")) {
            sgn = false;
            text.remove_prefix(4);
        } else if (text.starts_with("int")) {
            text.remove_prefix(3);
        } else {
            return std::nullopt;
        }
        if (text != "4" && text != "8" && text != "16" && text != "32" && text != "64")
            return std::nullopt;
        return MachineType{std::stoi(std::string(text)), sgn};
    }

    Int min() const {
        if (!is_signed)
            return 0;
        return -(Int(1) << (bits - 1));
    }
    Int max() const {
        if (!is_signed)
            return (Int(1) << bits) - 1;
        return (Int(1) << (bits - 1)) - 1;
    }

    bool contains(const Int& v) const { return min() <= v && v <= max(); }
    bool contains(const Interval& iv) const { return min() <= iv.lo && iv.hi <= max(); }

    std::string name() const {
        return (is_signed ? "int" : "uint") + std::to_string(bits);
    }

    friend bool operator==(const MachineType& a, const MachineType& b) {
        return a.bits == b.bits && a.is_signed == b.is_signed;
    }

  private:
    static MachineType validated(MachineType m) {
        if (m.bits != 4 && m.bits != 8 && m.bits != 16 && m.bits != 32 && m.bits != 64)
            throw error("unsupported machine width: " + std::to_string(m.bits));
        return m;
    }
};

// withinMachine: the whole interval is representable.
inline bool within_machine(const Interval& iv, const MachineType& m) {
    return m.contains(iv);
}

} // namespace ovf
