#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ltlnrm/automata/moore_machine.hpp"

namespace ltlnrm::automata {

// Binary machine format, little-endian:
//
//   "NRMM"                 magic
//   u16                    version (1)
//   u32                    symbol count, then per symbol: u32 length + bytes
//   u32                    state count
//   u32                    initial state
//   u32 x states x symbols transition table, row-major by state
//   i8  x states           output per state (+1, 0, -1)

inline constexpr std::uint16_t kMachineFormatVersion = 1;

std::vector<std::uint8_t> serialize(const MooreMachine& m);

/// Throws MalformedFileError with the offset of the first bad byte.
MooreMachine deserialize(std::span<const std::uint8_t> bytes);

void save_machine(const MooreMachine& m, const std::filesystem::path& path);
MooreMachine load_machine(const std::filesystem::path& path);

}  // namespace ltlnrm::automata
