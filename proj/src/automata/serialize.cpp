#include "ltlnrm/automata/serialize.hpp"

#include "ltlnrm/core/binary_io.hpp"
#include "ltlnrm/core/error.hpp"

namespace ltlnrm::automata {
namespace {
constexpr std::uint32_t kMaxSymbols = 1u << 16;
constexpr std::uint32_t kMaxStates = 1u << 26;
}  // namespace

std::vector<std::uint8_t> serialize(const MooreMachine& m) {
  ByteWriter w;
  w.bytes("NRMM");
  w.u16(kMachineFormatVersion);
  w.u32(static_cast<std::uint32_t>(m.num_symbols()));
  for (const auto& name : m.alphabet().names()) w.str(name);
  w.u32(static_cast<std::uint32_t>(m.num_states()));
  w.u32(m.initial());
  for (StateId t : m.transitions()) w.u32(t);
  for (Output o : m.outputs()) w.i8(o);
  return w.take();
}

MooreMachine deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect("NRMM", "machine file");
  const std::size_t version_at = r.offset();
  if (r.u16() != kMachineFormatVersion) throw MalformedFileError("unsupported machine format version", version_at);

  const std::size_t symbols_at = r.offset();
  const std::uint32_t k = r.u32();
  if (k == 0 || k > kMaxSymbols) throw MalformedFileError("symbol count out of range", symbols_at);
  std::vector<std::string> names;
  names.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) names.push_back(r.str(256));
  Alphabet alphabet;
  try {
    alphabet = Alphabet(names);
  } catch (const std::exception& e) {
    throw MalformedFileError(std::string("invalid alphabet: ") + e.what(), symbols_at);
  }
  if (alphabet.size() != k) throw MalformedFileError("alphabet lacks the _empty symbol", symbols_at);

  const std::size_t states_at = r.offset();
  const std::uint32_t n = r.u32();
  if (n == 0 || n > kMaxStates) throw MalformedFileError("state count out of range", states_at);
  const std::size_t initial_at = r.offset();
  const std::uint32_t initial = r.u32();
  if (initial >= n) throw MalformedFileError("initial state out of range", initial_at);

  if (r.remaining() < static_cast<std::size_t>(n) * k * 4 + n) {
    throw MalformedFileError("truncated transition table", r.offset());
  }
  std::vector<StateId> transitions(static_cast<std::size_t>(n) * k);
  for (auto& t : transitions) {
    const std::size_t at = r.offset();
    t = r.u32();
    if (t >= n) throw MalformedFileError("transition target out of range", at);
  }
  std::vector<Output> outputs(n);
  for (auto& o : outputs) {
    const std::size_t at = r.offset();
    o = r.i8();
    if (o < -1 || o > 1) throw MalformedFileError("invalid output value", at);
  }
  r.expect_end();
  return MooreMachine(std::move(alphabet), initial, std::move(transitions), std::move(outputs));
}

void save_machine(const MooreMachine& m, const std::filesystem::path& path) { write_file(path, serialize(m)); }

MooreMachine load_machine(const std::filesystem::path& path) { return deserialize(read_file(path)); }

}  // namespace ltlnrm::automata
