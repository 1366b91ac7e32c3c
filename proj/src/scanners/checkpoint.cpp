#include "jumpfall/scanners/checkpoint.hpp"

#include <fstream>
#include <sstream>

namespace jumpfall {

namespace {

std::string expect_field(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw ScanError("checkpoint truncated before '" + key + "'");
  const std::string prefix = key + " ";
  if (line.rfind(prefix, 0) != 0) throw ScanError("checkpoint: expected '" + key + "', got '" + line + "'");
  return line.substr(prefix.size());
}

std::uint64_t to_u64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ScanError("checkpoint: bad value for '" + key + "': " + s);
  }
}

int to_int(const std::string& s, const std::string& key) { return static_cast<int>(to_u64(s, key)); }

}  // namespace

std::string ScanCheckpoint::serialize() const {
  std::ostringstream out;
  out << "jumpfall-checkpoint " << kFormatVersion << '\n'
      << "scan-id " << scan_id << '\n'
      << "config-hash " << config_hash << '\n'
      << "chunks-done " << chunks_done << '\n'
      << "last-completed " << last_completed << '\n'
      << "ft-max " << ft_max << '\n'
      << "sft-max " << sft_max << '\n'
      << "seen-ft ";
  if (seen_ft.empty()) {
    out << '-';
  } else {
    for (std::size_t i = 0; i < seen_ft.size(); ++i) out << (i ? "," : "") << seen_ft[i];
  }
  out << '\n' << "records " << records.size() << '\n';
  for (const RecordEntry& r : records) {
    out << to_string(r.kind) << '\t' << r.n << '\t' << r.bit_length << '\t' << r.value << '\n';
  }
  out << "end\n";
  return out.str();
}

ScanCheckpoint ScanCheckpoint::parse(const std::string& text) {
  std::istringstream in(text);
  ScanCheckpoint cp;
  const std::string version = expect_field(in, "jumpfall-checkpoint");
  if (to_int(version, "version") != kFormatVersion) {
    throw ScanError("checkpoint: unsupported format version " + version);
  }
  cp.scan_id = expect_field(in, "scan-id");
  cp.config_hash = expect_field(in, "config-hash");
  cp.chunks_done = to_u64(expect_field(in, "chunks-done"), "chunks-done");
  cp.last_completed = to_u64(expect_field(in, "last-completed"), "last-completed");
  cp.ft_max = to_int(expect_field(in, "ft-max"), "ft-max");
  cp.sft_max = to_int(expect_field(in, "sft-max"), "sft-max");
  const std::string seen = expect_field(in, "seen-ft");
  if (seen != "-") {
    std::istringstream list(seen);
    std::string item;
    while (std::getline(list, item, ',')) cp.seen_ft.push_back(to_int(item, "seen-ft"));
  }
  const std::uint64_t count = to_u64(expect_field(in, "records"), "records");
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw ScanError("checkpoint truncated inside records");
    std::istringstream row(line);
    std::string kind, n, bits, value;
    if (!std::getline(row, kind, '\t') || !std::getline(row, n, '\t') || !std::getline(row, bits, '\t') ||
        !std::getline(row, value)) {
      throw ScanError("checkpoint: malformed record line '" + line + "'");
    }
    try {
      cp.records.push_back({Nat::from_decimal(n), to_u64(bits, "bits"), to_int(value, "value"),
                            parse_record_kind(kind)});
    } catch (const std::invalid_argument& e) {
      throw ScanError(std::string("checkpoint: ") + e.what());
    }
  }
  std::string tail;
  if (!std::getline(in, tail) || tail != "end") throw ScanError("checkpoint missing end marker");
  return cp;
}

void write_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& cp) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ScanError("cannot write checkpoint " + tmp.string());
    out << cp.serialize();
    out.flush();
    if (!out) throw ScanError("failed writing checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ScanError("cannot replace checkpoint " + path.string() + ": " + ec.message());
}

std::optional<ScanCheckpoint> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return ScanCheckpoint::parse(buf.str());
}

}  // namespace jumpfall
