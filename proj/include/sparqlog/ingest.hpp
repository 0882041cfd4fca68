#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace sparqlog {

/// One query as read from a log, stamped with its log-order position.
struct LogRecord {
  std::uint64_t index = 0;  // 0-based position in log order
  std::string raw;          // decoded query text
  std::string source;       // file name
  std::uint64_t line = 0;   // 1-based line (or file ordinal for rq-dir)
};

enum class LogFormat { Lines, RqDir, Tsv };

std::optional<LogFormat> log_format_from_name(const std::string& name);

/// Totals for the Total/Valid/Unique accounting.
struct CorpusCounts {
  std::uint64_t total = 0;
  std::uint64_t valid = 0;
  std::uint64_t unique = 0;
};

/// Percent-decoding with '+' treated as space; malformed escapes pass through.
std::string percent_decode(std::string_view s);

/// Replace invalid UTF-8 byte sequences with U+FFFD.
std::string utf8_sanitize(std::string_view s);

/// The whitespace-insensitive duplicate key: runs of whitespace outside quoted
/// literals and IRIs collapse to one space between identifier-ish characters
/// and vanish elsewhere; leading/trailing whitespace is trimmed.
std::string dedup_key(std::string_view raw);

enum class DedupMode { Exact, Whitespace };

/// Bounded-memory duplicate detection over 128-bit fingerprints of the key.
class Deduplicator {
 public:
  explicit Deduplicator(DedupMode mode = DedupMode::Whitespace) : mode_(mode) {}

  /// True iff this text has not been seen before.
  bool insert(std::string_view raw);

  std::size_t size() const { return seen_.size(); }

 private:
  struct Fingerprint {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    bool operator==(const Fingerprint&) const = default;
  };
  struct FingerprintHash {
    std::size_t operator()(const Fingerprint& f) const {
      return static_cast<std::size_t>(f.hi ^ (f.lo * 0x9E3779B97F4A7C15ull));
    }
  };

  DedupMode mode_;
  std::unordered_set<Fingerprint, FingerprintHash> seen_;
};

/// Streams LogRecords out of a file or directory in log order.
class LogReader {
 public:
  LogReader(std::string path, LogFormat format);

  /// Next record, or nullopt at end of stream. Bad lines are skipped; IO
  /// failures throw std::runtime_error.
  std::optional<LogRecord> next();

 private:
  std::optional<LogRecord> next_lines();
  std::optional<LogRecord> next_rq_dir();
  std::optional<LogRecord> next_tsv();

  std::string path_;
  LogFormat format_;
  std::ifstream stream_;
  std::vector<std::string> files_;  // rq-dir
  std::size_t file_pos_ = 0;
  std::uint64_t line_ = 0;
  std::uint64_t index_ = 0;
  bool opened_ = false;
};

}  // namespace sparqlog
