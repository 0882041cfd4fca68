#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

namespace sparqlog {

/// A maximal sequence of matched queries; indices are log positions.
struct Streak {
  std::vector<std::uint64_t> member_indices;

  std::uint64_t start() const { return member_indices.front(); }
  std::size_t length() const { return member_indices.size(); }
};

/// Suffix of the query starting at the first SELECT/ASK/CONSTRUCT/DESCRIBE
/// keyword outside IRIs and string literals; the whole string if none occurs.
std::string strip_prologue(std::string_view raw);

/// Levenshtein distance divided by the length of the longer string.
double normalized_levenshtein(std::string_view a, std::string_view b);

/// Banded Levenshtein: the exact distance when it is <= limit, else limit+1.
std::size_t bounded_levenshtein(std::string_view a, std::string_view b, std::size_t limit);

/// distance(a, b) <= threshold * max(|a|, |b|)
bool similar(std::string_view a, std::string_view b, double threshold);

/// Streaming streak detection over a log in order. Only the last `window`
/// entries and the active streak tails stay in memory.
class StreakDetector {
 public:
  explicit StreakDetector(std::uint64_t window = 30, double threshold = 0.25)
      : window_(window), threshold_(threshold) {}

  /// Feed the next query in log order; indices must strictly increase.
  void push(std::uint64_t index, std::string_view raw_text);

  /// Flush remaining open streaks and return all maximal streaks found.
  std::vector<Streak> finish();

 private:
  struct Entry {
    std::uint64_t index;
    std::string stripped;
    bool extended = false;
    std::vector<std::vector<std::uint64_t>> chains;  // member index lists
  };

  void evict_before(std::uint64_t index);

  std::uint64_t window_;
  double threshold_;
  std::deque<Entry> entries_;
  std::vector<Streak> done_;
};

/// One-shot detection; the pair holds (log index, raw query text).
std::vector<Streak> detect_streaks(const std::vector<std::pair<std::uint64_t, std::string>>& log,
                                   std::uint64_t window = 30, double threshold = 0.25);

/// Length buckets 1-10, 11-20, ..., 91-100, >100.
struct StreakHistogram {
  std::array<std::uint64_t, 11> buckets{};

  static const char* bucket_label(std::size_t i);
};

StreakHistogram streak_histogram(const std::vector<Streak>& streaks);

}  // namespace sparqlog
