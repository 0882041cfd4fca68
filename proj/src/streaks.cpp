#include "sparqlog/streaks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace sparqlog {

namespace {

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool keyword_at(std::string_view s, std::size_t pos, std::string_view kw) {
  if (pos + kw.size() > s.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    char c = s[pos + i];
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (c != kw[i]) return false;
  }
  if (pos > 0 && word_char(s[pos - 1])) return false;
  if (pos + kw.size() < s.size() && word_char(s[pos + kw.size()])) return false;
  return true;
}

}  // namespace

std::string strip_prologue(std::string_view raw) {
  std::size_t i = 0;
  while (i < raw.size()) {
    char c = raw[i];
    if (c == '<') {
      // treat as an IRI when a '>' closes it before any whitespace
      std::size_t j = i + 1;
      while (j < raw.size() && raw[j] != '>' && !std::isspace(static_cast<unsigned char>(raw[j]))) {
        ++j;
      }
      if (j < raw.size() && raw[j] == '>') {
        i = j + 1;
        continue;
      }
      ++i;
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      bool long_form = i + 2 < raw.size() && raw[i + 1] == quote && raw[i + 2] == quote;
      std::size_t j = i + (long_form ? 3 : 1);
      while (j < raw.size()) {
        if (raw[j] == '\\') {
          j += 2;
          continue;
        }
        if (long_form) {
          if (raw[j] == quote && j + 2 < raw.size() && raw[j + 1] == quote && raw[j + 2] == quote) {
            j += 3;
            break;
          }
          ++j;
        } else {
          if (raw[j] == quote || raw[j] == '\n') {
            ++j;
            break;
          }
          ++j;
        }
      }
      i = j;
      continue;
    }
    if (keyword_at(raw, i, "SELECT") || keyword_at(raw, i, "ASK") ||
        keyword_at(raw, i, "CONSTRUCT") || keyword_at(raw, i, "DESCRIBE")) {
      return std::string(raw.substr(i));
    }
    ++i;
  }
  return std::string(raw);
}

std::size_t bounded_levenshtein(std::string_view a, std::string_view b, std::size_t limit) {
  if (a.size() > b.size()) std::swap(a, b);
  if (b.size() - a.size() > limit) return limit + 1;

  const std::size_t infinity = limit + 1;
  const std::size_t n = b.size();
  auto bump = [&](std::size_t x) { return x >= infinity ? infinity : x + 1; };

  // cells outside the |i-j| <= limit band can never reach back under the
  // limit, so they stay at infinity
  std::vector<std::size_t> prev(n + 1, infinity), cur(n + 1, infinity);
  for (std::size_t j = 0; j <= std::min(n, limit); ++j) prev[j] = j;

  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::fill(cur.begin(), cur.end(), infinity);
    std::size_t lo = i > limit ? i - limit : 0;
    std::size_t hi = std::min(n, i + limit);
    std::size_t row_min = infinity;
    if (lo == 0) {
      cur[0] = i <= limit ? i : infinity;
      row_min = cur[0];
      lo = 1;
    }
    for (std::size_t j = lo; j <= hi; ++j) {
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t best = prev[j - 1] >= infinity ? infinity : prev[j - 1] + cost;
      best = std::min({best, bump(prev[j]), bump(cur[j - 1])});
      if (best > limit) best = infinity;
      cur[j] = best;
      row_min = std::min(row_min, best);
    }
    if (row_min > limit) return infinity;
    std::swap(prev, cur);
  }
  return std::min(prev[n], infinity);
}

double normalized_levenshtein(std::string_view a, std::string_view b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  std::size_t distance = bounded_levenshtein(a, b, longest);
  return static_cast<double>(distance) / static_cast<double>(longest);
}

bool similar(std::string_view a, std::string_view b, double threshold) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return true;
  std::size_t limit = static_cast<std::size_t>(std::floor(threshold * static_cast<double>(longest)));
  return bounded_levenshtein(a, b, limit) <= limit;
}

void StreakDetector::evict_before(std::uint64_t index) {
  while (!entries_.empty() && entries_.front().index < index) {
    Entry& old = entries_.front();
    for (std::vector<std::uint64_t>& chain : old.chains) {
      done_.push_back(Streak{std::move(chain)});
    }
    entries_.pop_front();
  }
}

void StreakDetector::push(std::uint64_t index, std::string_view raw_text) {
  // entries too old to match this or any later query are final
  evict_before(index >= window_ ? index - window_ : 0);

  Entry fresh;
  fresh.index = index;
  fresh.stripped = strip_prologue(raw_text);

  for (Entry& e : entries_) {
    if (e.extended) continue;
    if (!similar(e.stripped, fresh.stripped, threshold_)) continue;
    // this is the first similar successor of e: the unique match partner
    e.extended = true;
    for (std::vector<std::uint64_t>& chain : e.chains) {
      chain.push_back(index);
      fresh.chains.push_back(std::move(chain));
    }
    e.chains.clear();
  }
  if (fresh.chains.empty()) {
    fresh.chains.push_back({index});  // every query seeds a streak
  }
  entries_.push_back(std::move(fresh));
}

std::vector<Streak> StreakDetector::finish() {
  evict_before(std::numeric_limits<std::uint64_t>::max());
  std::vector<Streak> out = std::move(done_);
  done_.clear();
  std::sort(out.begin(), out.end(), [](const Streak& a, const Streak& b) {
    return a.member_indices < b.member_indices;
  });
  return out;
}

std::vector<Streak> detect_streaks(const std::vector<std::pair<std::uint64_t, std::string>>& log,
                                   std::uint64_t window, double threshold) {
  StreakDetector detector(window, threshold);
  for (const auto& [index, text] : log) detector.push(index, text);
  return detector.finish();
}

const char* StreakHistogram::bucket_label(std::size_t i) {
  static const char* labels[] = {"1-10",  "11-20", "21-30", "31-40",  "41-50", "51-60",
                                 "61-70", "71-80", "81-90", "91-100", ">100"};
  return i < 11 ? labels[i] : "?";
}

StreakHistogram streak_histogram(const std::vector<Streak>& streaks) {
  StreakHistogram h;
  for (const Streak& s : streaks) {
    std::size_t len = s.length();
    std::size_t bucket = len == 0 ? 0 : std::min<std::size_t>((len - 1) / 10, 10);
    ++h.buckets[bucket];
  }
  return h;
}

}  // namespace sparqlog
