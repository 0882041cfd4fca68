#include "sparqlog/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace sparqlog {

namespace fs = std::filesystem;

std::optional<LogFormat> log_format_from_name(const std::string& name) {
  if (name == "lines") return LogFormat::Lines;
  if (name == "rq-dir") return LogFormat::RqDir;
  if (name == "tsv") return LogFormat::Tsv;
  return std::nullopt;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool idchar(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '?' || c == '$' || c == ':' || c == '.' || c == '-' || u >= 0x80;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

}  // namespace

std::string percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '+') {
      out.push_back(' ');
    } else if (c == '%' && i + 2 < s.size() && hex_value(s[i + 1]) >= 0 && hex_value(s[i + 2]) >= 0) {
      out.push_back(static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2])));
      i += 2;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string utf8_sanitize(std::string_view s) {
  static const char kReplacement[] = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    std::size_t len;
    if (b < 0x80) {
      len = 1;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
    } else {
      out.append(kReplacement);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.append(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.append(s.substr(i, len));
      i += len;
    } else {
      out.append(kReplacement);
      ++i;
    }
  }
  return out;
}

std::string dedup_key(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());

  enum class State { Plain, Iri, Short, Long } state = State::Plain;
  char quote = '"';

  std::size_t i = 0;
  auto flush_ws = [&](std::size_t next) {
    // 'next' is the first non-space position (or npos). Emit a single space
    // only between two identifier-ish characters.
    if (out.empty() || next >= raw.size()) return;
    if (idchar(out.back()) && idchar(raw[next])) out.push_back(' ');
  };

  while (i < raw.size()) {
    char c = raw[i];
    switch (state) {
      case State::Plain: {
        if (is_space(c)) {
          std::size_t j = i;
          while (j < raw.size() && is_space(raw[j])) ++j;
          flush_ws(j);
          i = j;
          continue;
        }
        out.push_back(c);
        if (c == '<') {
          state = State::Iri;
        } else if (c == '"' || c == '\'') {
          quote = c;
          if (i + 2 < raw.size() && raw[i + 1] == quote && raw[i + 2] == quote) {
            out.push_back(quote);
            out.push_back(quote);
            i += 2;
            state = State::Long;
          } else {
            state = State::Short;
          }
        }
        ++i;
        break;
      }
      case State::Iri:
        out.push_back(c);
        if (c == '>' || c == '\n') state = State::Plain;
        ++i;
        break;
      case State::Short:
        out.push_back(c);
        if (c == '\\' && i + 1 < raw.size()) {
          out.push_back(raw[i + 1]);
          i += 2;
          break;
        }
        if (c == quote || c == '\n') state = State::Plain;
        ++i;
        break;
      case State::Long:
        out.push_back(c);
        if (c == '\\' && i + 1 < raw.size()) {
          out.push_back(raw[i + 1]);
          i += 2;
          break;
        }
        if (c == quote && i + 2 < raw.size() && raw[i + 1] == quote && raw[i + 2] == quote) {
          out.push_back(quote);
          out.push_back(quote);
          i += 3;
          state = State::Plain;
          break;
        }
        ++i;
        break;
    }
  }
  return out;
}

bool Deduplicator::insert(std::string_view raw) {
  std::string key;
  if (mode_ == DedupMode::Whitespace) {
    key = dedup_key(raw);
  } else {
    key.assign(raw.data(), raw.size());
  }
  // FNV-1a over two lanes with distinct offsets gives a 128-bit fingerprint.
  Fingerprint f;
  std::uint64_t a = 0xcbf29ce484222325ull;
  std::uint64_t b = 0x84222325cbf29ce4ull;
  for (unsigned char c : key) {
    a = (a ^ c) * 0x100000001b3ull;
    b = (b ^ (c + 0x9Eu)) * 0x100000001b3ull;
  }
  f.hi = a;
  f.lo = b;
  return seen_.insert(f).second;
}

LogReader::LogReader(std::string path, LogFormat format)
    : path_(std::move(path)), format_(format) {
  if (format_ == LogFormat::RqDir) {
    if (!fs::is_directory(path_)) {
      throw std::runtime_error("not a directory: " + path_);
    }
    for (const fs::directory_entry& entry : fs::directory_iterator(path_)) {
      if (entry.is_regular_file() && entry.path().extension() == ".rq") {
        files_.push_back(entry.path().string());
      }
    }
    std::sort(files_.begin(), files_.end());
  } else {
    stream_.open(path_, std::ios::binary);
    if (!stream_) throw std::runtime_error("cannot open " + path_);
  }
}

std::optional<LogRecord> LogReader::next() {
  switch (format_) {
    case LogFormat::Lines: return next_lines();
    case LogFormat::RqDir: return next_rq_dir();
    case LogFormat::Tsv: return next_tsv();
  }
  return std::nullopt;
}

std::optional<LogRecord> LogReader::next_lines() {
  std::string line;
  while (std::getline(stream_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    LogRecord rec;
    rec.index = index_++;
    rec.raw = utf8_sanitize(percent_decode(line));
    rec.source = path_;
    rec.line = line_;
    return rec;
  }
  return std::nullopt;
}

std::optional<LogRecord> LogReader::next_rq_dir() {
  while (file_pos_ < files_.size()) {
    const std::string& file = files_[file_pos_++];
    std::ifstream in(file, std::ios::binary);
    if (!in) continue;  // a single unreadable file never aborts the stream
    std::ostringstream buf;
    buf << in.rdbuf();
    LogRecord rec;
    rec.index = index_++;
    rec.raw = utf8_sanitize(buf.str());
    rec.source = file;
    rec.line = file_pos_;
    return rec;
  }
  return std::nullopt;
}

std::optional<LogRecord> LogReader::next_tsv() {
  std::string line;
  while (std::getline(stream_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;  // bad line, skip
    std::string_view query(line);
    query.remove_prefix(tab + 1);
    std::size_t tab2 = query.find('\t');
    if (tab2 != std::string_view::npos) query = query.substr(0, tab2);
    if (query.empty()) continue;
    LogRecord rec;
    rec.index = index_++;
    rec.raw = utf8_sanitize(percent_decode(query));
    rec.source = path_;
    rec.line = line_;
    return rec;
  }
  return std::nullopt;
}

}  // namespace sparqlog
