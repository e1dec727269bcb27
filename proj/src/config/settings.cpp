#include "cpgscan/config/settings.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <variant>

namespace cpgscan {

namespace {

using Value = std::variant<std::string, std::vector<std::string>, bool, long long, double>;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, where + ": " + what);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Reader over the value part of one logical line.
class ValueReader {
 public:
  ValueReader(std::string_view text, std::string where) : text_(text), where_(std::move(where)) {}

  Value read() {
    skip_space();
    Value v = value();
    skip_space();
    if (pos_ != text_.size()) bad(where_, "unexpected text after value");
    return v;
  }

 private:
  Value value() {
    if (pos_ == text_.size()) bad(where_, "missing value");
    char c = text_[pos_];
    if (c == '"') return string();
    if (c == '[') return list();
    auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '#' && text_[pos_] != ',' && text_[pos_] != ']' &&
           text_[pos_] != ' ' && text_[pos_] != '\t')
      ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    if (word == "true") return true;
    if (word == "false") return false;
    long long i = 0;
    auto [p, ec] = std::from_chars(word.data(), word.data() + word.size(), i);
    if (ec == std::errc() && p == word.data() + word.size()) return i;
    double d = 0;
    auto [q, ed] = std::from_chars(word.data(), word.data() + word.size(), d);
    if (ed == std::errc() && q == word.data() + word.size()) return d;
    bad(where_, "cannot read value '" + word + "' (strings need double quotes)");
  }

  std::string string() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_++];
      if (c == '\\') {
        if (pos_ == text_.size()) break;
        char e = text_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: bad(where_, std::string("unknown escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    if (pos_ == text_.size()) bad(where_, "unterminated string");
    ++pos_;
    return out;
  }

  std::vector<std::string> list() {
    ++pos_;
    std::vector<std::string> out;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return out;
    }
    while (true) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] != '"') bad(where_, "list items must be double-quoted strings");
      out.push_back(string());
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ']') {
          ++pos_;
          return out;
        }
        continue;
      }
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return out;
      }
      bad(where_, "expected ',' or ']' in list");
    }
  }

  // Whitespace, line breaks and comments.
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        auto nl = text_.find('\n', pos_);
        pos_ = nl == std::string_view::npos ? text_.size() : nl;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::string where_;
};

template <typename T>
const T& expect(const Value& v, const std::string& key, const char* type) {
  if (auto p = std::get_if<T>(&v)) return *p;
  throw Error(ErrorCode::InvalidArgument, "'" + key + "' must be " + type);
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

long long positive(const Value& v, const std::string& key) {
  auto n = expect<long long>(v, key, "an integer");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "'" + key + "' must be at least 1");
  return n;
}

void apply(Settings& s, const std::string& key, const Value& v) {
  if (key == "workers") s.extract.workers = static_cast<unsigned>(positive(v, key));
  else if (key == "exclude") s.extract.exclude = expect<std::vector<std::string>>(v, key, "a list");
  else if (key == "format") {
    const auto& f = expect<std::string>(v, key, "a string");
    if (f == "text") s.format = ReportFormat::Text;
    else if (f == "json") s.format = ReportFormat::Json;
    else throw Error(ErrorCode::InvalidArgument, "'format' must be text or json, not '" + f + "'");
  } else if (key == "store.cache") s.store.cache_enabled = expect<bool>(v, key, "true or false");
  else if (key == "store.cache_entries") s.store.cache_entries = static_cast<std::size_t>(positive(v, key));
  else if (key == "rules.enabled") {
    s.enabled.clear();
    for (const auto& r : expect<std::vector<std::string>>(v, key, "a list")) {
      auto id = library::rule_from_string(r);
      if (std::find(s.enabled.begin(), s.enabled.end(), id) == s.enabled.end()) s.enabled.push_back(id);
    }
    std::sort(s.enabled.begin(), s.enabled.end());
  } else if (key == "rules.allocators") s.rules.allocators = as_set(expect<std::vector<std::string>>(v, key, "a list"));
  else if (key == "rules.deallocators") s.rules.deallocators = as_set(expect<std::vector<std::string>>(v, key, "a list"));
  else if (key == "rules.sources") s.rules.sources = as_set(expect<std::vector<std::string>>(v, key, "a list"));
  else if (key == "rules.sinks") s.rules.sinks = as_set(expect<std::vector<std::string>>(v, key, "a list"));
  else if (key == "rules.sanitizers") s.rules.sanitizers = as_set(expect<std::vector<std::string>>(v, key, "a list"));
  else if (key == "rules.pessimistic_externals") s.rules.pessimistic_externals = expect<bool>(v, key, "true or false");
  else if (key == "ml.url") s.ml_url = expect<std::string>(v, key, "a string");
  else if (key == "ml.timeout_ms") s.ml_timeout = std::chrono::milliseconds(positive(v, key));
  else if (key == "ml.attempts") s.ml_attempts = static_cast<int>(positive(v, key));
  else if (key == "ml.backoff_ms") {
    auto ms = expect<long long>(v, key, "an integer");
    if (ms < 0) throw Error(ErrorCode::InvalidArgument, "'ml.backoff_ms' must not be negative");
    s.ml_backoff = std::chrono::milliseconds(ms);
  }
  else if (key == "ml.batch") s.ml_batch = static_cast<std::size_t>(positive(v, key));
  else if (key == "ml.threshold") {
    double t = std::holds_alternative<long long>(v) ? static_cast<double>(std::get<long long>(v))
                                                     : expect<double>(v, key, "a number");
    if (t < 0 || t > 1) throw Error(ErrorCode::InvalidArgument, "'ml.threshold' must lie in [0, 1]");
    s.ml_threshold = t;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown setting '" + key + "'");
  }
}

bool is_list_key(const std::string& key) {
  return key == "exclude" || key == "rules.enabled" || key == "rules.allocators" || key == "rules.deallocators" ||
         key == "rules.sources" || key == "rules.sinks" || key == "rules.sanitizers";
}

bool is_string_key(const std::string& key) { return key == "format" || key == "ml.url"; }

}  // namespace

void Settings::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path.string());
}

void Settings::load_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string section;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string where = origin + ":" + std::to_string(number);
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t[0] == '[') {
      auto close = t.find(']');
      std::string rest = close == std::string::npos ? "" : trim(t.substr(close + 1));
      if (close == std::string::npos || (!rest.empty() && rest[0] != '#')) bad(where, "malformed section header");
      section = trim(t.substr(1, close - 1));
      if (section != "store" && section != "rules" && section != "ml") bad(where, "unknown section [" + section + "]");
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) bad(where, "expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = t.substr(eq + 1);
    // A list may continue over several lines until its closing bracket.
    if (trim(value).starts_with('[')) {
      auto depth_closed = [](const std::string& v) {
        bool in_string = false;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i] == '\\' && in_string) ++i;
          else if (v[i] == '"') in_string = !in_string;
          else if (!in_string && v[i] == '#') i = std::min(v.find('\n', i), v.size());
          else if (!in_string && v[i] == ']') return true;
        }
        return false;
      };
      while (!depth_closed(value)) {
        std::string more;
        if (!std::getline(in, more)) bad(where, "unterminated list");
        ++number;
        value += "\n" + more;
      }
    }
    std::string full = section.empty() ? key : section + "." + key;
    try {
      apply(*this, full, ValueReader(value, where).read());
    } catch (const Error& e) {
      if (std::string(e.what()).starts_with(origin)) throw;
      bad(where, e.what());
    }
  }
}

void Settings::set(const std::string& key, const std::string& value) {
  Value v;
  if (is_list_key(key)) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    for (std::string item; std::getline(ss, item, ',');)
      if (auto t = trim(item); !t.empty()) items.push_back(t);
    v = items;
  } else if (is_string_key(key)) {
    v = value;
  } else {
    v = ValueReader(value, "--" + key).read();
  }
  apply(*this, key, v);
}

void Settings::validate() const {
  if (extract.workers < 1) throw Error(ErrorCode::InvalidArgument, "worker count must be at least 1");
  rules.validate();
  if (enabled.empty()) throw Error(ErrorCode::InvalidArgument, "no rules selected");
}

}  // namespace cpgscan
