#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace steklov {

// Minimal deterministic JSON writer.  Keys keep insertion order and doubles
// are printed with 17 significant digits, so equal inputs produce
// byte-identical files and every double round-trips exactly.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(const std::string& k) {
    separate();
    append_string(k);
    out_ += ':';
    just_keyed_ = true;
  }

  void value(double v) {
    separate();
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_ += buf;
  }
  void value(int v) { value_integral(static_cast<long long>(v)); }
  void value(long long v) { value_integral(v); }
  void value(bool v) {
    separate();
    out_ += v ? "true" : "false";
  }
  void value(const std::string& v) {
    separate();
    append_string(v);
  }
  void value(const char* v) { value(std::string(v)); }

 private:
  void open(char c) {
    separate();
    out_ += c;
    needs_comma_.push_back(false);
  }
  void close(char c) {
    out_ += c;
    needs_comma_.pop_back();
    if (!needs_comma_.empty()) needs_comma_.back() = true;
  }
  void separate() {
    if (just_keyed_) {
      just_keyed_ = false;
      return;
    }
    if (!needs_comma_.empty()) {
      if (needs_comma_.back()) out_ += ',';
      needs_comma_.back() = true;
    }
  }
  void value_integral(long long v) {
    separate();
    out_ += std::to_string(v);
  }
  void append_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> needs_comma_;
  bool just_keyed_ = false;
};

}  // namespace steklov
