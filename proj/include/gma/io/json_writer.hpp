#pragma once

#include <string>
#include <vector>

#include "gma/types.hpp"

namespace gma::io {

/// Minimal streaming JSON emitter with deterministic output: keys appear in
/// insertion order, doubles are printed with 17 significant digits
/// (round-trip exact), and there is no locale or platform dependence.
/// Non-finite doubles serialize as null. Output is compact except for a
/// newline-free single line; pretty-printing is out of scope.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();

  /// Emits `"key":` inside an object; must be followed by a value.
  JsonWriter& key(const std::string& k);

  JsonWriter& value(double v);
  JsonWriter& value(long v);
  JsonWriter& value(int v) { return value(static_cast<long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(const Vecd& v);  // as a JSON array

  /// key + value in one call.
  template <class T>
  JsonWriter& field(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

  const std::string& str() const { return out_; }

  /// Formats one double exactly as the writer does (17 significant digits).
  static std::string format_double(double v);

 private:
  void comma_if_needed();
  void append_escaped(const std::string& s);

  std::string out_;
  std::vector<bool> first_in_scope_;  // stack: true until a scope's first item
  bool pending_key_ = false;
};

}  // namespace gma::io
