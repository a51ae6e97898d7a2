#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "construction.hpp"

namespace hamshift {

class LevelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes the JSON level file:
///   {"i", "ell", "n", "k", "h", "faithful", "words", "schedule", "blocks"}
/// Streams directly, so level-2 files (hundreds of MB) never sit in memory
/// as a JSON tree.
inline void write_level(std::ostream& out, const Level& level) {
  out << "{\"i\":" << level.index << ",\"ell\":" << level.word_length << ",\"n\":" << level.size();
  out << ",\"k\":";
  if (level.block_count) {
    out << *level.block_count;
  } else {
    out << "null";
  }
  out << ",\"h\":";
  if (level.sequence) {
    out << '[';
    for (std::size_t p = 0; p < level.sequence->size(); ++p) out << (p ? "," : "") << (*level.sequence)[p];
    out << ']';
  } else {
    out << "null";
  }
  out << ",\"faithful\":" << (level.faithful ? "true" : "false");
  out << ",\n\"words\":[";
  for (std::size_t j = 0; j < level.size(); ++j) out << (j ? ",\n\"" : "\n\"") << level.words[j].str() << '"';
  out << "],\n\"schedule\":[";
  for (std::size_t j = 0; j < level.schedule.size(); ++j) {
    out << (j ? "," : "") << '[' << level.schedule[j].position << ',' << (level.schedule[j].symbol ? 1 : 0) << ']';
  }
  out << "],\n\"blocks\":[";
  level.blocks.for_each([&](std::size_t j, std::span<const BlockRef> blocks) {
    out << (j ? ",\n[" : "\n[");
    for (std::size_t b = 0; b < blocks.size(); ++b) out << (b ? ",[" : "[") << blocks[b].start << ',' << blocks[b].index << ']';
    out << ']';
  });
  out << "]}\n";
}

inline void write_level_file(const std::string& path, const Level& level) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  write_level(out, level);
  out.flush();
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

namespace detail {

class LevelSax : public nlohmann::json_sax<nlohmann::json> {
 public:
  explicit LevelSax(Level& level) : level_(level) {}

  bool null() override {
    if (depth_ == 1 && (key_ == "k" || key_ == "h")) return true;
    return fail("unexpected null");
  }
  bool boolean(bool v) override {
    if (depth_ == 1 && key_ == "faithful") {
      level_.faithful = v;
      seen_faithful_ = true;
      return true;
    }
    return fail("unexpected boolean");
  }
  bool number_integer(number_integer_t v) override {
    if (v < 0) return fail("negative number");
    return number(static_cast<std::uint64_t>(v));
  }
  bool number_unsigned(number_unsigned_t v) override { return number(v); }
  bool number_float(number_float_t, const string_t&) override { return fail("unexpected float"); }
  bool string(string_t& s) override {
    if (key_ == "words" && depth_ == 2) {
      try {
        level_.words.push_back(BinaryWord::parse(s));
      } catch (const std::invalid_argument& e) {
        return fail(e.what());
      }
      return true;
    }
    return fail("unexpected string");
  }
  bool binary(binary_t&) override { return fail("unexpected binary"); }
  bool start_object(std::size_t) override {
    if (depth_ != 0) return fail("unexpected object");
    ++depth_;
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ == 0) return fail("top level must be an object");
    ++depth_;
    tuple_.clear();
    return true;
  }
  bool end_array() override {
    if (key_ == "schedule" && depth_ == 3) {
      if (tuple_.size() != 2 || tuple_[1] > 1) return fail("schedule step must be [pos, 0|1]");
      level_.schedule.push_back(Flip{static_cast<std::size_t>(tuple_[0]), tuple_[1] == 1});
    } else if (key_ == "blocks" && depth_ == 4) {
      if (tuple_.size() != 2) return fail("block must be [start, index]");
      current_.push_back(BlockRef{static_cast<std::uint32_t>(tuple_[0]), static_cast<std::uint32_t>(tuple_[1])});
    } else if (key_ == "blocks" && depth_ == 3) {
      level_.blocks.push(current_);
      current_.clear();
    }
    tuple_.clear();
    --depth_;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& e) override {
    error_ = "JSON syntax error at byte " + std::to_string(position) + ": " + e.what();
    return false;
  }

  [[nodiscard]] const std::string& error() const noexcept { return error_; }
  std::optional<std::uint64_t> i, ell, n, k;
  std::vector<std::uint32_t> h;
  bool seen_h = false;
  bool seen_faithful_ = false;

 private:
  bool number(std::uint64_t v) {
    if (depth_ == 1) {
      if (key_ == "i") i = v;
      else if (key_ == "ell") ell = v;
      else if (key_ == "n") n = v;
      else if (key_ == "k") k = v;
      else return fail("unexpected number for key " + key_);
      return true;
    }
    if (key_ == "h" && depth_ == 2) {
      seen_h = true;
      h.push_back(static_cast<std::uint32_t>(v));
      return true;
    }
    if ((key_ == "schedule" && depth_ == 3) || (key_ == "blocks" && depth_ == 4)) {
      tuple_.push_back(v);
      return true;
    }
    return fail("unexpected number");
  }
  bool fail(std::string message) {
    error_ = std::move(message);
    return false;
  }

  Level& level_;
  std::string key_;
  int depth_ = 0;
  std::vector<std::uint64_t> tuple_;
  std::vector<BlockRef> current_;
  std::string error_;
};

}  // namespace detail

/// Reads a level file. Checks the format and the declared sizes; the
/// construction properties are left to the verification checks.
inline Level read_level(std::istream& in) {
  Level level;
  detail::LevelSax sax(level);
  const bool ok = nlohmann::json::sax_parse(in, &sax);
  if (!ok) throw LevelFormatError("level file: " + sax.error());
  if (!sax.i || !sax.ell || !sax.n) throw LevelFormatError("level file: missing i, ell or n");
  if (!sax.seen_faithful_) throw LevelFormatError("level file: missing faithful");
  level.index = static_cast<std::size_t>(*sax.i);
  level.word_length = static_cast<std::size_t>(*sax.ell);
  if (sax.k) level.block_count = static_cast<std::size_t>(*sax.k);
  if (sax.seen_h || sax.k) level.sequence = std::move(sax.h);
  if (level.size() != *sax.n) throw LevelFormatError("level file: n does not match the word count");
  for (std::size_t j = 0; j < level.size(); ++j) {
    if (level.words[j].size() != level.word_length)
      throw LevelFormatError("level file: word " + std::to_string(j) + " does not have length ell");
  }
  if (level.schedule.size() + 1 != level.size()) throw LevelFormatError("level file: schedule length is not n-1");
  if (level.index > 0) {
    if (!level.block_count || !level.sequence) throw LevelFormatError("level file: missing k or h");
    if (level.sequence->size() != *level.block_count) throw LevelFormatError("level file: |h| != k");
    if (level.blocks.size() != level.size()) throw LevelFormatError("level file: blocks must list every word");
  } else if (!level.blocks.empty()) {
    throw LevelFormatError("level file: level 0 has no decomposition");
  }
  return level;
}

inline Level read_level_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_level(in);
}

}  // namespace hamshift
