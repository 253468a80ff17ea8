#pragma once

// Wordlist and frequency-table ingestion.
//
// Wordlist TSV:   language <TAB> word        (word = space-separated segments)
// Frequency TSV:  language <TAB> segment <TAB> count
//
// Blank lines and lines starting with '#' are skipped. A first row whose
// first field is "language" is read as a header.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace phonfreq {

inline constexpr std::size_t kDefaultMinWords = 250;

struct Wordlist {
  std::string language_id;
  std::vector<std::vector<std::string>> words;
};

struct FrequencyEntry {
  std::string segment;
  std::int64_t count;

  friend bool operator==(const FrequencyEntry&, const FrequencyEntry&) = default;
};

struct FrequencyTable {
  std::string language_id;
  std::vector<FrequencyEntry> entries;

  std::size_t n_types() const { return entries.size(); }
  std::int64_t n_tokens() const;
  std::vector<std::int64_t> counts() const;

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;
};

/// One Wordlist per language in order of first appearance. Throws ParseError
/// on a row without exactly two columns or with no segments.
std::vector<Wordlist> parse_wordlist(std::istream& in);

/// Token counts in order of first appearance; every word counts once.
FrequencyTable count_segments(const Wordlist& wordlist);

/// Lists with at least `threshold` words, order preserved.
std::vector<Wordlist> filter_min_words(const std::vector<Wordlist>& lists,
                                       std::size_t threshold = kDefaultMinWords);

/// Throws ParseError on a malformed row, a non-positive or non-integer count,
/// or a repeated (language, segment) pair.
std::vector<FrequencyTable> parse_frequency_table(std::istream& in);

/// Writes the frequency TSV with a header row; readable by parse_frequency_table.
void write_frequency_table(std::ostream& out, const std::vector<FrequencyTable>& tables);

}  // namespace phonfreq
