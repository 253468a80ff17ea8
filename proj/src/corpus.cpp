#include "phonfreq/corpus.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "phonfreq/errors.hpp"

namespace phonfreq {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string> split_segments(std::string_view word) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < word.size()) {
    while (i < word.size() && word[i] == ' ') ++i;
    std::size_t j = i;
    while (j < word.size() && word[j] != ' ') ++j;
    if (j > i) out.emplace_back(word.substr(i, j - i));
    i = j;
  }
  return out;
}

// Calls fn(line_number, fields) for every data row.
template <class Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    const bool header = first_row && fields.front() == "language";
    first_row = false;
    if (header) continue;
    fn(line_no, fields);
  }
}

}  // namespace

std::int64_t FrequencyTable::n_tokens() const {
  std::int64_t total = 0;
  for (const auto& e : entries) total += e.count;
  return total;
}

std::vector<std::int64_t> FrequencyTable::counts() const {
  std::vector<std::int64_t> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.count);
  return out;
}

std::vector<Wordlist> parse_wordlist(std::istream& in) {
  std::vector<Wordlist> lists;
  std::unordered_map<std::string, std::size_t> index;
  for_each_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
    if (fields.size() != 2)
      throw ParseError(line_no, "expected 2 columns (language, word), found " +
                                    std::to_string(fields.size()));
    if (fields[0].empty()) throw ParseError(line_no, "empty language identifier");
    auto segments = split_segments(fields[1]);
    if (segments.empty()) throw ParseError(line_no, "word has no segments");
    const std::string language(fields[0]);
    auto [it, inserted] = index.try_emplace(language, lists.size());
    if (inserted) lists.push_back(Wordlist{language, {}});
    lists[it->second].words.push_back(std::move(segments));
  });
  return lists;
}

FrequencyTable count_segments(const Wordlist& wordlist) {
  if (wordlist.words.empty()) throw DomainError("count_segments: empty wordlist");
  FrequencyTable table{wordlist.language_id, {}};
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& word : wordlist.words) {
    for (const auto& segment : word) {
      auto [it, inserted] = index.try_emplace(segment, table.entries.size());
      if (inserted) table.entries.push_back({segment, 0});
      ++table.entries[it->second].count;
    }
  }
  return table;
}

std::vector<Wordlist> filter_min_words(const std::vector<Wordlist>& lists, std::size_t threshold) {
  if (threshold == 0) throw DomainError("filter_min_words: threshold must be >= 1");
  std::vector<Wordlist> out;
  for (const auto& list : lists)
    if (list.words.size() >= threshold) out.push_back(list);
  return out;
}

std::vector<FrequencyTable> parse_frequency_table(std::istream& in) {
  std::vector<FrequencyTable> tables;
  std::unordered_map<std::string, std::size_t> index;
  std::set<std::pair<std::string, std::string>> seen;
  for_each_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 columns (language, segment, count), found " +
                                    std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty())
      throw ParseError(line_no, "empty language or segment");
    std::int64_t count = 0;
    const auto* first = fields[2].data();
    const auto* last = first + fields[2].size();
    const auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc{} || ptr != last)
      throw ParseError(line_no, "count is not an integer: '" + std::string(fields[2]) + "'");
    if (count <= 0) throw ParseError(line_no, "count must be positive");

    std::string language(fields[0]);
    std::string segment(fields[1]);
    if (!seen.emplace(language, segment).second)
      throw ParseError(line_no, "duplicate segment '" + segment + "' for language '" + language + "'");
    auto [it, inserted] = index.try_emplace(language, tables.size());
    if (inserted) tables.push_back(FrequencyTable{language, {}});
    tables[it->second].entries.push_back({std::move(segment), count});
  });
  return tables;
}

void write_frequency_table(std::ostream& out, const std::vector<FrequencyTable>& tables) {
  out << "language\tsegment\tcount\n";
  for (const auto& table : tables)
    for (const auto& e : table.entries) out << table.language_id << '\t' << e.segment << '\t' << e.count << '\n';
}

}  // namespace phonfreq
