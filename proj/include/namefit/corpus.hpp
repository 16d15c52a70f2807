#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace namefit {

enum class Gender { male, female, unknown };
enum class Region { palestine, western_diaspora, eastern_diaspora, other, unknown };

// The eight base origin categories, plus the derived Semitic label produced
// by merging SemiticHebrew and SemiticGreek.
enum class Origin {
  Biblical,
  Greek,
  Latin,
  Persian,
  Egyptian,
  Arabian,
  SemiticHebrew,
  SemiticGreek,
  Semitic,
};

inline constexpr int kBaseOriginCount = 8;

std::string_view to_string(Gender g);
std::string_view to_string(Region r);
std::string_view to_string(Origin o);
std::optional<Gender> parse_gender(std::string_view s);
std::optional<Region> parse_region(std::string_view s);
// Only the eight base categories are accepted from input data.
std::optional<Origin> parse_origin(std::string_view s);
const std::vector<Origin>& base_origins();
// Category list after an optional Semitic merge, in display order.
std::vector<Origin> origin_categories(bool merge_semitic);

// One name attached to one person. Years are signed, negative = BCE, and
// there is no year zero.
struct OccurrenceRecord {
  std::string person_id;
  std::string name;
  Gender gender = Gender::unknown;
  Region region = Region::unknown;
  std::optional<int> date_start;
  std::optional<int> date_end;
  bool fictitious = false;
  bool nickname = false;
  std::optional<std::string> exclude_category;
  std::optional<Origin> origin;
  std::string source_tag;
};

struct RowRejection {
  std::size_t row = 0;  // 1-based data row (header is row 0)
  std::string reason;
};

struct LoadResult {
  std::vector<OccurrenceRecord> records;
  std::vector<RowRejection> rejections;
};

inline const std::vector<std::string>& corpus_columns() {
  static const std::vector<std::string> cols = {
      "person_id", "name",    "gender",           "region", "date_start", "date_end",
      "fictitious", "nickname", "exclude_category", "origin", "source_tag"};
  return cols;
}

// Throws DataError if the file cannot be opened or required columns are
// missing. Row-level problems become rejections, never silent drops.
LoadResult load_corpus(const std::filesystem::path& path);
LoadResult load_corpus(std::istream& in);

enum class DatePolicy { inclusive, exclusive };

struct DateWindow {
  int start = -4;
  int end = 73;
  DatePolicy policy = DatePolicy::exclusive;
};

struct RecordFilter {
  std::optional<DateWindow> window;
  std::optional<Gender> gender;
  std::optional<Region> region;
  bool include_fictitious = false;
  bool include_nicknames = true;
  std::set<std::string> exclusions;
};

std::vector<OccurrenceRecord> filter_records(const std::vector<OccurrenceRecord>& records,
                                             const RecordFilter& filter);

// Name -> occurrence count. Counts are always >= 1; a name with no
// occurrences is simply absent.
class FrequencyDistribution {
 public:
  FrequencyDistribution() = default;
  explicit FrequencyDistribution(std::map<std::string, std::int64_t> counts);

  const std::map<std::string, std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const { return total_; }
  std::size_t distinct() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  // 0 when the name is absent.
  std::int64_t count(const std::string& name) const;

  // Sorted by count descending, then name ascending.
  std::vector<std::pair<std::string, std::int64_t>> ranked() const;

  friend bool operator==(const FrequencyDistribution&, const FrequencyDistribution&) = default;

 private:
  std::map<std::string, std::int64_t> counts_;
  std::int64_t total_ = 0;
};

FrequencyDistribution build_frequency_distribution(const std::vector<OccurrenceRecord>& records);

struct OriginDistribution {
  std::map<Origin, std::int64_t> counts;  // every category present, zeros kept
  std::int64_t total = 0;
  std::size_t skipped_without_origin = 0;
  bool merged_semitic = false;

  std::int64_t count(Origin o) const;
};

// Counts one occurrence per distinct (person_id, name) pair, like the
// frequency distribution. Throws DataError when no record carries an origin.
OriginDistribution build_origin_distribution(const std::vector<OccurrenceRecord>& records,
                                             bool merge_semitic);

struct SubtractionResult {
  FrequencyDistribution distribution;
  bool exact = true;
  std::vector<std::string> diagnostics;  // one entry per over-subtracted name
};

// Removes the test sample from the reference so that the two are
// independent. Over-subtraction clamps at zero and marks the result inexact.
SubtractionResult subtract_sample(const FrequencyDistribution& reference,
                                  const FrequencyDistribution& test);

// Per-name sum; inverse of subtract_sample when it was exact.
FrequencyDistribution add_samples(const FrequencyDistribution& a, const FrequencyDistribution& b);

// Per-category counterpart of subtract_sample, used by origin tests.
OriginDistribution subtract_origins(const OriginDistribution& reference,
                                    const OriginDistribution& test, bool* exact = nullptr);

// CSV "name,count" with a header, ranked order.
void write_distribution_csv(std::ostream& out, const FrequencyDistribution& dist);
FrequencyDistribution read_distribution_csv(std::istream& in);

}  // namespace namefit
