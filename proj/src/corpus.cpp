#include "namefit/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "csv.hpp"
#include "namefit/error.hpp"

namespace namefit {

namespace {

constexpr std::array<std::pair<Gender, std::string_view>, 3> kGenders{{
    {Gender::male, "male"},
    {Gender::female, "female"},
    {Gender::unknown, "unknown"},
}};

constexpr std::array<std::pair<Region, std::string_view>, 5> kRegions{{
    {Region::palestine, "palestine"},
    {Region::western_diaspora, "western_diaspora"},
    {Region::eastern_diaspora, "eastern_diaspora"},
    {Region::other, "other"},
    {Region::unknown, "unknown"},
}};

constexpr std::array<std::pair<Origin, std::string_view>, 9> kOrigins{{
    {Origin::Biblical, "Biblical"},
    {Origin::Greek, "Greek"},
    {Origin::Latin, "Latin"},
    {Origin::Persian, "Persian"},
    {Origin::Egyptian, "Egyptian"},
    {Origin::Arabian, "Arabian"},
    {Origin::SemiticHebrew, "SemiticHebrew"},
    {Origin::SemiticGreek, "SemiticGreek"},
    {Origin::Semitic, "Semitic"},
}};

template <typename Table, typename E>
std::string_view lookup_name(const Table& table, E value) {
  for (const auto& [v, name] : table)
    if (v == value) return name;
  return "?";
}

std::optional<int> parse_year(std::string_view s, std::string& error) {
  s = csv::trim(s);
  if (s.empty()) return std::nullopt;
  int value = 0;
  const auto* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    error = "unparseable year '" + std::string(s) + "'";
    return std::nullopt;
  }
  if (value == 0) {
    error = "year 0 does not exist (use -1 for 1 BCE, 1 for 1 CE)";
    return std::nullopt;
  }
  return value;
}

std::optional<bool> parse_bool(std::string_view s) {
  s = csv::trim(s);
  if (s == "true") return true;
  if (s == "false" || s.empty()) return false;
  return std::nullopt;
}

std::string valid_origin_list() {
  std::string out;
  for (Origin o : base_origins()) {
    if (!out.empty()) out += ", ";
    out += to_string(o);
  }
  return out;
}

}  // namespace

std::string_view to_string(Gender g) { return lookup_name(kGenders, g); }
std::string_view to_string(Region r) { return lookup_name(kRegions, r); }
std::string_view to_string(Origin o) { return lookup_name(kOrigins, o); }

std::optional<Gender> parse_gender(std::string_view s) {
  for (const auto& [v, name] : kGenders)
    if (name == s) return v;
  return std::nullopt;
}

std::optional<Region> parse_region(std::string_view s) {
  for (const auto& [v, name] : kRegions)
    if (name == s) return v;
  return std::nullopt;
}

std::optional<Origin> parse_origin(std::string_view s) {
  for (std::size_t i = 0; i < kBaseOriginCount; ++i)
    if (kOrigins[i].second == s) return kOrigins[i].first;
  return std::nullopt;
}

const std::vector<Origin>& base_origins() {
  static const std::vector<Origin> origins = {
      Origin::Biblical, Origin::Greek,  Origin::Latin,         Origin::Persian,
      Origin::Egyptian, Origin::Arabian, Origin::SemiticHebrew, Origin::SemiticGreek};
  return origins;
}

std::vector<Origin> origin_categories(bool merge_semitic) {
  if (!merge_semitic) return base_origins();
  return {Origin::Biblical, Origin::Greek,   Origin::Latin,  Origin::Persian,
          Origin::Egyptian, Origin::Arabian, Origin::Semitic};
}

// ---------------------------------------------------------------------------
// Loading

LoadResult load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file '" + path.string() + "'");
  return load_corpus(in);
}

LoadResult load_corpus(std::istream& in) {
  auto header_line = csv::next_line(in);
  if (!header_line) throw DataError("corpus file is empty (header required)");
  std::string header = *header_line;
  if (header.rfind("\xEF\xBB\xBF", 0) == 0) header.erase(0, 3);

  const auto header_fields = csv::split_line(header);
  std::map<std::string, std::size_t> column_index;
  for (std::size_t i = 0; i < header_fields.size(); ++i)
    column_index[std::string(csv::trim(header_fields[i]))] = i;

  std::vector<std::string> missing;
  std::array<std::size_t, 11> idx{};
  const auto& cols = corpus_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto it = column_index.find(cols[c]);
    if (it == column_index.end()) missing.push_back(cols[c]);
    else idx[c] = it->second;
  }
  if (!missing.empty()) {
    std::string msg = "corpus header is missing required column(s):";
    for (const auto& m : missing) msg += " " + m;
    throw DataError(msg);
  }

  LoadResult result;
  std::size_t row = 0;
  while (auto line = csv::next_line(in)) {
    ++row;
    if (csv::trim(*line).empty()) continue;
    const auto fields = csv::split_line(*line);
    auto reject = [&](std::string reason) {
      result.rejections.push_back({row, std::move(reason)});
    };
    if (fields.size() != header_fields.size()) {
      reject("expected " + std::to_string(header_fields.size()) + " fields, found " +
             std::to_string(fields.size()));
      continue;
    }
    auto field = [&](std::size_t c) { return csv::trim(fields[idx[c]]); };

    OccurrenceRecord rec;
    rec.person_id = std::string(field(0));
    rec.name = std::string(field(1));
    if (rec.person_id.empty()) { reject("empty person_id"); continue; }
    if (rec.name.empty()) { reject("empty name"); continue; }

    if (field(2).empty()) {
      rec.gender = Gender::unknown;
    } else if (auto g = parse_gender(field(2))) {
      rec.gender = *g;
    } else {
      reject("unknown gender '" + std::string(field(2)) + "'");
      continue;
    }
    if (field(3).empty()) {
      rec.region = Region::unknown;
    } else if (auto r = parse_region(field(3))) {
      rec.region = *r;
    } else {
      reject("unknown region '" + std::string(field(3)) + "'");
      continue;
    }

    std::string year_error;
    rec.date_start = parse_year(field(4), year_error);
    if (!year_error.empty()) { reject("date_start: " + year_error); continue; }
    rec.date_end = parse_year(field(5), year_error);
    if (!year_error.empty()) { reject("date_end: " + year_error); continue; }
    if (rec.date_start && rec.date_end && *rec.date_start > *rec.date_end) {
      reject("inverted date range");
      continue;
    }

    auto fict = parse_bool(field(6));
    auto nick = parse_bool(field(7));
    if (!fict) { reject("fictitious must be true or false"); continue; }
    if (!nick) { reject("nickname must be true or false"); continue; }
    rec.fictitious = *fict;
    rec.nickname = *nick;

    if (!field(8).empty()) rec.exclude_category = std::string(field(8));
    if (!field(9).empty()) {
      auto o = parse_origin(field(9));
      if (!o) {
        reject("unknown origin '" + std::string(field(9)) + "'; valid categories: " +
               valid_origin_list());
        continue;
      }
      rec.origin = *o;
    }
    rec.source_tag = std::string(field(10));
    result.records.push_back(std::move(rec));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Filtering

std::vector<OccurrenceRecord> filter_records(const std::vector<OccurrenceRecord>& records,
                                             const RecordFilter& filter) {
  auto date_ok = [&](const OccurrenceRecord& r) {
    if (!filter.window) return true;
    const DateWindow& w = *filter.window;
    if (w.policy == DatePolicy::exclusive) {
      if (!r.date_start || !r.date_end) return false;
      return *r.date_start >= w.start && *r.date_end <= w.end;
    }
    // Inclusive: keep anything that cannot be shown to fall outside.
    if (!r.date_start && !r.date_end) return true;
    const int lo = r.date_start.value_or(*r.date_end);
    const int hi = r.date_end.value_or(*r.date_start);
    return lo <= w.end && hi >= w.start;
  };

  std::vector<OccurrenceRecord> out;
  for (const auto& r : records) {
    if (filter.gender && r.gender != *filter.gender) continue;
    if (filter.region && r.region != *filter.region) continue;
    if (!filter.include_fictitious && r.fictitious) continue;
    if (!filter.include_nicknames && r.nickname) continue;
    if (r.exclude_category && filter.exclusions.contains(*r.exclude_category)) continue;
    if (!date_ok(r)) continue;
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distributions

FrequencyDistribution::FrequencyDistribution(std::map<std::string, std::int64_t> counts)
    : counts_(std::move(counts)) {
  for (auto it = counts_.begin(); it != counts_.end();) {
    if (it->second < 0) throw DataError("negative count for name '" + it->first + "'");
    if (it->second == 0) {
      it = counts_.erase(it);
      continue;
    }
    total_ += it->second;
    ++it;
  }
}

std::int64_t FrequencyDistribution::count(const std::string& name) const {
  auto it = counts_.find(name);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::int64_t>> FrequencyDistribution::ranked() const {
  std::vector<std::pair<std::string, std::int64_t>> out(counts_.begin(), counts_.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

FrequencyDistribution build_frequency_distribution(const std::vector<OccurrenceRecord>& records) {
  std::set<std::pair<std::string_view, std::string_view>> seen;
  std::map<std::string, std::int64_t> counts;
  for (const auto& r : records) {
    if (seen.emplace(r.person_id, r.name).second) ++counts[r.name];
  }
  return FrequencyDistribution(std::move(counts));
}

std::int64_t OriginDistribution::count(Origin o) const {
  auto it = counts.find(o);
  return it == counts.end() ? 0 : it->second;
}

OriginDistribution build_origin_distribution(const std::vector<OccurrenceRecord>& records,
                                             bool merge_semitic) {
  OriginDistribution dist;
  dist.merged_semitic = merge_semitic;
  for (Origin o : origin_categories(merge_semitic)) dist.counts[o] = 0;

  std::set<std::pair<std::string_view, std::string_view>> seen;
  std::size_t with_origin = 0;
  for (const auto& r : records) {
    if (!seen.emplace(r.person_id, r.name).second) continue;
    if (!r.origin) {
      ++dist.skipped_without_origin;
      continue;
    }
    Origin o = *r.origin;
    if (merge_semitic && (o == Origin::SemiticHebrew || o == Origin::SemiticGreek))
      o = Origin::Semitic;
    ++dist.counts[o];
    ++dist.total;
    ++with_origin;
  }
  if (with_origin == 0 && !records.empty()) throw DataError("no origin data");
  return dist;
}

SubtractionResult subtract_sample(const FrequencyDistribution& reference,
                                  const FrequencyDistribution& test) {
  SubtractionResult result;
  auto counts = reference.counts();
  for (const auto& [name, c] : test.counts()) {
    auto it = counts.find(name);
    const std::int64_t have = it == counts.end() ? 0 : it->second;
    if (c > have) {
      result.exact = false;
      result.diagnostics.push_back("name '" + name + "': test count " + std::to_string(c) +
                                   " exceeds reference count " + std::to_string(have));
    }
    if (it != counts.end()) it->second = std::max<std::int64_t>(0, have - c);
  }
  result.distribution = FrequencyDistribution(std::move(counts));
  return result;
}

FrequencyDistribution add_samples(const FrequencyDistribution& a, const FrequencyDistribution& b) {
  auto counts = a.counts();
  for (const auto& [name, c] : b.counts()) counts[name] += c;
  return FrequencyDistribution(std::move(counts));
}

OriginDistribution subtract_origins(const OriginDistribution& reference,
                                    const OriginDistribution& test, bool* exact) {
  if (reference.merged_semitic != test.merged_semitic)
    throw DataError("origin distributions disagree on Semitic merge");
  OriginDistribution out = reference;
  out.total = 0;
  bool ok = true;
  for (auto& [origin, c] : out.counts) {
    const std::int64_t t = test.count(origin);
    if (t > c) ok = false;
    c = std::max<std::int64_t>(0, c - t);
    out.total += c;
  }
  if (exact) *exact = ok;
  return out;
}

void write_distribution_csv(std::ostream& out, const FrequencyDistribution& dist) {
  out << "name,count\n";
  for (const auto& [name, c] : dist.ranked()) out << csv::escape(name) << ',' << c << '\n';
}

FrequencyDistribution read_distribution_csv(std::istream& in) {
  auto header = csv::next_line(in);
  if (!header) throw DataError("distribution file is empty");
  const auto cols = csv::split_line(*header);
  if (cols.size() != 2 || csv::trim(cols[0]) != "name" || csv::trim(cols[1]) != "count")
    throw DataError("distribution header must be 'name,count'");
  std::map<std::string, std::int64_t> counts;
  std::size_t row = 0;
  while (auto line = csv::next_line(in)) {
    ++row;
    if (csv::trim(*line).empty()) continue;
    const auto fields = csv::split_line(*line);
    std::int64_t c = 0;
    const auto text = csv::trim(fields.size() == 2 ? fields[1] : std::string{});
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), c);
    if (fields.size() != 2 || ec != std::errc{} || ptr != text.data() + text.size() || c < 1)
      throw DataError("distribution row " + std::to_string(row) + " is malformed");
    if (!counts.emplace(fields[0], c).second)
      throw DataError("distribution row " + std::to_string(row) + " repeats name '" +
                      fields[0] + "'");
  }
  return FrequencyDistribution(std::move(counts));
}

}  // namespace namefit
