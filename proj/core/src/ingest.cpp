#include "darl/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "darl/error.hpp"

namespace darl::ingest {

namespace {

using nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  // Trailing blank lines are not rows.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

const ordered_json& require(const ordered_json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) parse_error(std::string("missing key '") + key + "'");
  return *it;
}

double number_at(const ordered_json& doc, const char* key) {
  const auto& v = require(doc, key);
  if (!v.is_number()) parse_error(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

prng::SeedValue seed_from(const ordered_json& v) {
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      v.get<long long>() > std::numeric_limits<std::uint32_t>::max()) {
    parse_error("seeds must be unsigned 32-bit integers");
  }
  return prng::SeedValue{static_cast<std::uint32_t>(v.get<long long>())};
}

model::ExperimentConfig config_from_json(const ordered_json& doc) {
  static const std::set<std::string, std::less<>> known{
      "t_in_c",         "t_end_c",          "t_w_c", "t_w_uncertainty_c",
      "total_length_m", "target_lengths_m", "seeds", "n_override",
      "sort_order",     "darl_mode"};
  if (!doc.is_object()) parse_error("config must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!known.contains(item.key())) parse_error("unknown config key '" + item.key() + "'");
  }

  model::ExperimentConfig c;
  c.t_in = number_at(doc, "t_in_c");
  c.t_end = number_at(doc, "t_end_c");
  c.t_w = number_at(doc, "t_w_c");
  if (doc.contains("t_w_uncertainty_c")) c.t_w_uncertainty = number_at(doc, "t_w_uncertainty_c");
  c.total_length = number_at(doc, "total_length_m");

  const auto& targets = require(doc, "target_lengths_m");
  if (!targets.is_array()) parse_error("'target_lengths_m' must be an array");
  for (const auto& t : targets) {
    if (!t.is_number()) parse_error("'target_lengths_m' entries must be numbers");
    c.target_lengths.push_back(t.get<double>());
  }

  const auto& seeds = require(doc, "seeds");
  if (!seeds.is_array()) parse_error("'seeds' must be an array");
  for (const auto& s : seeds) c.seeds.push_back(seed_from(s));

  if (const auto it = doc.find("n_override"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<long long>() < 0) {
      parse_error("'n_override' must be a non-negative integer");
    }
    c.n_override = static_cast<std::size_t>(it->get<long long>());
  }
  if (const auto it = doc.find("sort_order"); it != doc.end()) {
    if (!it->is_string()) parse_error("'sort_order' must be a string");
    c.sort_order = prng::parse_sort_order(it->get<std::string>());
  }
  if (const auto it = doc.find("darl_mode"); it != doc.end()) {
    if (!it->is_string()) parse_error("'darl_mode' must be a string");
    c.darl_mode = it->get<std::string>();
  }

  model::validate(c);
  return c;
}

ordered_json config_to_json(const model::ExperimentConfig& c) {
  ordered_json doc;
  doc["t_in_c"] = c.t_in;
  doc["t_end_c"] = c.t_end;
  doc["t_w_c"] = c.t_w;
  doc["t_w_uncertainty_c"] = c.t_w_uncertainty;
  doc["total_length_m"] = c.total_length;
  doc["target_lengths_m"] = c.target_lengths;
  ordered_json seeds = ordered_json::array();
  for (const auto s : c.seeds) seeds.push_back(s.value);
  doc["seeds"] = seeds;
  doc["n_override"] = c.n_override ? ordered_json(*c.n_override) : ordered_json(nullptr);
  doc["sort_order"] = std::string(prng::to_string(c.sort_order));
  doc["darl_mode"] = c.darl_mode;
  return doc;
}

ordered_json parse_json(std::string_view text) {
  try {
    return ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

SensorLog parse_sensor_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::SchemaError, "sensor log has no header row");

  const auto header = split_fields(lines.front());
  if (unquote(header.front()) != "timestamp_s") {
    throw Error(ErrorCode::SchemaError, "first column must be timestamp_s");
  }
  std::vector<std::string> columns;
  for (std::size_t i = 1; i < header.size(); ++i) {
    const std::string name(unquote(header[i]));
    if (std::find(kChannelNames.begin(), kChannelNames.end(), name) == kChannelNames.end()) {
      throw Error(ErrorCode::SchemaError, "unknown channel column '" + name + "'");
    }
    if (std::find(columns.begin(), columns.end(), name) != columns.end()) {
      throw Error(ErrorCode::SchemaError, "duplicate channel column '" + name + "'");
    }
    columns.push_back(name);
  }
  for (const auto name : kChannelNames) {
    if (std::find(columns.begin(), columns.end(), name) == columns.end()) {
      throw Error(ErrorCode::SchemaError, "missing channel column '" + std::string(name) + "'");
    }
  }

  SensorLog log;
  for (const auto& name : columns) log.channels[name].reserve(lines.size() - 1);
  log.timestamps.reserve(lines.size() - 1);

  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto fields = split_fields(lines[row]);
    if (fields.size() != header.size()) {
      parse_error("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                  " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> numbers(fields.size());
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto v = parse_double(fields[f]);
      if (!v) {
        parse_error("row " + std::to_string(row) + ": unparseable value '" +
                    std::string(fields[f]) + "'");
      }
      numbers[f] = *v;
    }
    if (!log.timestamps.empty() && !(numbers[0] > log.timestamps.back())) {
      throw Error(ErrorCode::OrderingError,
                  "row " + std::to_string(row) + ": timestamps must be strictly increasing");
    }
    log.timestamps.push_back(numbers[0]);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      log.channels[columns[c]].push_back(numbers[c + 1]);
    }
  }
  return log;
}

ChannelSummary summarize_channel(const SensorLog& log, std::string_view channel) {
  const auto it = log.channels.find(channel);
  if (it == log.channels.end()) {
    throw Error(ErrorCode::SchemaError, "unknown channel '" + std::string(channel) + "'");
  }
  const auto& v = it->second;
  if (v.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "channel '" + std::string(channel) + "' is empty");
  }
  long double sum = 0.0L;
  for (const double x : v) sum += x;
  const long double mean = sum / static_cast<long double>(v.size());
  long double ss = 0.0L;
  for (const double x : v) ss += (x - mean) * (x - mean);
  const double sd =
      v.size() > 1 ? static_cast<double>(std::sqrt(ss / static_cast<long double>(v.size() - 1)))
                   : 0.0;
  return {static_cast<double>(mean), sd, v.size()};
}

model::ExperimentConfig load_config(std::string_view json_text) {
  return config_from_json(parse_json(json_text));
}

std::string serialize_config(const model::ExperimentConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

std::vector<model::ReferencePoint> ExperimentFixture::reference_points() const {
  std::vector<model::ReferencePoint> points;
  points.reserve(reference.size());
  for (const auto& r : reference) points.push_back({r.length, r.t_obs});
  return points;
}

ExperimentFixture load_fixture(std::string_view json_text) {
  const auto doc = parse_json(json_text);
  if (!doc.is_object()) parse_error("fixture must be a JSON object");
  const auto& name = require(doc, "name");
  if (!name.is_string()) parse_error("'name' must be a string");

  ExperimentFixture fx;
  fx.name = name.get<std::string>();
  fx.config = config_from_json(require(doc, "config"));
  fx.published_rmse = number_at(doc, "published_rmse_c");
  const auto& refs = require(doc, "reference");
  if (!refs.is_array()) parse_error("'reference' must be an array");
  for (const auto& r : refs) {
    if (!r.is_object()) parse_error("reference entries must be objects");
    fx.reference.push_back({number_at(r, "length_m"), number_at(r, "t_obs_c"),
                            number_at(r, "published_delta_t_c"),
                            number_at(r, "published_relative_error_pct"),
                            seed_from(require(r, "published_seed"))});
  }
  return fx;
}

std::string serialize_fixture(const ExperimentFixture& fx) {
  ordered_json doc;
  doc["name"] = fx.name;
  doc["format_version"] = 1;
  doc["config"] = config_to_json(fx.config);
  doc["published_rmse_c"] = fx.published_rmse;
  ordered_json refs = ordered_json::array();
  for (const auto& r : fx.reference) {
    ordered_json entry;
    entry["length_m"] = r.length;
    entry["t_obs_c"] = r.t_obs;
    entry["published_delta_t_c"] = r.published_delta_t;
    entry["published_relative_error_pct"] = r.published_relative_error_pct;
    entry["published_seed"] = r.published_seed.value;
    refs.push_back(entry);
  }
  doc["reference"] = refs;
  return doc.dump(2) + "\n";
}

std::vector<model::ReferencePoint> parse_reference_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::SchemaError, "reference file has no header row");
  const auto header = split_fields(lines.front());
  if (header.size() != 2 || unquote(header[0]) != "length_m" || unquote(header[1]) != "t_obs_c") {
    throw Error(ErrorCode::SchemaError, "reference header must be length_m,t_obs_c");
  }
  std::vector<model::ReferencePoint> points;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto fields = split_fields(lines[row]);
    const auto length = fields.size() == 2 ? parse_double(fields[0]) : std::nullopt;
    const auto t_obs = fields.size() == 2 ? parse_double(fields[1]) : std::nullopt;
    if (!length || !t_obs) parse_error("reference row " + std::to_string(row) + " is malformed");
    points.push_back({*length, *t_obs});
  }
  return points;
}

std::vector<double> parse_series_csv(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<double> values;
  values.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto field = trim(lines[i]);
    const auto v = parse_double(field);
    if (v) {
      values.push_back(*v);
    } else if (i != 0) {
      parse_error("series line " + std::to_string(i + 1) + ": unparseable value '" +
                  std::string(field) + "'");
    }
  }
  return values;
}

}  // namespace darl::ingest
