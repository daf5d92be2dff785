#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "lcube/errors.hpp"
#include "lcube/mdl.hpp"
#include "lcube/random.hpp"

namespace lcube {

struct PairSample {
  std::string id;
  SampleVector x;  // raw units
  SampleVector y;  // raw units
  std::optional<Direction> truth;
  double weight = 1.0;
};

struct Dataset {
  std::string name;
  std::vector<PairSample> pairs;
};

enum class Family { AN, ANs, LS, LSs, MNU };

struct GeneratorConfig {
  Family family = Family::AN;
  int pairs = 100;
  int samples_per_pair = 1000;
  double noise_level = 0.05;
  std::uint64_t seed = 1;
};

// One row of a benchmark meta file: id, cause/effect column spans (1-based)
// and the pair's weight. Pairs whose cause or effect spans more than one
// column are outside the univariate scope and flagged.
struct MetaEntry {
  std::string id;
  int cause_col = 1;   // first cause column
  int effect_col = 2;  // first effect column
  double weight = 1.0;
  bool multivariate = false;
};

namespace detail {

inline bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);  // from_chars rejects '+'
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Splits on runs of spaces/tabs or commas.
inline std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ','))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != ',')
      ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline bool is_comment_or_blank(std::string_view line) {
  for (const char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#';
  }
  return true;
}

inline std::string chop_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Shortest exact decimal representation; reloading reproduces the double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace detail

// Reads two columns (0-based) of a whitespace- or comma-separated numeric
// file. Lines starting with '#' and blank lines are ignored; a row whose
// requested columns are missing or non-numeric raises ParseError with its
// line number.
inline PairSample load_pair_file(const std::filesystem::path& path,
                                 int column_x = 0, int column_y = 1) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  PairSample pair;
  pair.id = path.stem().string();
  const int need = std::max(column_x, column_y);
  std::string raw;
  for (int line_no = 1; std::getline(in, raw); ++line_no) {
    const std::string line = detail::chop_cr(std::move(raw));
    if (detail::is_comment_or_blank(line)) continue;
    const auto tokens = detail::tokenize(line);
    if (static_cast<int>(tokens.size()) <= need)
      throw ParseError(line_no, "expected at least " + std::to_string(need + 1) +
                                    " columns, got " + std::to_string(tokens.size()));
    double vx = 0.0, vy = 0.0;
    if (!detail::parse_double(tokens[static_cast<std::size_t>(column_x)], vx))
      throw ParseError(line_no, "non-numeric value '" +
                                    std::string(tokens[static_cast<std::size_t>(column_x)]) + "'");
    if (!detail::parse_double(tokens[static_cast<std::size_t>(column_y)], vy))
      throw ParseError(line_no, "non-numeric value '" +
                                    std::string(tokens[static_cast<std::size_t>(column_y)]) + "'");
    pair.x.push_back(vx);
    pair.y.push_back(vy);
  }
  if (pair.x.size() < 8) throw TooFewSamplesError(static_cast<long>(pair.x.size()));
  return pair;
}

// Meta file rows: id, first/last cause column, first/last effect column,
// weight (columns 1-based).
inline std::vector<MetaEntry> load_meta(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<MetaEntry> entries;
  std::string raw;
  for (int line_no = 1; std::getline(in, raw); ++line_no) {
    const std::string line = detail::chop_cr(std::move(raw));
    if (detail::is_comment_or_blank(line)) continue;
    const auto tokens = detail::tokenize(line);
    if (tokens.size() != 6)
      throw ParseError(line_no, "expected 6 fields, got " + std::to_string(tokens.size()));
    double cols[4];
    for (int i = 0; i < 4; ++i) {
      if (!detail::parse_double(tokens[static_cast<std::size_t>(i + 1)], cols[i]) ||
          cols[i] < 1.0 || cols[i] != std::floor(cols[i]))
        throw ParseError(line_no, "bad column index '" +
                                      std::string(tokens[static_cast<std::size_t>(i + 1)]) + "'");
    }
    MetaEntry entry;
    entry.id = std::string(tokens[0]);
    entry.cause_col = static_cast<int>(cols[0]);
    entry.effect_col = static_cast<int>(cols[2]);
    entry.multivariate = cols[0] != cols[1] || cols[2] != cols[3];
    if (!detail::parse_double(tokens[5], entry.weight) || entry.weight < 0.0)
      throw ParseError(line_no, "bad weight '" + std::string(tokens[5]) + "'");
    entries.push_back(std::move(entry));
  }
  return entries;
}

namespace detail {

struct Polynomial {
  std::vector<double> coeffs;  // c0 + c1 x + ...

  double operator()(double x) const {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
  }
  double derivative(double x) const {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 1;)
      v = v * x + coeffs[i] * static_cast<double>(i);
    return v;
  }
};

// Random degree 3-5 polynomial, coefficients U(-2,2), redrawn until
// max|f'| >= 0.5 on a 100-point grid so flat/near-constant draws are
// excluded.
inline Polynomial draw_polynomial(Rng& rng) {
  for (;;) {
    const int degree = 3 + static_cast<int>(rng.uniform() * 3.0);
    Polynomial poly;
    poly.coeffs.resize(static_cast<std::size_t>(degree) + 1);
    for (double& c : poly.coeffs) c = rng.uniform(-2.0, 2.0);
    double max_slope = 0.0;
    for (int g = 0; g < 100; ++g)
      max_slope = std::max(max_slope,
                           std::abs(poly.derivative(static_cast<double>(g) / 99.0)));
    if (max_slope >= 0.5) return poly;
  }
}

struct Sigmoid {
  double a = 1.0, b = 4.0, c = 0.5;
  double operator()(double x) const { return a / (1.0 + std::exp(-b * (x - c))); }
};

inline Sigmoid draw_sigmoid(Rng& rng) {
  return Sigmoid{rng.uniform(1.0, 3.0), rng.uniform(4.0, 12.0), rng.uniform(0.2, 0.8)};
}

// Multiplicative-noise pairs need the sigmoid to reach its upper plateau
// inside [0,1]; draws that stay on the rising branch put the pair near the
// score's equality case and carry no usable direction signal. Redraw those.
inline Sigmoid draw_saturating_sigmoid(Rng& rng) {
  for (;;) {
    const Sigmoid s = draw_sigmoid(rng);
    if (s.b * (1.0 - s.c) >= 3.0) return s;
  }
}

}  // namespace detail

inline const char* family_name(Family family) {
  switch (family) {
    case Family::AN: return "an";
    case Family::ANs: return "ans";
    case Family::LS: return "ls";
    case Family::LSs: return "lss";
    case Family::MNU: return "mnu";
  }
  return "?";
}

inline std::optional<Family> family_from_name(std::string_view name) {
  if (name == "an") return Family::AN;
  if (name == "ans" || name == "an-s") return Family::ANs;
  if (name == "ls") return Family::LS;
  if (name == "lss" || name == "ls-s") return Family::LSs;
  if (name == "mnu" || name == "mn-u") return Family::MNU;
  return std::nullopt;
}

// Seeded synthetic cause-effect pairs, x ~ U(0,1):
//   AN / ANs - y = f(x) + noise * eps,            eps ~ N(0,1)
//   LS / LSs - y = f(x) + (0.2 + x^2) * noise * eps
//   MNU      - y = f(x) * u,                      u ~ U(1 - noise, 1 + noise)
// f is a fresh polynomial (AN, LS) or sigmoid (ANs, LSs, MNU) per pair.
// Every value is a pure function of (config, pair index), so pairs may be
// generated concurrently in any order.
inline Dataset generate_dataset(const GeneratorConfig& config) {
  if (config.pairs < 1) throw std::invalid_argument("pairs must be >= 1");
  if (config.samples_per_pair < 8)
    throw std::invalid_argument("samples_per_pair must be >= 8");
  Dataset dataset;
  dataset.name = family_name(config.family);
  dataset.pairs.resize(static_cast<std::size_t>(config.pairs));
  for (int q = 0; q < config.pairs; ++q) {
    Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(q));
    PairSample& pair = dataset.pairs[static_cast<std::size_t>(q)];
    char id[32];
    std::snprintf(id, sizeof(id), "pair%04d", q + 1);
    pair.id = id;
    pair.truth = Direction::XtoY;
    pair.weight = 1.0;
    const int n = config.samples_per_pair;
    pair.x.resize(static_cast<std::size_t>(n));
    pair.y.resize(static_cast<std::size_t>(n));

    const bool sigmoid_f = config.family != Family::AN && config.family != Family::LS;
    detail::Polynomial poly;
    detail::Sigmoid sigm;
    if (config.family == Family::MNU)
      sigm = detail::draw_saturating_sigmoid(rng);
    else if (sigmoid_f)
      sigm = detail::draw_sigmoid(rng);
    else
      poly = detail::draw_polynomial(rng);
    const auto f = [&](double x) { return sigmoid_f ? sigm(x) : poly(x); };

    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform();
      double y = 0.0;
      switch (config.family) {
        case Family::AN:
        case Family::ANs:
          y = f(x) + config.noise_level * rng.normal();
          break;
        case Family::LS:
        case Family::LSs:
          y = f(x) + (0.2 + x * x) * config.noise_level * rng.normal();
          break;
        case Family::MNU:
          y = f(x) * (1.0 + config.noise_level * (2.0 * rng.uniform() - 1.0));
          break;
      }
      pair.x[static_cast<std::size_t>(i)] = x;
      pair.y[static_cast<std::size_t>(i)] = y;
    }
  }
  return dataset;
}

// Writes one file per pair (x y columns) plus pairmeta.txt in the meta
// convention above. Values use shortest-exact formatting, so reloading
// reproduces the doubles bit for bit.
inline void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream meta(dir / "pairmeta.txt");
  if (!meta) throw Error("cannot write " + (dir / "pairmeta.txt").string());
  for (const PairSample& pair : dataset.pairs) {
    std::ofstream out(dir / (pair.id + ".txt"));
    if (!out) throw Error("cannot write " + (dir / (pair.id + ".txt")).string());
    for (std::size_t i = 0; i < pair.x.size(); ++i)
      out << detail::format_double(pair.x[i]) << ' '
          << detail::format_double(pair.y[i]) << '\n';
    const bool x_causes = !pair.truth || *pair.truth == Direction::XtoY;
    meta << pair.id << (x_causes ? " 1 1 2 2 " : " 2 2 1 1 ")
         << detail::format_double(pair.weight) << '\n';
  }
}

struct SkippedPair {
  std::string id;
  std::string reason;
};

struct LoadedDataset {
  Dataset dataset;
  std::vector<SkippedPair> skipped;
};

namespace detail {

inline std::filesystem::path resolve_pair_file(const std::filesystem::path& dir,
                                               const std::string& id) {
  for (const std::string& name : {id, id + ".txt", "pair" + id + ".txt", "pair" + id}) {
    const auto candidate = dir / name;
    if (std::filesystem::is_regular_file(candidate)) return candidate;
  }
  return {};
}

}  // namespace detail

// Loads a directory of pair files. When a meta file is given (or a
// pairmeta.txt sits in the directory) it drives the pair list, column
// choice, ground truth and weights; otherwise every *.txt file is taken as
// an (x, y) pair with truth XtoY and weight 1. Unusable pairs are reported
// as skipped rather than failing the whole load.
inline LoadedDataset load_dataset(const std::filesystem::path& dir,
                                  std::filesystem::path meta_path = {}) {
  if (!std::filesystem::is_directory(dir)) throw Error("not a directory: " + dir.string());
  LoadedDataset loaded;
  loaded.dataset.name = dir.filename().empty() ? dir.parent_path().filename().string()
                                               : dir.filename().string();
  if (meta_path.empty() && std::filesystem::is_regular_file(dir / "pairmeta.txt"))
    meta_path = dir / "pairmeta.txt";

  if (!meta_path.empty()) {
    std::vector<std::string> seen;
    for (const MetaEntry& entry : load_meta(meta_path)) {
      if (std::find(seen.begin(), seen.end(), entry.id) != seen.end()) {
        loaded.skipped.push_back({entry.id, "duplicate id"});
        continue;
      }
      seen.push_back(entry.id);
      if (entry.multivariate) {
        loaded.skipped.push_back({entry.id, "multivariate"});
        continue;
      }
      const auto file = detail::resolve_pair_file(dir, entry.id);
      if (file.empty()) {
        loaded.skipped.push_back({entry.id, "pair file not found"});
        continue;
      }
      // x keeps the lower-numbered file column; truth encodes orientation.
      const int col_x = std::min(entry.cause_col, entry.effect_col) - 1;
      const int col_y = std::max(entry.cause_col, entry.effect_col) - 1;
      try {
        PairSample pair = load_pair_file(file, col_x, col_y);
        pair.id = entry.id;
        pair.truth = entry.cause_col < entry.effect_col ? Direction::XtoY
                                                        : Direction::YtoX;
        pair.weight = entry.weight;
        loaded.dataset.pairs.push_back(std::move(pair));
      } catch (const Error& e) {
        loaded.skipped.push_back({entry.id, e.what()});
      }
    }
    return loaded;
  }

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    if (entry.path().filename().string().find("meta") != std::string::npos) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    try {
      PairSample pair = load_pair_file(file);
      pair.truth = Direction::XtoY;
      loaded.dataset.pairs.push_back(std::move(pair));
    } catch (const Error& e) {
      loaded.skipped.push_back({file.stem().string(), e.what()});
    }
  }
  return loaded;
}

}  // namespace lcube
