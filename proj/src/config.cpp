#include "graphrank/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double parse_number(const std::string& text, const std::string& source, std::size_t line) {
  const auto t = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw InputError(source, line, "not a number: '" + t + "'");
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

EngineConfig load_config(std::istream& in, const std::string& source_name) {
  EngineConfig config;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;

    if (const auto tab = line.find('\t'); tab != std::string::npos) {
      const auto predicate = trim(line.substr(0, tab));
      const auto level = parse_number(line.substr(tab + 1), source_name, line_no);
      if (predicate.empty() || level != static_cast<int>(level)) {
        throw InputError(source_name, line_no, "expected 'predicate<TAB>level'");
      }
      try {
        config.taxonomy.set_level(predicate, static_cast<int>(level));
      } catch (const InputError& e) {
        throw InputError(source_name, line_no, e.what());
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(source_name, line_no, "unrecognized line");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "weights") {
      if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
        throw InputError(source_name, line_no, "weights must be written as [w1,w2,w3,w4]");
      }
      std::istringstream items(value.substr(1, value.size() - 2));
      std::string item;
      std::size_t i = 0;
      while (std::getline(items, item, ',')) {
        if (i == 4) throw InputError(source_name, line_no, "expected exactly 4 weights");
        config.weights.w[i++] = parse_number(item, source_name, line_no);
      }
      if (i != 4) throw InputError(source_name, line_no, "expected exactly 4 weights");
    } else if (key == "k1") {
      config.bm25.k1 = parse_number(value, source_name, line_no);
    } else if (key == "b") {
      config.bm25.b = parse_number(value, source_name, line_no);
    } else {
      throw InputError(source_name, line_no, "unknown setting '" + key + "'");
    }
  }
  try {
    config.weights.validate();
    config.bm25.validate();
  } catch (const InputError& e) {
    throw InputError(source_name, 0, e.what());
  }
  return config;
}

EngineConfig load_config(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw InputError(source.string(), 0, "cannot open config file");
  return load_config(in, source.string());
}

std::string serialize_config(const EngineConfig& config) {
  std::ostringstream os;
  os << "weights = [";
  for (std::size_t i = 0; i < 4; ++i) {
    os << (i ? ", " : "") << format_number(config.weights.w[i]);
  }
  os << "]\n";
  os << "k1 = " << format_number(config.bm25.k1) << '\n';
  os << "b = " << format_number(config.bm25.b) << '\n';
  for (const auto& [predicate, specificity] : config.taxonomy.entries()) {
    const int level = specificity == 1.0 ? 1 : specificity == 0.5 ? 2 : 3;
    os << predicate << '\t' << level << '\n';
  }
  return os.str();
}

}  // namespace graphrank
