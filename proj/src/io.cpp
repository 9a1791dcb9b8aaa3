#include "bipara/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bipara {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Expects "# bipara-<kind> v1 n=<n>"; returns n.
int parse_header(const std::string& line, const std::string& kind) {
  const std::string prefix = "# bipara-" + kind + " v1 n=";
  if (line.rfind(prefix, 0) != 0)
    throw IoError("bad header, expected '" + prefix + "<n>'");
  try {
    std::size_t used = 0;
    int n = std::stoi(line.substr(prefix.size()), &used);
    if (prefix.size() + used != line.size()) throw IoError("trailing junk in header");
    return n;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception&) {
    throw IoError("bad resolution in header");
  }
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string grid_to_csv(const GridFunction& f) {
  std::string out = "# bipara-grid v1 n=" + std::to_string(f.res().n()) + "\n";
  const int s = f.side();
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (j) out += ',';
      out += format_double(f.at(i, j));
    }
    out += '\n';
  }
  return out;
}

GridFunction grid_from_csv(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw IoError("empty grid file");
  int n = parse_header(lines[0], "grid");
  Resolution res = [&] {
    try {
      return Resolution(n);
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
  }();
  const int s = res.side();
  if (static_cast<int>(lines.size()) != s + 1)
    throw IoError("expected " + std::to_string(s) + " data rows");
  GridFunction f(res);
  for (int i = 0; i < s; ++i) {
    auto fields = split_fields(lines[i + 1]);
    if (static_cast<int>(fields.size()) != s)
      throw IoError("row " + std::to_string(i) + ": expected " +
                    std::to_string(s) + " values");
    for (int j = 0; j < s; ++j) {
      try {
        std::size_t used = 0;
        f.at(i, j) = std::stod(fields[j], &used);
        if (used != fields[j].size()) throw IoError("bad number");
      } catch (const IoError&) {
        throw;
      } catch (const std::exception&) {
        throw IoError("row " + std::to_string(i) + ": bad value '" +
                      fields[j] + "'");
      }
    }
  }
  return f;
}

std::string mask_to_csv(const OpenSetMask& m) {
  std::string out = "# bipara-mask v1 n=" + std::to_string(m.res().n()) + "\n";
  const int s = m.side();
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (j) out += ',';
      out += m.test(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

OpenSetMask mask_from_csv(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw IoError("empty mask file");
  int n = parse_header(lines[0], "mask");
  Resolution res = [&] {
    try {
      return Resolution(n);
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
  }();
  const int s = res.side();
  if (static_cast<int>(lines.size()) != s + 1)
    throw IoError("expected " + std::to_string(s) + " data rows");
  OpenSetMask m(res);
  for (int i = 0; i < s; ++i) {
    auto fields = split_fields(lines[i + 1]);
    if (static_cast<int>(fields.size()) != s)
      throw IoError("row " + std::to_string(i) + ": expected " +
                    std::to_string(s) + " values");
    for (int j = 0; j < s; ++j) {
      if (fields[j] == "1")
        m.set(i, j, true);
      else if (fields[j] != "0")
        throw IoError("mask entries must be 0 or 1");
    }
  }
  return m;
}

nlohmann::ordered_json field_to_json(const HaarField& g) {
  nlohmann::ordered_json j;
  j["bipara-field"] = true;
  j["version"] = 1;
  j["n"] = g.res().n();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& [idx, c] : g.entries()) {
    DyadicRect r = rect_from_index(idx, g.res());
    nlohmann::ordered_json e;
    e["jx"] = r.x.level;
    e["kx"] = r.x.pos;
    e["jy"] = r.y.level;
    e["ky"] = r.y.pos;
    e["c"] = c;
    coeffs.push_back(std::move(e));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

HaarField field_from_json(const nlohmann::json& j) {
  try {
    if (!j.value("bipara-field", false)) throw IoError("not a field file");
    if (j.value("version", 0) != 1) throw IoError("unsupported field version");
    Resolution res = [&] {
      try {
        return Resolution(j.at("n").get<int>());
      } catch (const IoError&) {
        throw;
      } catch (const std::exception& e) {
        throw IoError(e.what());
      }
    }();
    std::vector<HaarField::Entry> entries;
    for (const auto& e : j.at("coeffs")) {
      DyadicRect r{{e.at("jx").get<int>(), e.at("kx").get<int>()},
                   {e.at("jy").get<int>(), e.at("ky").get<int>()}};
      if (!is_haar_carrier(r, res))
        throw IoError("coefficient rectangle is not a Haar carrier");
      entries.emplace_back(rect_index(r, res), e.at("c").get<double>());
    }
    return HaarField::from_entries(res, std::move(entries));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("bad field JSON: ") + e.what());
  }
}

nlohmann::ordered_json trace_to_json(const DecompositionTrace& trace) {
  nlohmann::ordered_json j;
  j["bipara-trace"] = true;
  j["version"] = 1;
  j["eta"] = trace.eta_used;
  j["retries"] = trace.retries;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& it : trace.items) {
    nlohmann::ordered_json e;
    e["i"] = it.i;
    if (it.lambda)
      e["lambda"] = *it.lambda;
    else
      e["lambda"] = nullptr;
    e["measure_omega"] = it.measure_omega;
    e["measure_superlevel"] = it.measure_superlevel;
    items.push_back(std::move(e));
  }
  j["items"] = std::move(items);
  return j;
}

}  // namespace bipara
