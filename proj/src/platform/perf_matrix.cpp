#include "qxp/platform/perf_matrix.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qxp {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("\"" + text + "\" is not a number");
  }
  if (used != text.size()) {
    throw UsageError("trailing junk after number \"" + text + "\"");
  }
  return v;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

void emit_block(std::ostringstream& out, const char* name,
                const std::vector<std::string>& labels,
                const Eigen::MatrixXd& m) {
  out << name;
  for (const std::string& l : labels) out << ',' << l;
  out << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << labels[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << ',' << format_double(m(r, c));
    }
    out << '\n';
  }
}

Eigen::MatrixXd parse_block(const std::vector<std::string>& lines,
                            std::size_t& pos, const char* name,
                            std::vector<std::string>& labels_out) {
  if (pos >= lines.size()) {
    throw UsageError(std::string("matrix CSV is missing the ") + name +
                     " block");
  }
  const std::vector<std::string> header = split_csv_row(lines[pos]);
  if (header.empty() || header[0] != name) {
    throw UsageError(std::string("expected a ") + name + " block header");
  }
  const std::size_t k = header.size() - 1;
  if (k == 0) throw UsageError("matrix CSV block has no labels");
  std::vector<std::string> labels(header.begin() + 1, header.end());
  ++pos;
  Eigen::MatrixXd m(k, k);
  for (std::size_t r = 0; r < k; ++r, ++pos) {
    if (pos >= lines.size()) {
      throw UsageError(std::string(name) + " block ends early");
    }
    const std::vector<std::string> row = split_csv_row(lines[pos]);
    if (row.size() != k + 1 || row[0] != labels[r]) {
      throw UsageError(std::string(name) + " block row " +
                       std::to_string(r) + " is malformed");
    }
    for (std::size_t c = 0; c < k; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_double(row[c + 1]);
    }
  }
  labels_out = std::move(labels);
  return m;
}

}  // namespace

void PerfMatrix::validate() const {
  const auto k = static_cast<Eigen::Index>(labels.size());
  if (k == 0) throw UsageError("a performance matrix needs labels");
  if (f_max.rows() != k || f_max.cols() != k || std_err.rows() != k ||
      std_err.cols() != k) {
    throw UsageError("performance matrix shape does not match its labels");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw UsageError("matrix labels must be nonempty");
    if (labels[i].find_first_of(",\n\r") != std::string::npos) {
      throw UsageError("matrix label \"" + labels[i] +
                       "\" contains a separator character");
    }
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) {
        throw UsageError("matrix label \"" + labels[i] + "\" repeats");
      }
    }
  }
}

bool matrices_equal(const PerfMatrix& a, const PerfMatrix& b) {
  if (a.labels != b.labels) return false;
  if (a.f_max.rows() != b.f_max.rows() || a.f_max.cols() != b.f_max.cols()) {
    return false;
  }
  if ((a.f_max - b.f_max).cwiseAbs().maxCoeff() != 0.0) return false;
  if (a.std_err.rows() != b.std_err.rows() ||
      a.std_err.cols() != b.std_err.cols()) {
    return false;
  }
  return (a.std_err - b.std_err).cwiseAbs().maxCoeff() == 0.0;
}

std::string matrix_to_csv(const PerfMatrix& m) {
  m.validate();
  std::ostringstream out;
  emit_block(out, "f_max", m.labels, m.f_max);
  out << '\n';
  emit_block(out, "std_err", m.labels, m.std_err);
  return out.str();
}

PerfMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  PerfMatrix m;
  std::size_t pos = 0;
  std::vector<std::string> labels_f, labels_e;
  m.f_max = parse_block(lines, pos, "f_max", labels_f);
  m.std_err = parse_block(lines, pos, "std_err", labels_e);
  if (labels_f != labels_e) {
    throw UsageError("matrix CSV blocks disagree on labels");
  }
  if (pos != lines.size()) {
    throw UsageError("trailing content after the std_err block");
  }
  m.labels = std::move(labels_f);
  m.validate();
  return m;
}

std::string matrix_to_json(const PerfMatrix& m) {
  m.validate();
  json out;
  out["format"] = "qxp.matrix";
  out["version"] = 1;
  out["labels"] = m.labels;
  json f = json::array(), e = json::array();
  for (Eigen::Index r = 0; r < m.f_max.rows(); ++r) {
    json fr = json::array(), er = json::array();
    for (Eigen::Index c = 0; c < m.f_max.cols(); ++c) {
      fr.push_back(m.f_max(r, c));
      er.push_back(m.std_err(r, c));
    }
    f.push_back(fr);
    e.push_back(er);
  }
  out["f_max"] = f;
  out["std_err"] = e;
  return out.dump(2) + "\n";
}

PerfMatrix matrix_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("matrix JSON parse failure: ") + e.what());
  }
  try {
    if (in.value("format", "") != "qxp.matrix") {
      throw UsageError("not a matrix file (missing format marker)");
    }
    if (in.value("version", -1) != 1) {
      throw UsageError("unsupported matrix version");
    }
    PerfMatrix m;
    m.labels = in.at("labels").get<std::vector<std::string>>();
    const auto k = static_cast<Eigen::Index>(m.labels.size());
    m.f_max.resize(k, k);
    m.std_err.resize(k, k);
    const json& f = in.at("f_max");
    const json& e = in.at("std_err");
    if (static_cast<Eigen::Index>(f.size()) != k ||
        static_cast<Eigen::Index>(e.size()) != k) {
      throw UsageError("matrix JSON row count does not match labels");
    }
    for (Eigen::Index r = 0; r < k; ++r) {
      const json& fr = f.at(static_cast<std::size_t>(r));
      const json& er = e.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(fr.size()) != k ||
          static_cast<Eigen::Index>(er.size()) != k) {
        throw UsageError("matrix JSON column count does not match labels");
      }
      for (Eigen::Index c = 0; c < k; ++c) {
        m.f_max(r, c) = fr.at(static_cast<std::size_t>(c)).get<double>();
        m.std_err(r, c) = er.at(static_cast<std::size_t>(c)).get<double>();
      }
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw UsageError(std::string("matrix JSON field failure: ") + e.what());
  }
}

namespace {

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open \"" + path + "\" for writing");
  out << content;
  if (!out) throw UsageError("short write to \"" + path + "\"");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

void save_matrix_csv(const PerfMatrix& m, const std::string& path) {
  write_text_file(path, matrix_to_csv(m));
}

void save_matrix_json(const PerfMatrix& m, const std::string& path) {
  write_text_file(path, matrix_to_json(m));
}

PerfMatrix load_matrix_csv(const std::string& path) {
  return matrix_from_csv(read_text_file(path));
}

PerfMatrix load_matrix_json(const std::string& path) {
  return matrix_from_json(read_text_file(path));
}

}  // namespace qxp
