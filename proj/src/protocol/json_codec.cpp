#include "json_codec.hpp"

namespace qxp::detail {

using nlohmann::json;

std::string bits_text(std::uint64_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint64_t bits_value(const std::string& text, int width) {
  if (static_cast<int>(text.size()) != width) {
    throw UsageError("outcome key \"" + text + "\" must have " +
                     std::to_string(width) + " bits");
  }
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw UsageError("outcome key \"" + text + "\" must be binary");
    }
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

json matrix2_to_json(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw UsageError("draw factors must be 2x2");
  }
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix2_from_json(const json& j) {
  Matrix m(2, 2);
  if (!j.is_array() || j.size() != 2) throw UsageError("bad 2x2 matrix JSON");
  for (int r = 0; r < 2; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != 2) {
      throw UsageError("bad 2x2 matrix JSON row");
    }
    for (int c = 0; c < 2; ++c) {
      const json& cell = row.at(static_cast<std::size_t>(c));
      if (!cell.is_array() || cell.size() != 2) {
        throw UsageError("bad complex entry in matrix JSON");
      }
      m(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

json histogram_to_json(const Eigen::VectorXd& hist, int width, bool exact) {
  json out = json::object();
  for (Eigen::Index i = 0; i < hist.size(); ++i) {
    if (hist(i) == 0.0) continue;
    const std::string key = bits_text(static_cast<std::uint64_t>(i), width);
    if (exact) {
      out[key] = hist(i);
    } else {
      out[key] = static_cast<std::int64_t>(std::llround(hist(i)));
    }
  }
  return out;
}

Eigen::VectorXd histogram_from_json(const json& j, int width) {
  Eigen::VectorXd hist = Eigen::VectorXd::Zero(std::ptrdiff_t{1} << width);
  if (!j.is_object()) throw UsageError("histogram JSON must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    hist(static_cast<Eigen::Index>(bits_value(it.key(), width))) =
        it.value().get<double>();
  }
  return hist;
}

void draw_to_json(const UnitaryDraw& draw, json& out) {
  if (draw.has_explicit_factors()) {
    json u1 = json::array(), u2 = json::array();
    for (const Matrix& m : draw.u1_mats) u1.push_back(matrix2_to_json(m));
    for (const Matrix& m : draw.u2_mats) u2.push_back(matrix2_to_json(m));
    out["u1_mats"] = u1;
    out["u2_mats"] = u2;
  } else {
    out["u1"] = draw.u1;
    out["u2"] = draw.u2;
  }
}

UnitaryDraw draw_from_json(const json& in) {
  UnitaryDraw draw;
  if (in.contains("u1_mats")) {
    for (const json& m : in.at("u1_mats")) {
      draw.u1_mats.push_back(matrix2_from_json(m));
    }
    for (const json& m : in.at("u2_mats")) {
      draw.u2_mats.push_back(matrix2_from_json(m));
    }
  } else {
    draw.u1 = in.at("u1").get<std::vector<int>>();
    draw.u2 = in.at("u2").get<std::vector<int>>();
  }
  return draw;
}

}  // namespace qxp::detail
