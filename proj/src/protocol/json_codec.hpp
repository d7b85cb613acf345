#pragma once

// Shared JSON encoding helpers used by the dataset file format and the wire
// messages, so a histogram or unitary draw serializes identically in both.
// Internal to the library; not installed.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qxp/core/types.hpp"
#include "qxp/protocol/design.hpp"

namespace qxp::detail {

std::string bits_text(std::uint64_t value, int width);
std::uint64_t bits_value(const std::string& text, int width);

nlohmann::json matrix2_to_json(const Matrix& m);
Matrix matrix2_from_json(const nlohmann::json& j);

// Histograms serialize as objects keyed by fixed-width bitstrings, nonzero
// entries only; exact-probability data keeps doubles, counted data rounds
// to integers.
nlohmann::json histogram_to_json(const Eigen::VectorXd& hist, int width,
                                 bool exact);
Eigen::VectorXd histogram_from_json(const nlohmann::json& j, int width);

// Unitary draws serialize as element-index arrays u1/u2, or as explicit
// factor matrices u1_mats/u2_mats when the design has no index table.
void draw_to_json(const UnitaryDraw& draw, nlohmann::json& out);
UnitaryDraw draw_from_json(const nlohmann::json& in);

}  // namespace qxp::detail
