#pragma once

// JSON and CSV surfaces shared by the CLI.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvbell/bell.hpp"
#include "cvbell/channel.hpp"
#include "cvbell/criteria.hpp"
#include "cvbell/error.hpp"
#include "cvbell/gaussian_state.hpp"
#include "cvbell/homodyne.hpp"

namespace cvbell::io {

// Thrown for documents that are not valid state descriptions.
class InputError : public Error {
 public:
  using Error::Error;
};

// Accepts {"matrix": [[4 x 4]]} or {"standard_form": {"n", "m", "c1", "c2"}}
// with exactly one top-level key. Symmetry of "matrix" is enforced by
// CovarianceMatrix (MalformedMatrix).
[[nodiscard]] CovarianceMatrix parse_state(const nlohmann::json& doc);
[[nodiscard]] CovarianceMatrix parse_state_text(const std::string& text);

// 12 significant digits, shortest round-trip form.
[[nodiscard]] std::string format_number(double x);
// JSON number rounded to 12 significant digits; null when not finite.
[[nodiscard]] nlohmann::json number(double x);

[[nodiscard]] nlohmann::json to_json(const CriterionReport& r);
[[nodiscard]] nlohmann::json to_json(const StandardForm& sf);
[[nodiscard]] nlohmann::json to_json(const SymplecticInvariants& inv);
[[nodiscard]] nlohmann::json to_json(const PhysicalityReport& p);
[[nodiscard]] nlohmann::json to_json(const RegionVerdict& v);
[[nodiscard]] nlohmann::json to_json(const Classification& c);
[[nodiscard]] nlohmann::json to_json(const StateAssessment& a);
[[nodiscard]] nlohmann::json to_json(const EndToEndReport& r);

// mu_s,C_ab,B_max,region
void write_region_csv(std::ostream& out, std::span<const RegionGridPoint> grid);

// T,n_T,c_T,mu_s,C_ab,phs,duan,reid,bell_max,region[,crossing]
void write_sweep_csv(std::ostream& out, std::span<const ChannelSweepRow> rows,
                     bool crossing_column = false);

}  // namespace cvbell::io
