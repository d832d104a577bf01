#include "cvbell/io.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace cvbell::io {
namespace {

double require_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw InputError(fmt::format("'{}' must be a number", what));
  return j.get<double>();
}

nlohmann::json matrix_json(const Eigen::Matrix4d& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 4; ++c) row.push_back(number(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

CovarianceMatrix parse_state(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.size() != 1) {
    throw InputError("state document must be an object with exactly one key: 'matrix' or 'standard_form'");
  }
  if (doc.contains("matrix")) {
    const auto& rows = doc["matrix"];
    if (!rows.is_array() || rows.size() != 4) throw InputError("'matrix' must have 4 rows");
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != 4) {
        throw InputError(fmt::format("'matrix' row {} must have 4 entries", r));
      }
      for (int c = 0; c < 4; ++c) m(r, c) = require_number(row[static_cast<std::size_t>(c)], "matrix entry");
    }
    return CovarianceMatrix(m);
  }
  if (doc.contains("standard_form")) {
    const auto& sf = doc["standard_form"];
    if (!sf.is_object()) throw InputError("'standard_form' must be an object");
    for (const char* key : {"n", "m", "c1", "c2"}) {
      if (!sf.contains(key)) throw InputError(fmt::format("'standard_form' is missing '{}'", key));
    }
    if (sf.size() != 4) throw InputError("'standard_form' takes exactly the keys n, m, c1, c2");
    return CovarianceMatrix::from_standard_form(
        StandardForm{require_number(sf["n"], "n"), require_number(sf["m"], "m"),
                     require_number(sf["c1"], "c1"), require_number(sf["c2"], "c2")});
  }
  throw InputError("state document must contain 'matrix' or 'standard_form'");
}

CovarianceMatrix parse_state_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(fmt::format("invalid JSON: {}", e.what()));
  }
  return parse_state(doc);
}

std::string format_number(double x) { return fmt::format("{:.12g}", x); }

nlohmann::json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

nlohmann::json to_json(const CriterionReport& r) {
  return {{"name", to_string(r.name)},
          {"witness", number(r.witness)},
          {"threshold", number(r.threshold)},
          {"verdict", to_string(r.verdict)}};
}

nlohmann::json to_json(const StandardForm& sf) {
  return {{"n", number(sf.n)}, {"m", number(sf.m)}, {"c1", number(sf.c1)}, {"c2", number(sf.c2)}};
}

nlohmann::json to_json(const SymplecticInvariants& inv) {
  return {{"I1", number(inv.i1)},       {"I2", number(inv.i2)},
          {"I3", number(inv.i3)},       {"I4", number(inv.i4)},
          {"delta", number(inv.delta)}, {"d_minus", number(inv.d_minus)},
          {"d_plus", number(inv.d_plus)}};
}

nlohmann::json to_json(const PhysicalityReport& p) {
  return {{"physical", p.physical},
          {"positive_definite", p.positive_definite},
          {"d_minus", number(p.d_minus)},
          {"uncertainty_lhs", number(p.uncertainty_lhs)},
          {"uncertainty_rhs", number(p.uncertainty_rhs)},
          {"uncertainty_inequality_holds", p.uncertainty_inequality_holds}};
}

nlohmann::json to_json(const RegionVerdict& v) {
  return {{"mu_s", number(v.mu_s)},
          {"C_ab", number(v.correlation)},
          {"region", to_string(v.region)},
          {"boundaries",
           {{"mu_D", number(v.boundaries.separable)},
            {"mu_B", number(v.boundaries.bell)},
            {"mu_P", number(v.boundaries.physical)}}}};
}

nlohmann::json to_json(const Classification& c) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : c.reports) reports.push_back(to_json(r));
  return {{"reports", reports}, {"hierarchy_consistent", c.hierarchy_consistent}};
}

nlohmann::json to_json(const StateAssessment& a) {
  return {{"standard_form", a.standard_form ? to_json(*a.standard_form) : nlohmann::json()},
          {"physical", a.physical},
          {"criteria", a.criteria ? to_json(*a.criteria) : nlohmann::json()},
          {"bell_max", number(a.bell_max)},
          {"bell_intensity", number(a.bell_intensity)}};
}

nlohmann::json to_json(const EndToEndReport& r) {
  return {{"samples_per_setting", r.sample_count},
          {"seed", r.seed},
          {"truth", to_json(r.truth)},
          {"estimate", to_json(r.estimate)},
          {"estimated_matrix", matrix_json(r.covariance.entries)},
          {"standard_errors", matrix_json(r.covariance.standard_errors)},
          {"estimate_physical", r.covariance.physical},
          {"bell_max_std_error", number(r.bell_max_std_error)},
          {"bootstrap_replicates", r.bootstrap_replicates},
          {"verdicts_agree", r.verdicts_agree}};
}

void write_region_csv(std::ostream& out, std::span<const RegionGridPoint> grid) {
  out << "mu_s,C_ab,B_max,region\n";
  for (const auto& p : grid) {
    fmt::print(out, "{},{},{},{}\n", format_number(p.verdict.mu_s),
               format_number(p.verdict.correlation), format_number(p.bell_max),
               to_string(p.verdict.region));
  }
}

void write_sweep_csv(std::ostream& out, std::span<const ChannelSweepRow> rows,
                     bool crossing_column) {
  out << "T,n_T,c_T,mu_s,C_ab,phs,duan,reid,bell_max,region";
  out << (crossing_column ? ",crossing\n" : "\n");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{}", format_number(r.transmittivity),
               format_number(r.n), format_number(r.c), format_number(r.mu_s),
               format_number(r.correlation), format_number(r.phs_witness),
               format_number(r.duan_witness), format_number(r.reid_witness),
               format_number(r.bell_max), to_string(r.region));
    if (crossing_column) {
      const bool crossed =
          k > 0 && (rows[k - 1].bell_max > kLocalBound) != (r.bell_max > kLocalBound);
      out << (crossed ? ",1" : ",0");
    }
    out << '\n';
  }
}

}  // namespace cvbell::io
