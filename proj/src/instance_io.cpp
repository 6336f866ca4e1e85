#include "corona/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace corona {

namespace {

using nlohmann::ordered_json;

ordered_json terms_to_json(const MatPoly& P) {
  ordered_json out = ordered_json::array();
  for (const auto& [alpha, c] : P.terms()) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index j = 0; j < c.cols(); ++j) row.push_back({c(i, j).real(), c(i, j).imag()});
      rows.push_back(std::move(row));
    }
    out.push_back({{"index", alpha.exponents()}, {"coeff", std::move(rows)}});
  }
  return out;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InstanceParseError("instance field '" + field + "': " + what);
}

const ordered_json& member(const ordered_json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(key, "missing");
  return *it;
}

long integer(const ordered_json& obj, const std::string& key) {
  const ordered_json& v = member(obj, key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<long>();
}

double real_number(const ordered_json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

MatPoly terms_from_json(const ordered_json& arr, const std::string& field, Eigen::Index rows,
                        Eigen::Index cols, std::size_t nvars) {
  if (!arr.is_array()) fail(field, "expected a list of terms");
  MatPoly::Terms terms;
  for (std::size_t t = 0; t < arr.size(); ++t) {
    const std::string here = field + "[" + std::to_string(t) + "]";
    const ordered_json& term = arr[t];
    if (!term.is_object()) fail(here, "expected an object");
    const ordered_json& idx = member(term, "index");
    if (!idx.is_array() || idx.size() != nvars) fail(here + ".index", "expected " + std::to_string(nvars) + " integers");
    std::vector<int> e;
    for (const auto& k : idx) {
      if (!k.is_number_integer() || k.get<long>() < 0) fail(here + ".index", "expected non-negative integers");
      e.push_back(k.get<int>());
    }
    const ordered_json& coeff = member(term, "coeff");
    if (!coeff.is_array() || static_cast<Eigen::Index>(coeff.size()) != rows) {
      fail(here + ".coeff", "expected " + std::to_string(rows) + " rows");
    }
    CMat c(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const ordered_json& row = coeff[i];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        fail(here + ".coeff", "row " + std::to_string(i) + " needs " + std::to_string(cols) + " entries");
      }
      for (Eigen::Index j = 0; j < cols; ++j) {
        const ordered_json& pair = row[j];
        if (!pair.is_array() || pair.size() != 2) fail(here + ".coeff", "entries are [re, im] pairs");
        c(i, j) = cplx(real_number(pair[0], here + ".coeff"), real_number(pair[1], here + ".coeff"));
      }
    }
    if (!terms.emplace(MultiIndex(std::move(e)), c).second) fail(here + ".index", "duplicate multi-index");
  }
  return MatPoly(rows, cols, nvars, std::move(terms));
}

}  // namespace

std::string instance_to_json(const CoronaInstance& inst) {
  ordered_json j;
  j["schema_version"] = kInstanceSchemaVersion;
  j["name"] = inst.name;
  j["nvars"] = inst.nvars();
  j["rows"] = inst.r();
  j["cols"] = inst.m();
  j["degree"] = inst.F.max_degree();
  j["delta_sq"] = inst.delta_sq;
  if (std::isinf(inst.p)) {
    j["p"] = "inf";
  } else {
    j["p"] = inst.p;
  }
  j["F"] = terms_to_json(inst.F);
  j["g"] = terms_to_json(inst.g);
  return j.dump(2) + "\n";
}

CoronaInstance instance_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceParseError(std::string("instance parse error: ") + e.what());
  }
  if (!j.is_object()) throw InstanceParseError("instance: top level must be an object");
  if (integer(j, "schema_version") != kInstanceSchemaVersion) fail("schema_version", "unsupported version");
  CoronaInstance inst;
  const ordered_json& name = member(j, "name");
  if (!name.is_string()) fail("name", "expected a string");
  inst.name = name.get<std::string>();
  const long nvars = integer(j, "nvars"), rows = integer(j, "rows"), cols = integer(j, "cols");
  if (nvars < 1) fail("nvars", "must be positive");
  if (rows < 1 || cols < 1) fail(rows < 1 ? "rows" : "cols", "must be positive");
  inst.delta_sq = real_number(member(j, "delta_sq"), "delta_sq");
  const ordered_json& p = member(j, "p");
  if (p.is_string()) {
    if (p.get<std::string>() != "inf") fail("p", "expected a number or \"inf\"");
    inst.p = kInfP;
  } else {
    inst.p = real_number(p, "p");
  }
  inst.F = terms_from_json(member(j, "F"), "F", rows, cols, static_cast<std::size_t>(nvars));
  inst.g = terms_from_json(member(j, "g"), "g", rows, 1, static_cast<std::size_t>(nvars));
  if (integer(j, "degree") != inst.F.max_degree()) fail("degree", "does not match the terms of F");
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw InstanceParseError(e.what());
  }
  return inst;
}

void write_instance(const std::filesystem::path& path, const CoronaInstance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(inst);
}

CoronaInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return instance_from_json(ss.str());
  } catch (const InstanceParseError& e) {
    throw InstanceParseError(path.string() + ": " + e.what());
  }
}

}  // namespace corona
