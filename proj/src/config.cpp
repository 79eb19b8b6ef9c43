#include "qso/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qso {

namespace {

using nlohmann::json;

// Schema (all matrices are arrays of rows; an entry is a number or [re, im]):
//   name         string, optional
//   hamiltonian  {"matrix": M} | {"pauli": [c0, c1, c2, c3]}
//   observables  [ {"matrix": M} | {"projector": k}, ... ]
//   gain         "ct" | {"matrix": K}            (default "ct")
//   rho0, rho_hat0  M
//   simulation   {"t_final", "dt", "record_every", "use_exact_truth"}   (all optional)
//   output       {"csv": path}                                        (optional)

const char* const kTwoDim = R"({
  "name": "two-dim",
  "hamiltonian": {"pauli": [1.5, 1.0, 0.0, 0.5]},
  "observables": [{"projector": 0}, {"projector": 1}],
  "gain": "ct",
  "rho0": [[0.25, 0], [0, 0.75]],
  "rho_hat0": [[0, 0], [0, 1]],
  "simulation": {"t_final": 60, "dt": 0.001, "record_every": 10, "use_exact_truth": true}
})";

const char* const kLaserAtom = R"({
  "name": "laser-atom",
  "hamiltonian": {"matrix": [[-0.5, 3], [3, 0.5]]},
  "observables": [{"projector": 0}, {"projector": 1}],
  "gain": "ct",
  "rho0": [[0.25, 0], [0, 0.75]],
  "rho_hat0": [[0, 0], [0, 1]],
  "simulation": {"t_final": 60, "dt": 0.001, "record_every": 10, "use_exact_truth": true}
})";

[[noreturn]] void fail(const std::string& source, const std::string& pointer, const std::string& msg) {
  throw ConfigError(source + ": field '" + (pointer.empty() ? "/" : pointer) + "': " + msg);
}

struct Reader {
  const std::string& source;

  const json& field(const json& obj, const std::string& ptr, const char* key) const {
    if (!obj.is_object()) fail(source, ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(source, ptr + "/" + key, "missing required field");
    return *it;
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(source, ptr, "expected a number");
    return j.get<double>();
  }

  Complex entry(const json& j, const std::string& ptr) const {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) {
      return {number(j[0], ptr + "/0"), number(j[1], ptr + "/1")};
    }
    fail(source, ptr, "expected a number or a [re, im] pair");
  }

  ComplexMatrix matrix(const json& j, const std::string& ptr) const {
    if (!j.is_array() || j.empty()) fail(source, ptr, "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    ComplexMatrix out;
    for (Eigen::Index r = 0; r < rows; ++r) {
      const std::string row_ptr = ptr + "/" + std::to_string(r);
      const json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.empty()) fail(source, row_ptr, "expected a non-empty row array");
      if (cols < 0) {
        cols = static_cast<Eigen::Index>(row.size());
        out.resize(rows, cols);
      } else if (static_cast<Eigen::Index>(row.size()) != cols) {
        fail(source, row_ptr, "row length " + std::to_string(row.size()) + " differs from " +
                                  std::to_string(cols));
      }
      for (Eigen::Index c = 0; c < cols; ++c) {
        out(r, c) = entry(row[static_cast<std::size_t>(c)], row_ptr + "/" + std::to_string(c));
      }
    }
    return out;
  }

  ComplexMatrix hamiltonian(const json& j, const std::string& ptr) const {
    if (j.is_array()) return matrix(j, ptr);
    if (!j.is_object()) fail(source, ptr, "expected {\"matrix\": ...} or {\"pauli\": [...]}");
    if (j.contains("matrix")) return matrix(j["matrix"], ptr + "/matrix");
    if (j.contains("pauli")) {
      const json& p = j["pauli"];
      if (!p.is_array() || p.size() != 4) fail(source, ptr + "/pauli", "expected four coefficients");
      return pauli_combination(number(p[0], ptr + "/pauli/0"), number(p[1], ptr + "/pauli/1"),
                               number(p[2], ptr + "/pauli/2"), number(p[3], ptr + "/pauli/3"));
    }
    fail(source, ptr, "expected a \"matrix\" or \"pauli\" entry");
  }

  ComplexMatrix observable(const json& j, const std::string& ptr, Eigen::Index d) const {
    if (j.is_array()) return matrix(j, ptr);
    if (j.is_object() && j.contains("matrix")) return matrix(j["matrix"], ptr + "/matrix");
    if (j.is_object() && j.contains("projector")) {
      const json& k = j["projector"];
      if (!k.is_number_integer()) fail(source, ptr + "/projector", "expected an integer basis index");
      const auto idx = k.get<long long>();
      if (idx < 0 || idx >= d) {
        fail(source, ptr + "/projector", "basis index " + std::to_string(idx) + " outside 0.." +
                                             std::to_string(d - 1));
      }
      return basis_projector(idx, d);
    }
    fail(source, ptr, "expected {\"matrix\": ...} or {\"projector\": k}");
  }

  DensityOperator density(const json& j, const std::string& ptr, Eigen::Index d) const {
    const ComplexMatrix m = matrix(j.is_object() && j.contains("matrix") ? j["matrix"] : j, ptr);
    if (m.rows() != d || m.cols() != d) {
      fail(source, ptr, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    try {
      return DensityOperator(m);
    } catch (const Error& e) {
      fail(source, ptr, e.what());
    }
  }
};

std::string syntax_error(const std::string& text, const std::string& source,
                         const json::parse_error& e) {
  std::size_t line = 1, column = 1;
  const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return source + ": line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": JSON syntax error";
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(syntax_error(text, source, e));
  }
  const Reader rd{source};
  if (!root.is_object()) fail(source, "", "top level must be an object");

  const std::string name =
      root.contains("name") && root["name"].is_string() ? root["name"].get<std::string>() : source;

  const ComplexMatrix h = rd.hamiltonian(rd.field(root, "", "hamiltonian"), "/hamiltonian");
  const Eigen::Index d = h.rows();
  if (h.cols() != d) fail(source, "/hamiltonian", "Hamiltonian must be square");
  if (!is_hermitian(h)) fail(source, "/hamiltonian", "Hamiltonian is not Hermitian");

  const json& obs_json = rd.field(root, "", "observables");
  if (!obs_json.is_array() || obs_json.empty()) {
    fail(source, "/observables", "expected a non-empty array");
  }
  std::vector<ComplexMatrix> observables;
  for (std::size_t k = 0; k < obs_json.size(); ++k) {
    const std::string ptr = "/observables/" + std::to_string(k);
    ComplexMatrix obs = rd.observable(obs_json[k], ptr, d);
    if (obs.rows() != d || obs.cols() != d) {
      fail(source, ptr, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    if (!is_hermitian(obs)) fail(source, ptr, "observable is not Hermitian");
    observables.push_back(std::move(obs));
  }

  std::variant<AdjointGain, ComplexMatrix> gain = AdjointGain{};
  if (root.contains("gain")) {
    const json& g = root["gain"];
    if (g.is_string()) {
      if (g.get<std::string>() != "ct") fail(source, "/gain", "the only named gain is \"ct\"");
    } else if (g.is_object() && g.contains("matrix")) {
      ComplexMatrix k = rd.matrix(g["matrix"], "/gain/matrix");
      const auto m = static_cast<Eigen::Index>(observables.size());
      if (k.rows() != d * d || k.cols() != m) {
        fail(source, "/gain/matrix", "expected a " + std::to_string(d * d) + "x" +
                                         std::to_string(m) + " matrix");
      }
      gain = std::move(k);
    } else {
      fail(source, "/gain", "expected \"ct\" or {\"matrix\": ...}");
    }
  }

  DensityOperator rho0 = rd.density(rd.field(root, "", "rho0"), "/rho0", d);
  DensityOperator rho_hat0 = rd.density(rd.field(root, "", "rho_hat0"), "/rho_hat0", d);

  SimConfig sim;
  if (root.contains("simulation")) {
    const json& s = root["simulation"];
    if (!s.is_object()) fail(source, "/simulation", "expected an object");
    if (s.contains("t_final")) sim.t_final = rd.number(s["t_final"], "/simulation/t_final");
    if (s.contains("dt")) sim.dt = rd.number(s["dt"], "/simulation/dt");
    if (s.contains("record_every")) {
      if (!s["record_every"].is_number_integer()) {
        fail(source, "/simulation/record_every", "expected an integer");
      }
      sim.record_every = s["record_every"].get<int>();
    }
    if (s.contains("use_exact_truth")) {
      if (!s["use_exact_truth"].is_boolean()) fail(source, "/simulation/use_exact_truth", "expected a boolean");
      sim.use_exact_truth = s["use_exact_truth"].get<bool>();
    }
    try {
      sim.validate();
    } catch (const Error& e) {
      fail(source, "/simulation", e.what());
    }
  }

  std::optional<std::string> csv;
  if (root.contains("output")) {
    const json& o = root["output"];
    if (!o.is_object()) fail(source, "/output", "expected an object");
    if (o.contains("csv")) {
      if (!o["csv"].is_string()) fail(source, "/output/csv", "expected a string path");
      csv = o["csv"].get<std::string>();
    }
  }

  return ExperimentConfig{name,
                          QuantumSystem(h, std::move(observables)),
                          std::move(gain),
                          std::move(rho0),
                          std::move(rho_hat0),
                          sim,
                          std::move(csv)};
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

bool is_builtin(const std::string& name) { return name == "two-dim" || name == "laser-atom"; }

std::string builtin_json(const std::string& name) {
  if (name == "two-dim") return kTwoDim;
  if (name == "laser-atom") return kLaserAtom;
  throw ConfigError("unknown built-in example '" + name + "' (expected two-dim or laser-atom)");
}

ExperimentConfig builtin_config(const std::string& name) {
  return parse_config(builtin_json(name), name);
}

ExperimentConfig resolve_config(const std::string& name_or_path) {
  return is_builtin(name_or_path) ? builtin_config(name_or_path) : load_config(name_or_path);
}

}  // namespace qso
