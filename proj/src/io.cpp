#include "rmopt/io.hpp"

#include <charconv>
#include <fstream>
#include <set>

namespace rmopt::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw FormatError("config: bad value for " + key + ": '" + text + "'");
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw FormatError("config: bad boolean for " + key + ": '" + text + "'");
}

quantum::Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("complex numbers are written as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T required(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key: ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("bad value for key: ") + key);
  }
}

}  // namespace

RmConfig parse_config(std::istream& in, RmConfig c) {
  std::string line;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("config: expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw FormatError("config: duplicate key " + key);

    if (key == "n_params") c.n_params = parse_number<std::size_t>(key, value);
    else if (key == "n_pop") c.n_pop = parse_number<std::size_t>(key, value);
    else if (key == "n_des") c.n_des = parse_number<std::size_t>(key, value);
    else if (key == "n_maxmut") c.n_maxmut = parse_number<std::size_t>(key, value);
    else if (key == "p_min") c.p_min = parse_number<double>(key, value);
    else if (key == "p_max") c.p_max = parse_number<double>(key, value);
    else if (key == "base") c.base = parse_number<double>(key, value);
    else if (key == "v_min") c.v_min = parse_number<double>(key, value);
    else if (key == "v_max") c.v_max = parse_number<double>(key, value);
    else if (key == "include_parent") c.include_parent = parse_bool(key, value);
    else if (key == "n_stall") c.n_stall = parse_number<std::size_t>(key, value);
    else if (key == "eps") c.eps = parse_number<double>(key, value);
    else if (key == "max_generations") c.max_generations = parse_number<std::uint64_t>(key, value);
    else if (key == "max_evaluations") c.max_evaluations = parse_number<std::uint64_t>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else throw FormatError("config: unknown key " + key);
  }
  return c;
}

RmConfig load_config(const std::filesystem::path& path, RmConfig base) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read config " + path.string());
  return parse_config(in, base);
}

nlohmann::json config_to_json(const RmConfig& c) {
  return {{"n_params", c.n_params},
          {"n_pop", c.n_pop},
          {"n_des", c.n_des},
          {"n_maxmut", c.n_maxmut},
          {"p_min", c.p_min},
          {"p_max", c.p_max},
          {"base", c.base},
          {"v_min", c.v_min},
          {"v_max", c.v_max},
          {"include_parent", c.include_parent},
          {"n_stall", c.n_stall},
          {"eps", c.eps},
          {"max_generations", c.max_generations},
          {"max_evaluations", c.max_evaluations},
          {"seed", c.seed}};
}

nlohmann::json to_json(const quantum::PureState& psi) {
  nlohmann::json amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i)
    amps.push_back({psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()});
  return {{"n_qubits", psi.n_qubits()}, {"amplitudes", std::move(amps)}};
}

quantum::PureState pure_state_from_json(const nlohmann::json& j) {
  const auto n = required<std::size_t>(j, "n_qubits");
  const auto amps = required<nlohmann::json>(j, "amplitudes");
  if (!amps.is_array()) throw FormatError("amplitudes must be an array");
  quantum::CVector a(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) a(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
  return quantum::PureState(n, std::move(a));
}

nlohmann::json to_json(const quantum::DensityMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim_a", rho.dim_a()}, {"dim_b", rho.dim_b()}, {"rows", std::move(rows)}};
}

quantum::DensityMatrix density_matrix_from_json(const nlohmann::json& j) {
  const auto da = required<std::size_t>(j, "dim_a");
  const auto db = required<std::size_t>(j, "dim_b");
  const auto rows = required<nlohmann::json>(j, "rows");
  const std::size_t d = da * db;
  if (!rows.is_array() || rows.size() != d) throw FormatError("rows must hold dim_a*dim_b rows");
  quantum::CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!rows[i].is_array() || rows[i].size() != d)
      throw FormatError("each row must hold dim_a*dim_b entries");
    for (std::size_t k = 0; k < d; ++k) m(i, k) = complex_from_json(rows[i][k]);
  }
  return quantum::DensityMatrix(da, db, std::move(m));
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace rmopt::io
