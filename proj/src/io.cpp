#include "syndromest/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "syndromest/errors.hpp"

namespace syndromest {

using nlohmann::json;

StabilizerCode code_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid code JSON: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("generators"))
    throw ConfigError("code JSON needs fields 'n' and 'generators'");
  const std::size_t n = j.at("n").get<std::size_t>();
  std::vector<PauliString> gens;
  for (const auto& g : j.at("generators")) gens.push_back(PauliString::from_string(g.get<std::string>()));
  std::vector<std::pair<PauliString, PauliString>> logicals;
  if (j.contains("logicals")) {
    for (const auto& pair : j.at("logicals")) {
      if (!pair.is_array() || pair.size() != 2)
        throw ConfigError("each logical entry must be a pair [X_L, Z_L]");
      logicals.emplace_back(PauliString::from_string(pair[0].get<std::string>()),
                            PauliString::from_string(pair[1].get<std::string>()));
    }
  }
  try {
    return StabilizerCode(n, std::move(gens), std::move(logicals));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid code definition: ") + e.what());
  }
}

std::string code_to_json(const StabilizerCode& code) {
  json j;
  j["n"] = code.num_qubits();
  j["generators"] = json::array();
  for (const auto& g : code.generators()) j["generators"].push_back(g.str());
  if (code.has_logicals()) {
    j["logicals"] = json::array();
    for (const auto& [x, z] : code.logicals()) j["logicals"].push_back({x.str(), z.str()});
  }
  return j.dump(2);
}

StabilizerCode code_from_name(const std::string& name) {
  if (name == "five_qubit") return five_qubit_code();
  if (name == "steane") return steane_code();
  if (name.rfind("repetition:", 0) == 0) {
    const std::string arg = name.substr(11);
    std::size_t n = 0;
    try {
      n = std::stoul(arg);
    } catch (...) {
      throw ConfigError("repetition code size must be an integer: " + arg);
    }
    return repetition_code(n);
  }
  if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
    return code_from_json(read_file(name));
  throw ConfigError("unknown code '" + name + "' (expected five_qubit, steane, repetition:<n>, or a .json file)");
}

NoiseSpec noise_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid noise JSON: ") + e.what());
  }
  NoiseSpec spec;
  if (j.contains("depolarizing")) {
    spec.p = j.at("depolarizing").get<double>();
    return spec;
  }
  if (j.contains("phenomenological")) {
    const auto& ph = j.at("phenomenological");
    spec.p = ph.at("p").get<double>();
    spec.p_m = ph.at("p_m").get<double>();
    return spec;
  }
  if (j.contains("sets")) {
    const std::size_t n = j.at("n").get<std::size_t>();
    const std::size_t l = j.value("l", std::size_t{0});
    std::vector<ErrorSet> sets;
    std::vector<std::vector<double>> rates;
    for (const auto& js : j.at("sets")) {
      ErrorSet set;
      for (const auto& je : js.at("elements")) {
        PauliString data = je.contains("data")
                               ? PauliString::from_string(je.at("data").get<std::string>())
                               : PauliString(n);
        Syndrome flips = je.contains("flips")
                             ? Syndrome::from_string(je.at("flips").get<std::string>())
                             : Syndrome(l);
        set.elements.emplace_back(std::move(data), std::move(flips));
      }
      sets.push_back(std::move(set));
      rates.push_back(js.at("rates").get<std::vector<double>>());
    }
    try {
      spec.explicit_model.emplace(n, l, std::move(sets), std::move(rates));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid noise model: ") + e.what());
    }
    return spec;
  }
  throw ConfigError("noise JSON needs 'depolarizing', 'phenomenological', or 'sets'");
}

std::string dataset_to_json(const DatasetFile& ds) {
  json j;
  j["schema"] = "syndromest.dataset.v1";
  j["code"] = ds.code;
  j["levels"] = ds.levels;
  j["p"] = ds.p;
  if (ds.p_m) j["p_m"] = *ds.p_m;
  j["seed"] = ds.seed;
  j["syndromes"] = json::array();
  for (const Syndrome& s : ds.syndromes) j["syndromes"].push_back(s.str());
  return j.dump();
}

DatasetFile dataset_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid dataset JSON: ") + e.what());
  }
  DatasetFile ds;
  ds.code = j.at("code").get<std::string>();
  ds.levels = j.at("levels").get<int>();
  ds.p = j.at("p").get<double>();
  if (j.contains("p_m")) ds.p_m = j.at("p_m").get<double>();
  ds.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& s : j.at("syndromes"))
    ds.syndromes.push_back(Syndrome::from_string(s.get<std::string>()));
  return ds;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

}  // namespace syndromest
