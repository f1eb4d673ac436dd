#include "qhess/config.hpp"

#include <array>
#include <stdexcept>

#include "qhess/io.hpp"

namespace qhess {

namespace {

struct SchemaEntry {
  const char* key;
  const char* default_value;
};

// The full key set. Section order and in-section order are the
// serialization order.
constexpr std::array kSchema = {
    SchemaEntry{"experiment.master_seed", "42"},
    SchemaEntry{"experiment.out_dir", "out"},

    SchemaEntry{"model.kind", "layered"},  // toy | layered | reuploading
    SchemaEntry{"model.num_qubits", "4"},
    SchemaEntry{"model.num_layers", "4"},

    SchemaEntry{"loss.kind", "global"},  // global | local
    SchemaEntry{"loss.readout_qubit", "0"},

    SchemaEntry{"target.kind", "uniform"},  // zero | uniform | ghz

    SchemaEntry{"optimizer.kind", "gd"},  // gd | hessian_lr | qng
    SchemaEntry{"optimizer.eta", "0.5"},
    SchemaEntry{"optimizer.eta_cap", "2"},
    SchemaEntry{"optimizer.recompute_every", "1"},
    SchemaEntry{"optimizer.lambda_reg", "1e-06"},
    SchemaEntry{"optimizer.epochs", "500"},
    SchemaEntry{"optimizer.stop_loss", "0"},       // 0 disables early stopping
    SchemaEntry{"optimizer.snapshot_every", "0"},  // 0 = command-specific default

    SchemaEntry{"dataset.n_points", "400"},
    SchemaEntry{"dataset.train_fraction", "0.5"},

    SchemaEntry{"grid.resolution", "41"},

    SchemaEntry{"landscape.free_i", "0"},
    SchemaEntry{"landscape.free_j", "1"},
    SchemaEntry{"landscape.fixed_value", "0"},
    SchemaEntry{"landscape.theta_min", "-3.1415926535897931"},
    SchemaEntry{"landscape.theta_max", "3.1415926535897931"},
    SchemaEntry{"landscape.resolution", "61"},
    SchemaEntry{"landscape.marked_points", "0,0"},

    SchemaEntry{"perturb.eps_max", "0.5"},
    SchemaEntry{"perturb.eps_count", "21"},
    SchemaEntry{"perturb.params_file", ""},

    SchemaEntry{"compare.n_seeds", "5"},
    SchemaEntry{"compare.epochs", "150"},
    SchemaEntry{"compare.gd_eta", "0.5"},
    SchemaEntry{"compare.qng_eta", "0.5"},
    SchemaEntry{"compare.qng_lambda_reg", "1e-06"},
    SchemaEntry{"compare.hlr_eta_cap", "2"},
    SchemaEntry{"compare.hlr_recompute_every", "1"},
    SchemaEntry{"compare.target_loss", "0.5"},
    SchemaEntry{"compare.stop_loss", "0"},
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::defaults() {
  Config c;
  for (const SchemaEntry& e : kSchema) c.entries_.push_back({e.key, e.default_value});
  return c;
}

Config Config::load(const std::filesystem::path& file, const std::vector<std::string>& overrides) {
  Config c = defaults();
  if (!file.empty()) c.parse(read_file(file));
  for (const std::string& o : overrides) c.set(o);
  return c;
}

Config::Entry* Config::find(const std::string& key) {
  for (Entry& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

const Config::Entry* Config::find(const std::string& key) const {
  for (const Entry& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

void Config::parse(const std::string& text) {
  std::string section;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string raw =
        text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": key outside any [section]");
    set(section + "." + key, value);
  }
}

void Config::set(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must look like section.key=value: " + assignment);
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
  Entry* e = find(key);
  if (!e) throw std::invalid_argument("unknown config key: " + key);
  e->value = value;
}

std::string Config::serialize() const {
  std::string out;
  std::string section;
  for (const Entry& e : entries_) {
    const std::string sec = e.key.substr(0, e.key.find('.'));
    if (sec != section) {
      if (!out.empty()) out += '\n';
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += e.key.substr(sec.size() + 1) + " = " + e.value + "\n";
  }
  return out;
}

std::string Config::comment_header(const std::string& command) const {
  std::string out = "# qhess " + command + "\n";
  for (const Entry& e : entries_) out += "# " + e.key + " = " + e.value + "\n";
  return out;
}

const std::string& Config::get_string(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw std::invalid_argument("unknown config key: " + key);
  return e->value;
}

std::int64_t Config::get_int(const std::string& key) const {
  const std::string& v = get_string(key);
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": not an integer: '" + v + "'");
  }
}

std::uint64_t Config::get_u64(const std::string& key) const {
  const std::string& v = get_string(key);
  try {
    std::size_t used = 0;
    const unsigned long long parsed = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": not an unsigned integer: '" + v + "'");
  }
}

double Config::get_double(const std::string& key) const {
  const std::string& v = get_string(key);
  try {
    std::size_t used = 0;
    const double parsed = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": not a number: '" + v + "'");
  }
}

}  // namespace qhess
