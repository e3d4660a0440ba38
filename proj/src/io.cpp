#include "mqw/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mqw::io {

namespace {

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw ValidationError(std::string("missing field \"") + name + "\"");
  }
  return doc.at(name);
}

int int_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_number_integer()) throw ValidationError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

Complex complex_from(const Json& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw ValidationError("complex entries must be [re, im] pairs");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

Json complex_to(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

FullPotentialTable potential_table_from_json(const Json& doc) {
  const int n = int_field(doc, "n");
  if (n < 0 || n > 24) throw ValidationError("field \"n\" out of range");
  FullPotentialTable table(n);
  const Json& entries = field(doc, "entries");
  if (!entries.is_array()) throw ValidationError("field \"entries\" must be an array");
  for (const Json& e : entries) {
    const int sigma = int_field(e, "sigma");
    const int tau = int_field(e, "tau");
    const Json& value = field(e, "value");
    if (!value.is_number()) throw ValidationError("entry value must be a number");
    if (sigma < 0 || tau < 0 || !Subset{static_cast<std::uint32_t>(sigma)}.fits(n) ||
        !Subset{static_cast<std::uint32_t>(tau)}.fits(n)) {
      throw ValidationError("entry mask outside the vertex set");
    }
    table.set(Subset{static_cast<std::uint32_t>(sigma)}, Subset{static_cast<std::uint32_t>(tau)},
              value.get<double>());
  }
  table.validate();
  return table;
}

Json to_json(const FullPotentialTable& table) {
  Json entries = Json::array();
  for (const auto& [key, value] : table.entries()) {
    entries.push_back({{"sigma", key.first}, {"tau", key.second}, {"value", value}});
  }
  return {{"n", table.n()}, {"entries", entries}};
}

CoinSystem coin_system_from_json(const Json& doc) {
  const int n = int_field(doc, "n");
  const int d = int_field(doc, "d");
  if (n < 0 || d < 1) throw ValidationError("coin system needs n >= 0 and d >= 1");
  const Json& ops = field(doc, "ops");
  if (!ops.is_array() || ops.size() != static_cast<std::size_t>(n + 1)) {
    throw ValidationError("field \"ops\" must hold n+1 matrices");
  }
  std::vector<DenseMatrix> matrices;
  for (const Json& op : ops) {
    if (!op.is_array() || op.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
      throw ValidationError("each coin matrix must list d*d entries");
    }
    DenseMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) m(r, c) = complex_from(op[static_cast<std::size_t>(r * d + c)]);
    }
    matrices.push_back(std::move(m));
  }
  CoinSystem cs(n, std::move(matrices));
  require_valid(cs);
  return cs;
}

Json to_json(const CoinSystem& cs) {
  Json ops = Json::array();
  for (const auto& m : cs.ops()) {
    Json flat = Json::array();
    for (int r = 0; r < cs.d(); ++r) {
      for (int c = 0; c < cs.d(); ++c) flat.push_back(complex_to(m(r, c)));
    }
    ops.push_back(std::move(flat));
  }
  return {{"n", cs.n()}, {"d", cs.d()}, {"ops", ops}};
}

Json to_json(const SpectrumReport& report) {
  Json values = Json::array();
  for (const auto& ev : report.eigenvalues) {
    values.push_back({{"re", ev.value.real()},
                      {"im", ev.value.imag()},
                      {"arg", ev.arg()},
                      {"mult", ev.multiplicity}});
  }
  return {{"source", report.source},
          {"nu", report.nu ? Json(*report.nu) : Json(nullptr)},
          {"tolerance", report.tolerance},
          {"eigenvalues", values}};
}

Json state_to_json(const Vector& state) {
  Json out = Json::array();
  for (const Complex z : state) out.push_back(complex_to(z));
  return out;
}

Vector state_from_json(const Json& doc) {
  if (!doc.is_array()) throw ValidationError("state must be an array of [re, im] pairs");
  Vector v(static_cast<Eigen::Index>(doc.size()));
  for (std::size_t i = 0; i < doc.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(doc[i]);
  return v;
}

std::string distribution_csv(const std::vector<double>& p) {
  std::ostringstream out;
  out.precision(17);
  out << "sigma_bitmask,probability\n";
  for (std::size_t s = 0; s < p.size(); ++s) out << s << ',' << p[s] << '\n';
  return out.str();
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mqw::io
