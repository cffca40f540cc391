// SPDX-License-Identifier: Apache-2.0
#include "iodir/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "iodir/error.hpp"

namespace iodir::io {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + p.string());
  }
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // no negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

namespace {

Json real_rows(const Matrix& m, bool imag) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(r));
  }
  return rows;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("malformed ") + what);
  }
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["re"] = real_rows(m, false);
  j["im"] = real_rows(m, true);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  auto re = get_as<std::vector<std::vector<double>>>(field(j, "re"), "matrix real part");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = get_as<std::vector<std::vector<double>>>(j.at("im"), "matrix imaginary part");
  const int r = static_cast<int>(re.size());
  const int c = r ? static_cast<int>(re[0].size()) : 0;
  if (!im.empty() && static_cast<int>(im.size()) != r) throw ParseError("matrix re/im shape mismatch");
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(re[i].size()) != c) throw ParseError("ragged matrix rows");
    if (!im.empty() && static_cast<int>(im[i].size()) != c) throw ParseError("matrix re/im shape mismatch");
    for (int k = 0; k < c; ++k) m(i, k) = Complex(re[i][k], im.empty() ? 0.0 : im[i][k]);
  }
  return m;
}

Json operator_to_json(const HermitianOperator& op) {
  Json j;
  j["labels"] = op.layout().labels();
  j["dims"] = op.layout().dims();
  Json m = matrix_to_json(op.matrix());
  j["re"] = std::move(m["re"]);
  j["im"] = std::move(m["im"]);
  return j;
}

HermitianOperator operator_from_json(const Json& j) {
  auto labels = get_as<std::vector<std::string>>(field(j, "labels"), "labels");
  auto dims = get_as<std::vector<int>>(field(j, "dims"), "dims");
  if (labels.size() != dims.size()) throw ParseError("labels and dims differ in length");
  std::vector<Factor> fs;
  for (std::size_t i = 0; i < labels.size(); ++i) fs.push_back({labels[i], dims[i]});
  SystemLayout l(fs);
  Matrix m = matrix_from_json(j);
  if (m.rows() != l.total_dim() || m.cols() != l.total_dim())
    throw ParseError("matrix shape does not match the layout dimension");
  return HermitianOperator(l, m);
}

Json setup_to_json(const SetupOperator& s) {
  Json j = operator_to_json(s.op());
  Json roles = Json::object();
  for (const auto& lab : s.layout().labels()) roles[lab] = role_name(s.roles().at(lab));
  j["roles"] = roles;
  return j;
}

SetupOperator setup_from_json(const Json& j) {
  HermitianOperator op = operator_from_json(j);
  const Json& r = field(j, "roles");
  if (!r.is_object()) throw ParseError("roles must be an object");
  std::map<std::string, Role> roles;
  for (const auto& [k, v] : r.items()) roles[k] = parse_role(get_as<std::string>(v, "role"));
  return SetupOperator(std::move(op), std::move(roles));
}

Json channel_to_json(const KrausMap& k) {
  Json j;
  j["in_dim"] = k.in_dim();
  j["out_dim"] = k.out_dim();
  Json ks = Json::array();
  for (const auto& m : k.kraus()) ks.push_back(matrix_to_json(m));
  j["kraus"] = ks;
  return j;
}

KrausMap channel_from_json(const Json& j) {
  const int in = get_as<int>(field(j, "in_dim"), "in_dim");
  const int out = get_as<int>(field(j, "out_dim"), "out_dim");
  const Json& ks = field(j, "kraus");
  if (!ks.is_array()) throw ParseError("kraus must be an array");
  std::vector<Matrix> kraus;
  for (const auto& k : ks) kraus.push_back(matrix_from_json(k));
  return KrausMap(in, out, kraus);
}

Json pairs_to_json(const std::vector<WeightedPair>& pairs) {
  Json a = Json::array();
  for (const auto& wp : pairs) {
    Json j;
    j["name"] = wp.pair.name;
    j["u"] = matrix_to_json(wp.pair.u);
    j["v"] = matrix_to_json(wp.pair.v);
    j["tag"] = tag_name(wp.pair.tag);
    j["weight"] = wp.weight;
    a.push_back(j);
  }
  return a;
}

std::vector<WeightedPair> pairs_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("gate-pair file must be a nonempty JSON list");
  std::vector<WeightedPair> out;
  int with_weight = 0;
  for (const auto& e : j) {
    WeightedPair wp;
    wp.pair = GatePair(get_as<std::string>(field(e, "name"), "name"), matrix_from_json(field(e, "u")),
                       matrix_from_json(field(e, "v")), parse_tag(get_as<std::string>(field(e, "tag"), "tag")));
    if (e.contains("weight")) {
      wp.weight = get_as<double>(e.at("weight"), "weight");
      ++with_weight;
    }
    out.push_back(std::move(wp));
  }
  if (with_weight == 0)
    for (auto& wp : out) wp.weight = 1.0 / static_cast<double>(out.size());
  else if (with_weight != static_cast<int>(out.size()))
    throw ParseError("either every pair or no pair carries a weight");
  return out;
}

Json witness_to_json(const Witness& w) {
  Json j = operator_to_json(w.op);
  if (w.certificate) {
    Json c;
    c["w0"] = operator_to_json(w.certificate->w0);
    c["w1"] = operator_to_json(w.certificate->w1);
    c["w2"] = operator_to_json(w.certificate->w2);
    c["w3"] = operator_to_json(w.certificate->w3);
    j["certificate"] = c;
  }
  return j;
}

Witness witness_from_json(const Json& j) {
  Witness w{operator_from_json(j), std::nullopt};
  if (j.contains("certificate")) {
    const Json& c = j.at("certificate");
    w.certificate = sdp::WitnessCertificate{operator_from_json(field(c, "w0")), operator_from_json(field(c, "w1")),
                                            operator_from_json(field(c, "w2")), operator_from_json(field(c, "w3"))};
  }
  return w;
}

Json solve_report_to_json(const sdp::SolveReport& r, bool include_matrices) {
  Json j;
  j["converged"] = r.converged;
  j["status"] = r.status;
  j["primal_value"] = r.primal_value;
  j["dual_value"] = r.dual_value;
  j["gap"] = r.gap;
  j["iterations"] = r.iterations;
  j["residuals"] = r.residuals;
  if (include_matrices) {
    Json p = Json::object(), d = Json::object();
    for (std::size_t i = 0; i < r.names.size(); ++i) {
      p[r.names[i]] = matrix_to_json(r.primal[i]);
      d[r.names[i]] = matrix_to_json(r.dual[i]);
    }
    j["primal"] = p;
    j["dual"] = d;
  }
  return j;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r' && ch != ' ' && ch != '\t') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

struct CsvTable {
  std::map<std::string, int> columns;
  std::vector<std::vector<std::string>> rows;

  bool has(const std::string& c) const { return columns.count(c) > 0; }
};

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CsvTable t;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto cells = split_csv(line);
    if (!header) {
      for (int i = 0; i < static_cast<int>(cells.size()); ++i) t.columns[cells[i]] = i;
      header = true;
      continue;
    }
    if (cells.size() != t.columns.size()) throw ParseError("CSV row has " + std::to_string(cells.size()) +
                                                           " cells, header has " + std::to_string(t.columns.size()));
    t.rows.push_back(std::move(cells));
  }
  if (!header) throw ParseError("empty CSV");
  return t;
}

double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ParseError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number '" + s + "'");
  }
}

int to_index(const std::string& s, bool allow_traced) {
  double v = to_double(s);
  int i = static_cast<int>(v);
  if (i != v || i > 3 || i < (allow_traced ? kTraced : 0)) throw ParseError("bad term index '" + s + "'");
  return i;
}

std::string idx_cells(const std::array<int, 5>& idx) {
  std::string s;
  for (int k = 0; k < 5; ++k) s += std::to_string(idx[k]) + ",";
  return s;
}

}  // namespace

std::string decomposition_to_csv(const Decomposition& d) {
  std::string s = d.restricted ? "b,c,e,coeff\n" : "a,b,c,d,e,coeff\n";
  for (const auto& t : d.terms) {
    if (t.coeff == 0.0) continue;
    if (d.restricted)
      s += std::to_string(t.idx[1]) + "," + std::to_string(t.idx[2]) + "," + std::to_string(t.idx[4]) + ",";
    else
      s += idx_cells(t.idx);
    s += format_number(t.coeff) + "\n";
  }
  return s;
}

Decomposition decomposition_from_csv(const std::string& text) {
  CsvTable t = parse_csv(text);
  Decomposition d;
  d.restricted = !t.has("a");
  for (const char* c : {"b", "c", "e", "coeff"})
    if (!t.has(c)) throw ParseError(std::string("decomposition CSV lacks column '") + c + "'");
  if (!d.restricted && !t.has("d")) throw ParseError("decomposition CSV lacks column 'd'");
  for (const auto& r : t.rows) {
    DecompositionTerm term;
    if (d.restricted) {
      term.idx = {0, to_index(r[t.columns["b"]], false), to_index(r[t.columns["c"]], false), kTraced,
                  to_index(r[t.columns["e"]], false)};
    } else {
      term.idx = {to_index(r[t.columns["a"]], false), to_index(r[t.columns["b"]], false),
                  to_index(r[t.columns["c"]], false), to_index(r[t.columns["d"]], true),
                  to_index(r[t.columns["e"]], false)};
    }
    term.coeff = to_double(r[t.columns["coeff"]]);
    d.terms.push_back(term);
  }
  return d;
}

std::string probabilities_to_csv(const std::vector<ProbabilityRecord>& probs) {
  bool counts = false;
  for (const auto& p : probs) counts = counts || (p.counts && p.shots);
  std::string s = counts ? "a,b,c,d,e,probability,counts,shots\n" : "a,b,c,d,e,probability\n";
  for (const auto& p : probs) {
    s += idx_cells(p.idx) + format_number(p.probability);
    if (counts) {
      s += ",";
      if (p.counts) s += std::to_string(*p.counts);
      s += ",";
      if (p.shots) s += std::to_string(*p.shots);
    }
    s += "\n";
  }
  return s;
}

std::vector<ProbabilityRecord> probabilities_from_csv(const std::string& text) {
  CsvTable t = parse_csv(text);
  for (const char* c : {"a", "b", "c", "d", "e"})
    if (!t.has(c)) throw ParseError(std::string("probability CSV lacks column '") + c + "'");
  const bool has_p = t.has("probability"), has_counts = t.has("counts") && t.has("shots");
  if (!has_p && !has_counts) throw ParseError("probability CSV needs a probability column or counts and shots");
  std::vector<ProbabilityRecord> out;
  for (const auto& r : t.rows) {
    ProbabilityRecord p;
    p.idx = {to_index(r[t.columns["a"]], false), to_index(r[t.columns["b"]], false),
             to_index(r[t.columns["c"]], false), to_index(r[t.columns["d"]], true),
             to_index(r[t.columns["e"]], false)};
    if (has_counts && !r[t.columns["counts"]].empty()) {
      double c = to_double(r[t.columns["counts"]]), n = to_double(r[t.columns["shots"]]);
      if (c < 0 || n <= 0 || c > n) throw ParseError("counts must satisfy 0 <= counts <= shots, shots > 0");
      p.counts = static_cast<std::int64_t>(c);
      p.shots = static_cast<std::int64_t>(n);
    }
    if (p.counts)
      p.probability = static_cast<double>(*p.counts) / static_cast<double>(*p.shots);
    else if (has_p && !r[t.columns["probability"]].empty())
      p.probability = to_double(r[t.columns["probability"]]);
    else
      throw ParseError("row without probability or counts");
    if (p.probability < -1e-12 || p.probability > 1 + 1e-12) throw ParseError("probability outside [0, 1]");
    out.push_back(p);
  }
  return out;
}

}  // namespace iodir::io
