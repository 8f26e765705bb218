#include "avqc/io.hpp"

#include <fstream>
#include <sstream>

#include "avqc/error.hpp"

namespace avqc {

namespace {

[[noreturn]] void schema(const std::string& pointer, const std::string& what) {
  throw Error(ErrorKind::SchemaViolation, "at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

std::string child(const std::string& pointer, const std::string& key) {
  // RFC 6901 escaping
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return pointer + "/" + escaped;
}

std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

const Json& member(const Json& j, const std::string& pointer, const std::string& key) {
  if (!j.is_object()) schema(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(child(pointer, key), "missing required member");
  return *it;
}

std::size_t count_from(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) schema(pointer, "expected a non-negative integer");
  const auto v = j.get<long long>();
  if (v < 0) schema(pointer, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

double number_from(const Json& j, const std::string& pointer) {
  if (!j.is_number()) schema(pointer, "expected a number");
  return j.get<double>();
}

std::vector<double> vector_from(const Json& j, const std::string& pointer) {
  if (!j.is_array()) schema(pointer, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_from(j[i], child(pointer, i)));
  return out;
}

std::vector<std::string> labels_from(const Json& j, const std::string& pointer) {
  if (!j.is_array()) schema(pointer, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema(child(pointer, i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

Complex complex_from(const Json& j, const std::string& pointer) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema(pointer, "expected a complex entry [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, path + " is not valid JSON: " + e.what());
  }
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) schema(pointer, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) schema(child(pointer, 0), "expected a non-empty row");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = child(pointer, r);
    if (!j[r].is_array() || j[r].size() != cols) schema(rp, "row length differs from the first row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from(j[r][c], child(rp, c));
  }
  return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

KrausChannel channel_from_json(const Json& j, const std::string& pointer) {
  const std::size_t dim_in = count_from(member(j, pointer, "dim_in"), child(pointer, "dim_in"));
  const std::size_t dim_out = count_from(member(j, pointer, "dim_out"), child(pointer, "dim_out"));
  const Json& kraus = member(j, pointer, "kraus");
  const std::string kp = child(pointer, "kraus");
  if (!kraus.is_array() || kraus.empty()) schema(kp, "expected a non-empty array of matrices");
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    ComplexMatrix a = matrix_from_json(kraus[i], child(kp, i));
    if (a.rows() != dim_out || a.cols() != dim_in) {
      schema(child(kp, i), "Kraus operator is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                               ", expected dim_out x dim_in = " + std::to_string(dim_out) + "x" +
                               std::to_string(dim_in));
    }
    ops.push_back(std::move(a));
  }
  return KrausChannel(std::move(ops));
}

Json channel_to_json(const KrausChannel& ch) {
  Json kraus = Json::array();
  for (const auto& a : ch.kraus()) kraus.push_back(matrix_to_json(a));
  return Json{{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", kraus}};
}

AVQCFamily family_from_json(const Json& j, const std::string& pointer) {
  const auto theta = labels_from(member(j, pointer, "theta"), child(pointer, "theta"));
  const Json& channels = member(j, pointer, "channels");
  const std::string cp = child(pointer, "channels");
  if (!channels.is_object()) schema(cp, "expected an object keyed by theta labels");
  std::vector<KrausChannel> list;
  for (const auto& label : theta) {
    auto it = channels.find(label);
    if (it == channels.end()) schema(child(cp, label), "no channel for theta label");
    list.push_back(channel_from_json(*it, child(cp, label)));
  }
  return AVQCFamily(theta, std::move(list));
}

Json family_to_json(const AVQCFamily& fam) {
  Json channels = Json::object();
  for (std::size_t t = 0; t < fam.size(); ++t) channels[fam.theta()[t]] = channel_to_json(fam.channel(t));
  return Json{{"theta", fam.theta()}, {"channels", channels}};
}

CQSource source_from_json(const Json& j, const std::string& pointer) {
  const auto alphabet = labels_from(member(j, pointer, "alphabet"), child(pointer, "alphabet"));
  const Json& states = member(j, pointer, "states");
  const std::string sp = child(pointer, "states");
  if (!states.is_object()) schema(sp, "expected an object keyed by alphabet labels");
  std::vector<DensityOperator> list;
  for (const auto& label : alphabet) {
    auto it = states.find(label);
    if (it == states.end()) schema(child(sp, label), "no state for alphabet label");
    const ComplexMatrix m = matrix_from_json(*it, child(sp, label));
    try {
      list.emplace_back(m);
    } catch (const Error& e) {
      const std::string what = e.what();
      throw Error(e.kind(), "at " + child(sp, label) + ": " + what.substr(what.find(": ") + 2));
    }
  }
  const auto prior = vector_from(member(j, pointer, "prior"), child(pointer, "prior"));
  return CQSource(alphabet, std::move(list), prior);
}

Json source_to_json(const CQSource& src) {
  Json states = Json::object();
  for (std::size_t a = 0; a < src.size(); ++a) states[src.alphabet[a]] = matrix_to_json(src.states[a].matrix());
  return Json{{"alphabet", src.alphabet}, {"states", states}, {"prior", src.prior}};
}

BlockCode code_from_json(const Json& j, const std::string& pointer) {
  const std::size_t n = count_from(member(j, pointer, "n"), child(pointer, "n"));
  const Json& enc = member(j, pointer, "encoder");
  const std::string ep = child(pointer, "encoder");
  if (!enc.is_array() || enc.empty()) schema(ep, "expected a non-empty array of rows");
  std::vector<std::vector<double>> encoder;
  for (std::size_t i = 0; i < enc.size(); ++i) encoder.push_back(vector_from(enc[i], child(ep, i)));
  const Json& dec = member(j, pointer, "decoder");
  const std::string dp = child(pointer, "decoder");
  if (!dec.is_array() || dec.empty()) schema(dp, "expected a non-empty array of matrices");
  std::vector<ComplexMatrix> decoder;
  for (std::size_t i = 0; i < dec.size(); ++i) decoder.push_back(matrix_from_json(dec[i], child(dp, i)));
  return BlockCode(n, std::move(encoder), std::move(decoder));
}

Json code_to_json(const BlockCode& code) {
  Json dec = Json::array();
  for (const auto& d : code.decoder()) dec.push_back(matrix_to_json(d));
  return Json{{"n", code.n()}, {"encoder", code.encoder()}, {"decoder", dec}};
}

Json report_to_json(const VerificationReport& report) {
  Json claims = Json::array();
  for (const auto& c : report.claims) {
    claims.push_back(Json{{"id", c.id},
                          {"description", c.description},
                          {"value", c.value},
                          {"bound", c.bound},
                          {"relation", c.relation},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed}});
  }
  return Json{{"name", report.name},
              {"claims", claims},
              {"all_passed", report.all_passed()},
              {"probe_sets", report.probe_descriptions}};
}

}  // namespace avqc
