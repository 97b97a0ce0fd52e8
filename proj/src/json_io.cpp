#include "choicone/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "choicone/error.hpp"

namespace choicone {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorCode::Format, std::string("expected an object with key \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::Format, std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t count_of(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw Error(ErrorCode::Format, std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw Error(ErrorCode::Format, std::string(what) + " must be a number");
  return v.get<double>();
}

std::string kind_of(const Json& j) {
  const Json& k = require(j, "kind");
  if (!k.is_string()) throw Error(ErrorCode::Format, "\"kind\" must be a string");
  return k.get<std::string>();
}

Verdict verdict_from(const std::string& s) {
  for (auto v : {Verdict::InCone, Verdict::Refuted, Verdict::Unknown})
    if (s == to_string(v)) return v;
  throw Error(ErrorCode::Format, "unknown verdict \"" + s + "\"");
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Format, "complex entry must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json to_json(std::span<const Complex> v) {
  Json out = Json::array();
  for (const Complex& z : v) out.push_back(to_json(z));
  return out;
}

std::vector<Complex> vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Format, "vector must be an array of [re, im]");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

Json to_json(const ComplexMatrix& a) {
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["entries"] = to_json(a.entries());
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = count_of(j, "rows"), cols = count_of(j, "cols");
  return {rows, cols, vector_from_json(require(j, "entries"))};
}

Json to_json(const TensorMatrix& z) {
  Json out;
  out["m"] = z.m();
  out["n"] = z.n();
  out["rows"] = z.mat().rows();
  out["cols"] = z.mat().cols();
  out["entries"] = to_json(z.mat().entries());
  return out;
}

TensorMatrix tensor_from_json(const Json& j) {
  return {count_of(j, "m"), count_of(j, "n"), matrix_from_json(j)};
}

Json to_json(const LinearMap& phi) {
  Json out;
  out["m"] = phi.m();
  out["n"] = phi.n();
  out["choi"] = to_json(phi.choi());
  return out;
}

bool looks_like_map(const Json& j) { return j.is_object() && (j.contains("choi") || j.contains("kraus")); }

LinearMap map_from_json(const Json& j) {
  const std::size_t m = count_of(j, "m"), n = count_of(j, "n");
  if (j.contains("choi")) {
    const Json& c = j["choi"];
    TensorMatrix choi = c.contains("m") ? tensor_from_json(c) : TensorMatrix(m, n, matrix_from_json(c));
    if (choi.m() != m || choi.n() != n) throw Error(ErrorCode::DimMismatch, "Choi dimensions disagree with m, n");
    return LinearMap(std::move(choi));
  }
  const Json& k = require(j, "kraus");
  if (!k.is_array() || k.empty()) throw Error(ErrorCode::Format, "\"kraus\" must be a nonempty array");
  std::vector<ComplexMatrix> kraus;
  for (const auto& e : k) {
    kraus.push_back(matrix_from_json(e));
    if (kraus.back().rows() != n || kraus.back().cols() != m) {
      throw Error(ErrorCode::DimMismatch, "Kraus operators must be n×m");
    }
  }
  return kraus_to_choi(kraus);
}

Json to_json(const TransformSpec& spec) {
  Json atoms = Json::array();
  for (const auto& atom : spec.atoms) {
    Json a;
    if (const auto* l = std::get_if<AdLocal>(&atom)) {
      a["kind"] = "adLocal";
      a["s"] = to_json(l->s);
      a["t"] = to_json(l->t);
    } else if (std::holds_alternative<TransposeLeft>(atom)) {
      a["kind"] = "transposeLeft";
    } else if (std::holds_alternative<TransposeRight>(atom)) {
      a["kind"] = "transposeRight";
    } else if (std::holds_alternative<Flip>(atom)) {
      a["kind"] = "flip";
    } else {
      a["kind"] = "adGlobal";
      a["v"] = to_json(std::get<AdGlobal>(atom).v);
    }
    atoms.push_back(std::move(a));
  }
  Json out;
  out["m"] = spec.m;
  out["n"] = spec.n;
  out["atoms"] = std::move(atoms);
  return out;
}

TransformSpec spec_from_json(const Json& j) {
  TransformSpec spec{count_of(j, "m"), count_of(j, "n"), {}};
  const Json& atoms = require(j, "atoms");
  if (!atoms.is_array()) throw Error(ErrorCode::Format, "\"atoms\" must be an array");
  for (const auto& a : atoms) {
    const std::string kind = kind_of(a);
    if (kind == "adLocal") {
      spec.atoms.emplace_back(AdLocal{matrix_from_json(require(a, "s")), matrix_from_json(require(a, "t"))});
    } else if (kind == "transposeLeft") {
      spec.atoms.emplace_back(TransposeLeft{});
    } else if (kind == "transposeRight") {
      spec.atoms.emplace_back(TransposeRight{});
    } else if (kind == "flip") {
      spec.atoms.emplace_back(Flip{});
    } else if (kind == "adGlobal") {
      spec.atoms.emplace_back(AdGlobal{matrix_from_json(require(a, "v"))});
    } else {
      throw Error(ErrorCode::Format, "unknown atom kind \"" + kind + "\"");
    }
  }
  return spec;
}

Json to_json(const SuperOp& theta) {
  Json out;
  out["m"] = theta.m();
  out["n"] = theta.n();
  out["matrix"] = to_json(theta.matrix());
  return out;
}

SuperOp superop_from_json(const Json& j) {
  return {count_of(j, "m"), count_of(j, "n"), matrix_from_json(require(j, "matrix"))};
}

SuperOp theta_from_json(const Json& j) {
  if (j.is_object() && j.contains("atoms")) return compile(spec_from_json(j));
  return superop_from_json(j);
}

Json to_json(const ConeId& cone) {
  Json out;
  out["family"] = to_string(cone.family);
  out["k"] = cone.k;
  return out;
}

Json to_json(const Certificate& cert) {
  Json out;
  out["verdict"] = to_string(cert.verdict);
  out["cone"] = to_json(cert.cone);
  out["m"] = cert.m;
  out["n"] = cert.n;
  out["method"] = cert.method;
  Json dec = Json::array();
  for (const auto& t : cert.decomposition) {
    Json e;
    e["w"] = t.weight;
    e["zeta"] = to_json(t.zeta);
    dec.push_back(std::move(e));
  }
  out["decomposition"] = std::move(dec);
  if (!cert.witness_terms.empty()) {
    Json terms = Json::array();
    for (const auto& t : cert.witness_terms) {
      Json e;
      e["w"] = t.weight;
      e["level"] = t.level;
      e["s"] = to_json(t.s);
      e["t"] = to_json(t.t);
      terms.push_back(std::move(e));
    }
    out["witness_terms"] = std::move(terms);
  }
  if (cert.witness) {
    Json w;
    w["kind"] = cert.witness->kind;
    w["operator"] = to_json(cert.witness->op);
    w["vector"] = to_json(cert.witness->vector);
    w["value"] = cert.witness->value;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  out["value"] = cert.value ? Json(*cert.value) : Json(nullptr);
  out["samples_used"] = cert.samples_used;
  out["seed"] = cert.seed;
  out["restarts"] = cert.restarts;
  return out;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  const Json& v = require(j, "verdict");
  if (!v.is_string()) throw Error(ErrorCode::Format, "\"verdict\" must be a string");
  c.verdict = verdict_from(v.get<std::string>());
  const Json& cone = require(j, "cone");
  const Json& fam = require(cone, "family");
  const auto family = fam.is_string() ? parse_cone_family(fam.get<std::string>()) : std::nullopt;
  if (!family) throw Error(ErrorCode::Format, "unknown cone family");
  c.cone = {*family, count_of(cone, "k")};
  c.m = count_of(j, "m");
  c.n = count_of(j, "n");
  if (j.contains("method") && j["method"].is_string()) c.method = j["method"].get<std::string>();
  if (j.contains("decomposition")) {
    for (const auto& e : j["decomposition"])
      c.decomposition.push_back({number(require(e, "w"), "\"w\""), vector_from_json(require(e, "zeta"))});
  }
  if (j.contains("witness_terms")) {
    for (const auto& e : j["witness_terms"])
      c.witness_terms.push_back({number(require(e, "w"), "\"w\""), count_of(e, "level"),
                                 matrix_from_json(require(e, "s")), matrix_from_json(require(e, "t"))});
  }
  if (j.contains("witness") && !j["witness"].is_null()) {
    const Json& w = j["witness"];
    Witness wit;
    wit.kind = kind_of(w);
    wit.op = matrix_from_json(require(w, "operator"));
    wit.vector = vector_from_json(require(w, "vector"));
    wit.value = number(require(w, "value"), "witness value");
    c.witness = std::move(wit);
  }
  if (j.contains("value") && !j["value"].is_null()) c.value = number(j["value"], "\"value\"");
  if (j.contains("samples_used")) c.samples_used = count_of(j, "samples_used");
  if (j.contains("seed")) c.seed = require(j, "seed").get<std::uint64_t>();
  if (j.contains("restarts")) c.restarts = count_of(j, "restarts");
  return c;
}

Json to_json(const PreservationResult& r) {
  Json out;
  out["result"] = r.counterexample ? "Counterexample" : "NoCounterexample";
  out["samples"] = r.samples;
  out["worst_margin"] = std::isfinite(r.worst_margin) ? r.worst_margin : 0.0;
  if (r.member) out["member"] = to_json(*r.member);
  if (r.member_certificate) out["member_certificate"] = to_json(*r.member_certificate);
  if (r.image_certificate) out["image_certificate"] = to_json(*r.image_certificate);
  return out;
}

Json to_json(const CanonicalFactorization& fac) {
  Json out;
  out["s"] = to_json(fac.s);
  out["t"] = to_json(fac.t);
  out["transpose_left"] = fac.transpose_left;
  out["transpose_right"] = fac.transpose_right;
  out["flip"] = fac.flip;
  out["scale"] = fac.scale;
  return out;
}

Json to_json(const Classification& c) {
  Json out;
  if (c.factorization) {
    out["result"] = "Factored";
    out["factorization"] = to_json(*c.factorization);
    out["residual"] = c.residual;
  } else {
    const auto& cex = *c.counterexample;
    out["result"] = "NotPreserving";
    out["p"] = to_json(cex.p);
    out["q"] = to_json(cex.q);
    out["image"] = to_json(cex.image);
    out["reason"] = cex.reason;
    out["violation"] = cex.violation;
    out["certificate"] = to_json(cex.image_certificate);
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Format, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Format, path + ": " + e.what());
  }
}

}  // namespace choicone
