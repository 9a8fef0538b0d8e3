#include "zeclab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "zeclab/errors.hpp"

namespace zeclab {

namespace {

Json complex_pair(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json matrix_data(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_pair(m(r, c)));
  return data;
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

Complex entry_from_json(const Json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw ValidationError("complex entries must be [re, im] number pairs");
  return Complex(e[0].get<double>(), e[1].get<double>());
}

}  // namespace

Json to_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = matrix_data(m);
  return j;
}

Json to_json(const Vector& v) {
  Json j;
  j["size"] = v.size();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(complex_pair(v(i)));
  j["data"] = data;
  return j;
}

Json to_json(const SubspaceBasis& s) {
  Json j;
  j["dim_ambient"] = s.dim_ambient;
  Json basis = Json::array();
  for (const Matrix& a : s.basis) basis.push_back(to_json(a));
  j["basis"] = basis;
  return j;
}

Json to_json(const GraphConditionReport& r) {
  Json j;
  j["adjoint_closed"] = r.adjoint_closed;
  j["identity_in_span"] = r.identity_in_span;
  j["w_checked"] = r.w_checked;
  j["w_invariant"] = r.w_invariant;
  j["all_hold"] = r.all_hold();
  return j;
}

Json to_json(const CodeCandidate& c) {
  Json j;
  j["dim_ambient"] = c.dim_ambient;
  Json vecs = Json::array();
  for (const Vector& v : c.vectors) vecs.push_back(to_json(v));
  j["vectors"] = vecs;
  return j;
}

Json to_json(const CodeFamily& f) {
  Json j;
  j["base"] = to_json(f.base);
  Json us = Json::array();
  for (const Matrix& u : f.unitaries) us.push_back(to_json(u));
  j["unitaries"] = us;
  Json ms = Json::array();
  for (const CodeCandidate& m : f.members) ms.push_back(to_json(m));
  j["members"] = ms;
  return j;
}

Json to_json(const KLReport& r) {
  Json j;
  j["max_offdiag"] = r.max_offdiag;
  j["max_diag_spread"] = r.max_diag_spread;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const FamilyReport& r) {
  Json j;
  Json per = Json::array();
  for (const KLReport& k : r.per_member) per.push_back(to_json(k));
  j["per_member"] = per;
  j["max_offdiag"] = r.max_offdiag;
  j["max_diag_spread"] = r.max_diag_spread;
  j["family_gram_residual"] = r.family_gram_residual;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const BlockScalarReport& r) {
  Json j;
  Json lam = Json::array();
  for (const Complex& z : r.lambda) lam.push_back(complex_pair(z));
  j["lambda"] = lam;
  j["max_residual"] = r.max_residual;
  j["max_lambda_spread"] = r.max_lambda_spread;
  j["offending_member"] = r.offending_member;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const ChainEntry& e) {
  Json j;
  j["name"] = e.name;
  j["value"] = e.value;
  j["threshold"] = e.threshold;
  j["comparator"] = e.comparator;
  j["ok"] = e.ok;
  return j;
}

Json to_json(const Certificate& c) {
  Json j;
  j["kind"] = c.kind == CertificateKind::zero_capacity ? "zero_capacity"
                                                       : "positive_capacity";
  j["theta_list"] = c.theta_list;
  j["p"] = c.p;
  j["n"] = c.n;
  Json chain = Json::array();
  for (const ChainEntry& e : c.chain) chain.push_back(to_json(e));
  j["chain"] = chain;
  j["verdict"] = c.verdict;
  j["first_violated"] = c.first_violated;
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["p"] = r.p;
  j["n"] = r.n;
  j["delta_p"] = r.delta_p;
  j["theta_n"] = r.theta_n;
  j["theta_star"] = r.theta_star;
  j["x_bounds"] = r.x_bounds;
  j["Delta_n"] = r.Delta_n;
  j["m"] = r.m;
  j["q0_lower"] = r.q0_lower;
  j["s_lower"] = r.s_lower;
  j["lambda_p"] = r.lambda_p;
  return j;
}

Json to_json(const Amplification& a) {
  Json j;
  j["lambda_p"] = a.lambda_p;
  j["limit"] = a.limit;
  return j;
}

Json to_json(const SearchOutcome& o) {
  Json j;
  j["status"] = o.status == SearchStatus::code_found ? "code_found"
                                                     : "no_code_evidence";
  j["best_violation"] = o.best_violation;
  j["best_restart"] = o.best_restart;
  j["phi"] = to_json(o.phi);
  j["psi"] = to_json(o.psi);
  Json trace = Json::array();
  for (const RestartTrace& t : o.trace) {
    Json e;
    e["restart"] = t.restart;
    e["iters"] = t.iters;
    e["violation"] = t.violation;
    trace.push_back(e);
  }
  j["trace"] = trace;
  return j;
}

Json to_json(const ChannelBasis& b) {
  Json j;
  j["theta"] = b.theta;
  j["alpha"] = b.alpha;
  j["beta"] = b.beta;
  Json ms = Json::array();
  for (const Matrix& m : b.members) ms.push_back(to_json(m));
  j["members"] = ms;
  return j;
}

Json to_json(const EnvVectors& e) {
  Json j;
  j["m"] = e.m;
  Json vecs = Json::array();
  for (const Vector& v : e.vectors) vecs.push_back(to_json(v));
  j["vectors"] = vecs;
  return j;
}

Json to_json(const StinespringIsometry& v) {
  Json j;
  j["d_A"] = v.d_A;
  j["d_B"] = v.d_B;
  j["d_E"] = v.d_E;
  j["v"] = to_json(v.v);
  return j;
}

Json to_json(const IsometryDistance& d) {
  Json j;
  j["op_distance"] = d.op_distance;
  j["cb_upper_bound"] = d.cb_upper_bound;
  return j;
}

Json to_json(const CqReport& r) {
  Json j;
  j["is_cq"] = r.is_cq;
  j["max_deviation"] = r.max_deviation;
  j["worst_probe"] = r.worst_probe;
  Json sig = Json::array();
  for (const Matrix& s : r.sigmas) sig.push_back(to_json(s));
  j["sigmas"] = sig;
  return j;
}

Json to_json(const Corollary1Report& r) {
  Json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["m"] = r.m;
  j["theta_star"] = r.theta_star;
  j["certificate"] = to_json(r.certificate);
  j["code_leg_full"] = r.code_leg_full;
  if (r.code_leg_full) j["family"] = to_json(r.family);
  j["family_gram_residual"] = r.family_gram_residual;
  j["sum_theta_residual"] = r.sum_theta_residual;
  j["continuity"] = to_json(r.continuity);
  if (!r.cap_note.empty()) j["cap_note"] = r.cap_note;
  j["verified"] = r.verified;
  return j;
}

Json to_json(const SuperactivationReport& r) {
  Json j;
  j["theta"] = r.theta;
  j["search_first"] = to_json(r.search_first);
  j["search_second"] = to_json(r.search_second);
  j["joint_family"] = to_json(r.joint_family);
  j["superactivated"] = r.superactivated;
  return j;
}

Matrix matrix_from_json(const Json& j) {
  const Json& rows_j = need(j, "rows");
  const Json& cols_j = need(j, "cols");
  const Json& data = need(j, "data");
  if (!rows_j.is_number_integer() || !cols_j.is_number_integer() || !data.is_array())
    throw ValidationError("matrix JSON needs integer rows/cols and a data array");
  const Eigen::Index rows = rows_j.get<Eigen::Index>();
  const Eigen::Index cols = cols_j.get<Eigen::Index>();
  if (rows < 0 || cols < 0 ||
      data.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
    throw ValidationError("matrix data length does not match rows*cols");
  Matrix m(rows, cols);
  size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(data[k++]);
  return m;
}

Vector vector_from_json(const Json& j) {
  const Json& size_j = need(j, "size");
  const Json& data = need(j, "data");
  if (!size_j.is_number_integer() || !data.is_array())
    throw ValidationError("vector JSON needs an integer size and a data array");
  const Eigen::Index size = size_j.get<Eigen::Index>();
  if (size < 0 || data.size() != static_cast<size_t>(size))
    throw ValidationError("vector data length does not match size");
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i)
    v(i) = entry_from_json(data[static_cast<size_t>(i)]);
  return v;
}

SubspaceBasis subspace_from_json(const Json& j) {
  const Json& dim_j = need(j, "dim_ambient");
  const Json& basis = need(j, "basis");
  if (!dim_j.is_number_integer() || !basis.is_array())
    throw ValidationError("subspace JSON needs dim_ambient and a basis array");
  std::vector<Matrix> mats;
  for (const Json& m : basis) mats.push_back(matrix_from_json(m));
  const Eigen::Index dim = dim_j.get<Eigen::Index>();
  for (const Matrix& m : mats)
    if (m.rows() != dim || m.cols() != dim)
      throw ValidationError("subspace basis element is not dim_ambient square");
  return make_subspace(std::move(mats));
}

CodeCandidate code_from_json(const Json& j) {
  const Json& dim_j = need(j, "dim_ambient");
  const Json& vecs = need(j, "vectors");
  if (!dim_j.is_number_integer() || !vecs.is_array())
    throw ValidationError("code JSON needs dim_ambient and a vectors array");
  std::vector<Vector> vectors;
  for (const Json& v : vecs) vectors.push_back(vector_from_json(v));
  return CodeCandidate::make(dim_j.get<Eigen::Index>(), std::move(vectors));
}

namespace {

std::string fmt_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void escape_to(std::string& out, const std::string& s) {
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void write_json(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        escape_to(out, it.key());
        out += ':';
        write_json(out, it.value());
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += ',';
        first = false;
        write_json(out, e);
      }
      out += ']';
      break;
    }
    case Json::value_t::string:
      escape_to(out, j.get_ref<const std::string&>());
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      out += fmt_double(j.get<double>());
      break;
    default:
      out += "null";
  }
}

}  // namespace

std::string dump_deterministic(const Json& j) {
  std::string out;
  write_json(out, j);
  out += '\n';
  return out;
}

}  // namespace zeclab
