#include "arcqp/problem_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace arcqp {

namespace {

using nlohmann::json;

Matrix parse_matrix(const json& j, const char* name) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw std::invalid_argument(std::string(name) +
                                " must be a non-empty array of rows");
  }
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.front().size());
  Matrix M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      std::ostringstream msg;
      msg << name << " row " << i << " has " << row.size()
          << " entries, expected " << cols;
      throw std::invalid_argument(msg.str());
    }
    for (Index k = 0; k < cols; ++k) {
      M(i, k) = row.at(static_cast<size_t>(k)).get<double>();
    }
  }
  return M;
}

Vector parse_vector(const json& j, const char* name) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(name) + " must be an array");
  }
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    v[i] = j.at(static_cast<size_t>(i)).get<double>();
  }
  return v;
}

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

const json& require_field(const json& j, const char* name) {
  const auto itr = j.find(name);
  if (itr == j.end()) {
    throw std::invalid_argument(std::string("missing field \"") + name + '"');
  }
  return *itr;
}

}  // namespace

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument("invalid JSON in " + path.string() + ": " +
                                e.what());
  }
  try {
    const std::string type = require_field(doc, "type").get<std::string>();
    ProblemFile pf;
    if (type == "box_qp") {
      pf.kind = ProblemFile::Kind::box_qp;
      const Index n = require_field(doc, "n").get<Index>();
      Matrix H = parse_matrix(require_field(doc, "H"), "H");
      Vector c = parse_vector(require_field(doc, "c"), "c");
      if (H.rows() != n) {
        std::ostringstream msg;
        msg << "H is " << H.rows() << "x" << H.cols() << " but n = " << n;
        throw std::invalid_argument(msg.str());
      }
      pf.qp = make_box_qp(std::move(H), std::move(c));
    } else if (type == "lqr") {
      pf.kind = ProblemFile::Kind::lqr;
      pf.lqr.A = parse_matrix(require_field(doc, "A"), "A");
      pf.lqr.B = parse_matrix(require_field(doc, "B"), "B");
      pf.lqr.P = parse_matrix(require_field(doc, "P"), "P");
      pf.lqr.Q = parse_matrix(require_field(doc, "Q"), "Q");
      pf.lqr.R = parse_matrix(require_field(doc, "R"), "R");
      pf.lqr.N = require_field(doc, "N").get<int>();
      pf.lqr.x0 = parse_vector(require_field(doc, "x0"), "x0");
      if (doc.contains("weight_scale_h")) {
        pf.weight_scale_h = doc["weight_scale_h"].get<double>();
        if (!(pf.weight_scale_h > 0.0)) {
          throw std::invalid_argument("weight_scale_h must be positive");
        }
      }
      validate_lqr(pf.lqr);
    } else {
      throw std::invalid_argument("unknown problem type \"" + type + '"');
    }
    return pf;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed problem in " + path.string() +
                                ": " + e.what());
  }
}

void save_problem(const std::filesystem::path& path, const ProblemFile& pf) {
  json doc;
  if (pf.kind == ProblemFile::Kind::box_qp) {
    doc["type"] = "box_qp";
    doc["n"] = pf.qp.n;
    doc["H"] = matrix_to_json(pf.qp.H);
    doc["c"] = vector_to_json(pf.qp.c);
  } else {
    doc["type"] = "lqr";
    doc["A"] = matrix_to_json(pf.lqr.A);
    doc["B"] = matrix_to_json(pf.lqr.B);
    doc["P"] = matrix_to_json(pf.lqr.P);
    doc["Q"] = matrix_to_json(pf.lqr.Q);
    doc["R"] = matrix_to_json(pf.lqr.R);
    doc["N"] = pf.lqr.N;
    doc["x0"] = vector_to_json(pf.lqr.x0);
    doc["weight_scale_h"] = pf.weight_scale_h;
  }
  atomic_write(path, doc.dump(2) + "\n");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write(const std::filesystem::path& path,
                  const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << content;
    if (!out) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

void write_solution_csv(const std::filesystem::path& path, const Vector& x) {
  std::ostringstream out;
  out << "index,x\n";
  for (Index i = 0; i < x.size(); ++i) {
    out << i << ',' << format_double(x[i]) << '\n';
  }
  atomic_write(path, out.str());
}

void write_iteration_log_csv(const std::filesystem::path& path,
                             const std::vector<IterationRecord>& records) {
  std::ostringstream out;
  out << "k,mu,sin_alpha,kappa,rX,rY,rZ\n";
  for (const auto& r : records) {
    out << r.k << ',' << format_double(r.mu) << ','
        << format_double(r.sin_alpha) << ',' << format_double(r.kappa) << ','
        << format_double(r.r_norm_x) << ',' << format_double(r.r_norm_y)
        << ',' << format_double(r.r_norm_z) << '\n';
  }
  atomic_write(path, out.str());
}

void write_controls_csv(const std::filesystem::path& path, const Matrix& u) {
  std::ostringstream out;
  out << "step";
  for (Index i = 0; i < u.rows(); ++i) out << ",u" << (i + 1);
  out << '\n';
  for (Index s = 0; s < u.cols(); ++s) {
    out << s;
    for (Index i = 0; i < u.rows(); ++i) {
      out << ',' << format_double(u(i, s));
    }
    out << '\n';
  }
  atomic_write(path, out.str());
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const Matrix& states) {
  std::ostringstream out;
  out << "step";
  for (Index i = 0; i < states.rows(); ++i) out << ",x" << (i + 1);
  out << '\n';
  for (Index s = 0; s < states.cols(); ++s) {
    out << s;
    for (Index i = 0; i < states.rows(); ++i) {
      out << ',' << format_double(states(i, s));
    }
    out << '\n';
  }
  atomic_write(path, out.str());
}

}  // namespace arcqp
