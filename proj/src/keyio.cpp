#include "althull/keyio.hpp"

#include <fstream>
#include <sstream>

namespace althull {

namespace {

void write_row(std::ostream& os, const FieldTower& t, const Element* row, int cols) {
  for (int j = 0; j < cols; ++j) {
    if (j) os << ' ';
    os << t.to_string(row[j]);
  }
  os << '\n';
}

void write_section(std::ostream& os, const FieldTower& t, const std::string& name,
                   const Matrix& M) {
  os << name << ' ' << M.rows << ' ' << M.cols << '\n';
  for (int i = 0; i < M.rows; ++i) write_row(os, t, &M.a[(size_t)i * M.cols], M.cols);
}

Matrix row_matrix(Level l, const Vec& v) {
  Matrix M(l, 1, (int)v.size());
  M.set_row(0, v);
  return M;
}

void write_header(std::ostream& os, const FieldTower& t, const AlternantParams& p) {
  os << "ALTKEY v1\n";
  os << t.descriptor() << '\n';
  os << p.q << ' ' << p.m << ' ' << p.r << ' ' << p.n << ' ' << p.seed << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  return os;
}

}  // namespace

void write_secret_key(const std::string& path, const FieldTower& t,
                      const AlternantInstance& inst) {
  std::ofstream os = open_out(path);
  write_header(os, t, inst.params);
  write_section(os, t, "x", row_matrix(Level::top, inst.x));
  write_section(os, t, "y", row_matrix(Level::top, inst.y));
  write_section(os, t, "P", inst.P);
  if (inst.gamma) write_section(os, t, "gamma", row_matrix(Level::top, inst.gamma->c));
  if (!os) throw Error("write failed: " + path);
}

void write_public_key(const std::string& path, const FieldTower& t,
                      const AlternantInstance& inst) {
  std::ofstream os = open_out(path);
  write_header(os, t, inst.params);
  write_section(os, t, "Hpub", inst.H_pub);
  if (!os) throw Error("write failed: " + path);
}

void write_recovered_key(const std::string& path, const FieldTower& t,
                         const AlternantParams& params, const GrsSpec& spec) {
  std::ofstream os = open_out(path);
  write_header(os, t, params);
  write_section(os, t, "x", row_matrix(Level::top, spec.x));
  write_section(os, t, "y", row_matrix(Level::top, spec.y));
  if (!os) throw Error("write failed: " + path);
}

LoadedKey load_key(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(is, line) || line != "ALTKEY v1")
    throw ParseError(path + ": missing ALTKEY v1 header");
  if (!std::getline(is, line)) throw ParseError(path + ": missing field descriptor");

  LoadedKey key;
  key.tower = std::make_shared<FieldTower>(FieldTower::from_descriptor(line));
  const FieldTower& t = *key.tower;

  if (!std::getline(is, line)) throw ParseError(path + ": missing params line");
  {
    std::istringstream ps(line);
    if (!(ps >> key.params.q >> key.params.m >> key.params.r >> key.params.n >>
          key.params.seed))
      throw ParseError(path + ": malformed params line");
    std::string extra;
    if (ps >> extra) throw ParseError(path + ": trailing data on params line");
  }
  if (key.params.q != t.q() || key.params.m != t.m())
    throw ParseError(path + ": params disagree with the field descriptor");
  if (key.params.r < 1 || key.params.n < 1)
    throw ParseError(path + ": non-positive dimensions");

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream hs(line);
    std::string name;
    int rows = 0, cols = 0;
    if (!(hs >> name >> rows >> cols)) throw ParseError(path + ": malformed section header");
    if (rows < 1 || cols < 1 || (int64_t)rows * cols > (int64_t)1 << 26)
      throw ParseError(path + ": unreasonable section shape");
    Level l = (name == "P" || name == "Hpub") ? Level::mid : Level::top;
    Matrix M(l, rows, cols);
    for (int i = 0; i < rows; ++i) {
      if (!std::getline(is, line)) throw ParseError(path + ": truncated section " + name);
      std::istringstream rs(line);
      std::string tok;
      for (int j = 0; j < cols; ++j) {
        if (!(rs >> tok)) throw ParseError(path + ": short row in section " + name);
        M.at(i, j) = t.parse_element(l, tok);
      }
      std::string extra;
      if (rs >> extra) throw ParseError(path + ": long row in section " + name);
    }
    if (name == "x") {
      key.x = M.row(0);
    } else if (name == "y") {
      key.y = M.row(0);
    } else if (name == "P") {
      key.P = M;
    } else if (name == "Hpub") {
      key.H_pub = M;
    } else if (name == "gamma") {
      Polynomial g;
      g.level = Level::top;
      g.c = M.row(0);
      key.gamma = g;
    } else {
      throw ParseError(path + ": unknown section " + name);
    }
  }
  key.params.kind = key.gamma ? InstanceKind::goppa : InstanceKind::alternant;
  return key;
}

AlternantInstance instance_from_secret(const FieldTower& t, const LoadedKey& k) {
  if (!k.has_secret()) throw ParseError("key file lacks the secret sections x, y, P");
  AlternantInstance inst;
  inst.params = k.params;
  inst.x = *k.x;
  inst.y = *k.y;
  inst.P = *k.P;
  inst.gamma = k.gamma;
  inst.H_sec = alternant_parity(t, inst.x, inst.y, inst.params.r);
  inst.H_pub = mat_mul(t, inst.P, inst.H_sec);
  return inst;
}

}  // namespace althull
