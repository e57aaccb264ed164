#include "rotquad/symmetry_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rotquad/error.hpp"

namespace rotquad {

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::array<int, 4> images) : images_(images) {
  std::array<bool, 4> seen{};
  for (int v : images_) {
    if (v < 1 || v > 4 || seen[static_cast<std::size_t>(v - 1)]) {
      throw Error(ErrorKind::InvalidInput, "not a permutation of {1,2,3,4}");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::generator(int i) {
  if (i < 1 || i > 3) throw Error(ErrorKind::InvalidInput, "generator index must be 1, 2 or 3");
  std::array<int, 4> im{1, 2, 3, 4};
  std::swap(im[static_cast<std::size_t>(i - 1)], im[static_cast<std::size_t>(i)]);
  return Permutation(im);
}

Permutation Permutation::operator*(const Permutation& rhs) const noexcept {
  Permutation out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.images_[i] = images_[static_cast<std::size_t>(rhs.images_[i] - 1)];
  }
  return out;
}

Permutation Permutation::inverse() const noexcept {
  Permutation out;
  for (std::size_t i = 0; i < 4; ++i) out.images_[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i + 1);
  return out;
}

std::string to_string(const Permutation& p) {
  if (p.is_identity()) return "e";
  std::string out;
  std::array<bool, 4> done{};
  for (int start = 1; start <= 4; ++start) {
    if (done[static_cast<std::size_t>(start - 1)] || p(start) == start) continue;
    out += '(';
    for (int i = start; !done[static_cast<std::size_t>(i - 1)]; i = p(i)) {
      done[static_cast<std::size_t>(i - 1)] = true;
      out += static_cast<char>('0' + i);
    }
    out += ')';
  }
  return out;
}

Permutation parse_cycles(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s == "e") return {};
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty permutation");

  Permutation result;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '(') throw Error(ErrorKind::ParseError, "expected '(' at position " + std::to_string(pos));
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw Error(ErrorKind::ParseError, "unterminated cycle");
    std::vector<int> cycle;
    for (std::size_t i = pos + 1; i < close; ++i) {
      const char c = s[i];
      if (c < '1' || c > '4') throw Error(ErrorKind::ParseError, std::string("bad symbol '") + c + "'");
      const int v = c - '0';
      if (std::find(cycle.begin(), cycle.end(), v) != cycle.end()) {
        throw Error(ErrorKind::ParseError, "repeated element " + std::to_string(v) + " in a cycle");
      }
      cycle.push_back(v);
    }
    std::array<int, 4> im{1, 2, 3, 4};
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      im[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()];
    }
    result = result * Permutation(im);
    pos = close + 1;
  }
  return result;
}

std::vector<Permutation> all_permutations() {
  std::array<int, 4> im{1, 2, 3, 4};
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

// ------------------------------------------------------------------ IntMatrix3

IntMatrix3 IntMatrix3::identity() noexcept { return {{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}; }

IntMatrix3 IntMatrix3::operator*(const IntMatrix3& rhs) const noexcept {
  IntMatrix3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) out.m[i][j] += m[i][k] * rhs.m[k][j];
  return out;
}

RTriple IntMatrix3::operator*(const RTriple& v) const noexcept {
  RTriple out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) out[i] += m[i][k] * v[k];
  return out;
}

IntMatrix3 IntMatrix3::transpose() const noexcept {
  IntMatrix3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out.m[i][j] = m[j][i];
  return out;
}

int IntMatrix3::det() const noexcept {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::string to_string(const IntMatrix3& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < 3; ++i) {
    os << (i ? ", [" : "[") << a.m[i][0] << ", " << a.m[i][1] << ", " << a.m[i][2] << ']';
  }
  os << ']';
  return os.str();
}

// ----------------------------------------------------------------------- Theta

IntMatrix3 theta_generator(int i) {
  switch (i) {
    case 1:
    case 3: return {{{{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}}}};
    case 2: return {{{{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}}}};
    default: throw Error(ErrorKind::InvalidInput, "generator index must be 1, 2 or 3");
  }
}

std::vector<int> generator_word(const Permutation& sigma) {
  // Right multiplication by sigma_i swaps images i and i+1; sort the images
  // from the left: sigma * s_{j1} * ... * s_{jk} = e.
  std::array<int, 4> im = sigma.images();
  std::vector<int> steps;
  for (;;) {
    int i = 0;
    while (i < 3 && im[static_cast<std::size_t>(i)] < im[static_cast<std::size_t>(i + 1)]) ++i;
    if (i == 3) break;
    std::swap(im[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(i + 1)]);
    steps.push_back(i + 1);
  }
  return {steps.rbegin(), steps.rend()};
}

std::vector<int> alternate_generator_word(const Permutation& sigma) {
  // Left multiplication by sigma_i swaps the values i and i+1; remove the last
  // inversion of values first: s_{jk} * ... * s_{j1} * sigma = e.
  Permutation p = sigma;
  std::vector<int> steps;
  for (;;) {
    const Permutation inv = p.inverse();
    int i = 3;
    while (i >= 1 && inv(i) < inv(i + 1)) --i;
    if (i == 0) break;
    p = Permutation::generator(i) * p;
    steps.push_back(i);
  }
  if (steps == generator_word(sigma)) {
    const int k = (!steps.empty() && steps.front() == 1) ? 2 : 1;
    steps.insert(steps.begin(), {k, k});
  }
  return steps;
}

IntMatrix3 theta_of_word(const std::vector<int>& word) {
  IntMatrix3 out = IntMatrix3::identity();
  for (int i : word) out = out * theta_generator(i);
  return out;
}

IntMatrix3 theta(const Permutation& sigma) {
  const IntMatrix3 a = theta_of_word(generator_word(sigma));
  if (a != theta_of_word(alternate_generator_word(sigma))) {
    throw std::logic_error("Theta depends on the factorization of " + to_string(sigma));
  }
  return a;
}

IntMatrix3 theta_action(const Permutation& sigma) { return theta(sigma.inverse()); }

KernelImage theta_kernel_image() {
  KernelImage out;
  std::set<std::array<std::array<int, 3>, 3>> image;
  for (const Permutation& p : all_permutations()) {
    const IntMatrix3 m = theta(p);
    if (m == IntMatrix3::identity()) out.kernel.push_back(p);
    image.insert(m.m);
  }
  out.image_size = image.size();
  return out;
}

namespace {

void add_bool(Report& report, std::string name, std::string inputs, std::string expected, bool ok) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.inputs = std::move(inputs);
  rec.expected = std::move(expected);
  rec.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  rec.residual = ok ? 0.0 : 1.0;
  report.add(std::move(rec));
}

}  // namespace

Report verify_theta() {
  Report report;
  const IntMatrix3 id = IntMatrix3::identity();
  const IntMatrix3 s1{{{{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}}}};
  const IntMatrix3 s2{{{{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}}}};
  const IntMatrix3 t13{{{{0, -1, 0}, {-1, 0, 0}, {0, 0, -1}}}};
  const std::array<IntMatrix3, 3> displayed{s1, s2, s1};
  std::array<IntMatrix3, 3> g;
  for (int i = 1; i <= 3; ++i) {
    g[static_cast<std::size_t>(i - 1)] = theta(Permutation::generator(i));
    add_bool(report, "theta-generator", "sigma" + std::to_string(i), to_string(displayed[static_cast<std::size_t>(i - 1)]),
             g[static_cast<std::size_t>(i - 1)] == displayed[static_cast<std::size_t>(i - 1)]);
    add_bool(report, "theta-relation", "sigma" + std::to_string(i) + "^2", "I",
             g[static_cast<std::size_t>(i - 1)] * g[static_cast<std::size_t>(i - 1)] == id);
  }
  add_bool(report, "theta-relation", "sigma1 sigma3", "= sigma3 sigma1", g[0] * g[2] == g[2] * g[0]);
  add_bool(report, "theta-relation", "braid 1 2", "s1 s2 s1 = s2 s1 s2", g[0] * g[1] * g[0] == g[1] * g[0] * g[1]);
  add_bool(report, "theta-relation", "braid 2 3", "s2 s3 s2 = s3 s2 s3", g[1] * g[2] * g[1] == g[2] * g[1] * g[2]);
  add_bool(report, "theta-special", "(13)", to_string(t13), theta(parse_cycles("(13)")) == t13);
  add_bool(report, "theta-special", "(24)", to_string(t13), theta(parse_cycles("(24)")) == t13);
  add_bool(report, "theta-special", "(13)(24)", "I", theta(parse_cycles("(13)(24)")) == id);

  const auto perms = all_permutations();
  bool hom = true, anti = true;
  for (const Permutation& a : perms) {
    const std::string in = to_string(a);
    const IntMatrix3 m = theta(a);
    add_bool(report, "theta-factorization", in, "two generator words agree",
             theta_of_word(generator_word(a)) == theta_of_word(alternate_generator_word(a)));
    add_bool(report, "theta-determinant", in, "det = +-1", std::abs(m.det()) == 1);
    const int c0 = m.m[0][0] + m.m[1][0] + m.m[2][0];
    const int c1 = m.m[0][1] + m.m[1][1] + m.m[2][1];
    const int c2 = m.m[0][2] + m.m[1][2] + m.m[2][2];
    add_bool(report, "theta-zero-sum-plane", in, "equal column sums", c0 == c1 && c1 == c2);
    for (const Permutation& b : perms) {
      hom = hom && theta(a * b) == theta(a) * theta(b);
      anti = anti && theta_action(a * b) == theta_action(b) * theta_action(a);
    }
  }
  add_bool(report, "theta-homomorphism", "all 576 pairs", "Theta(a b) = Theta(a) Theta(b)", hom);
  add_bool(report, "theta-action", "all 576 pairs", "Theta_action(a b) = Theta_action(b) Theta_action(a)", anti);

  const KernelImage ki = theta_kernel_image();
  std::vector<Permutation> expected{parse_cycles("e"), parse_cycles("(12)(34)"), parse_cycles("(13)(24)"),
                                    parse_cycles("(14)(23)")};
  std::sort(expected.begin(), expected.end());
  std::vector<Permutation> kernel = ki.kernel;
  std::sort(kernel.begin(), kernel.end());
  std::string listed;
  for (const Permutation& p : kernel) listed += (listed.empty() ? "" : " ") + to_string(p);
  add_bool(report, "theta-kernel", listed, "e (12)(34) (13)(24) (14)(23)", kernel == expected);
  add_bool(report, "theta-image-size", std::to_string(ki.image_size), "6", ki.image_size == 6);
  report.sort();
  return report;
}

// --------------------------------------------------------------- FunctionTable

namespace {

void require_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw Error(ErrorKind::InvalidInput, "a table needs at least one label");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw Error(ErrorKind::InvalidInput, "empty label");
    if (!seen.insert(l).second) throw Error(ErrorKind::InvalidInput, "duplicate label '" + l + "'");
  }
}

bool distinct(const FunctionTable::Index& x) {
  return x[0] != x[1] && x[0] != x[2] && x[0] != x[3] && x[1] != x[2] && x[1] != x[3] && x[2] != x[3];
}

const Permutation& tau() {
  static const Permutation t = parse_cycles("(123)");
  return t;
}

const Permutation& tau2() {
  static const Permutation t = tau() * tau();
  return t;
}

std::string format_values(const std::vector<std::optional<double>>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    if (v[i]) os << *v[i]; else os << "undefined";
  }
  return os.str();
}

// Accumulates one relation over many instances.
struct RelationTally {
  CheckRecord record;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  bool failed = false;

  RelationTally(std::string name, std::string expected) {
    record.name = std::move(name);
    record.expected = std::move(expected);
  }

  // Residual of sum(coefficients * values).
  void add(const std::string& witness, const std::vector<std::optional<double>>& values,
           const std::vector<double>& coefficients, double tol) {
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) {
        ++skipped;
        return;
      }
      sum += coefficients[i] * *values[i];
    }
    ++checked;
    record.residual = std::max(record.residual, std::abs(sum));
    if (std::abs(sum) > tol && !failed) {
      failed = true;
      record.inputs = witness + " values " + format_values(values);
      for (const auto& v : values) record.values.push_back(*v);
    }
  }

  CheckRecord finish() {
    record.status = failed ? CheckStatus::Fail : CheckStatus::Pass;
    const std::string counts =
        std::to_string(checked) + " instances, " + std::to_string(skipped) + " skipped";
    record.inputs = failed ? "first counterexample " + record.inputs + "; " + counts : counts;
    return record;
  }
};

}  // namespace

FunctionTable::FunctionTable(std::vector<std::string> labels) : labels_(std::move(labels)) {
  require_labels(labels_);
  const std::size_t n = labels_.size();
  values_.assign(n * n * n * n, std::nullopt);
}

int FunctionTable::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorKind::InvalidInput, "unknown label '" + std::string(label) + "'");
  return static_cast<int>(it - labels_.begin());
}

std::size_t FunctionTable::offset(const Index& x) const {
  const std::size_t n = labels_.size();
  std::size_t off = 0;
  for (int v : x) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw Error(ErrorKind::InvalidInput, "label index out of range");
    off = off * n + static_cast<std::size_t>(v);
  }
  return off;
}

std::optional<double> FunctionTable::at(const Index& x) const { return values_[offset(x)]; }
void FunctionTable::set(const Index& x, double value) { values_[offset(x)] = value; }
void FunctionTable::clear(const Index& x) { values_[offset(x)].reset(); }

bool FunctionTable::total_on_distinct() const noexcept {
  for (const Index& x : tuples(true)) {
    if (!values_[offset(x)]) return false;
  }
  return true;
}

std::vector<FunctionTable::Index> FunctionTable::tuples(bool distinct_only) const {
  const int n = static_cast<int>(labels_.size());
  std::vector<Index> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const Index x{a, b, c, d};
          if (!distinct_only || distinct(x)) out.push_back(x);
        }
  return out;
}

GTable::GTable(std::vector<std::string> labels) : labels_(std::move(labels)) {
  require_labels(labels_);
  values_.assign(labels_.size() * labels_.size(), 0.0);
}

std::size_t GTable::offset(int u, int v) const {
  const int n = static_cast<int>(labels_.size());
  if (u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorKind::InvalidInput, "label index out of range");
  return static_cast<std::size_t>(u * n + v);
}

std::string label_tuple(const FunctionTable& f, const FunctionTable::Index& x) {
  const auto& l = f.labels();
  return "(" + l[static_cast<std::size_t>(x[0])] + "," + l[static_cast<std::size_t>(x[1])] + "," +
         l[static_cast<std::size_t>(x[2])] + "," + l[static_cast<std::size_t>(x[3])] + ")";
}

Report check_relations(const FunctionTable& f, double tol) {
  RelationTally tau_sum("tau", "F(x) + F(x_tau) + F(x_tau^2) = 0");
  RelationTally sigma1("sigma1", "F(x_sigma1) = -F(x)");
  RelationTally sigma3("sigma3", "F(x_sigma3) = -F(x)");
  RelationTally cob("coboundary", "F(x1,x2,x3,x4) = F(x1,w,x3,x4) + F(w,x2,x3,x4)");
  const Permutation s1 = Permutation::generator(1);
  const Permutation s3 = Permutation::generator(3);
  const int n = static_cast<int>(f.size());
  for (const auto& x : f.tuples(false)) {
    const std::string wx = label_tuple(f, x);
    tau_sum.add(wx, {f.at(x), f.at(act_on_tuple(x, tau())), f.at(act_on_tuple(x, tau2()))}, {1, 1, 1}, tol);
    sigma1.add(wx, {f.at(act_on_tuple(x, s1)), f.at(x)}, {1, 1}, tol);
    sigma3.add(wx, {f.at(act_on_tuple(x, s3)), f.at(x)}, {1, 1}, tol);
    for (int w = 0; w < n; ++w) {
      cob.add(wx + " w=" + f.labels()[static_cast<std::size_t>(w)],
              {f.at(x), f.at({x[0], w, x[2], x[3]}), f.at({w, x[1], x[2], x[3]})}, {1, -1, -1}, tol);
    }
  }
  Report report;
  for (RelationTally* t : {&tau_sum, &sigma1, &sigma3, &cob}) report.add(t->finish());
  report.sort();
  return report;
}

RTriple f_triple(const FunctionTable& f, const FunctionTable::Index& x) {
  const auto a = f.at(x);
  const auto b = f.at(act_on_tuple(x, tau()));
  const auto c = f.at(act_on_tuple(x, tau2()));
  if (!a || !b || !c) throw Error(ErrorKind::InvalidInput, "undefined entry in the triple of " + label_tuple(f, x));
  return {*a, *b, *c};
}

const char* to_string(ThetaConvention c) noexcept {
  return c == ThetaConvention::Action ? "action" : "literal";
}

Report verify_theorem_Fsym(const FunctionTable& f, ThetaConvention convention, double tol) {
  Report report;
  const auto xs = f.tuples(true);
  for (const Permutation& sigma : all_permutations()) {
    const IntMatrix3 m = convention == ThetaConvention::Action ? theta_action(sigma) : theta(sigma);
    CheckRecord rec;
    rec.name = std::string("F-symmetry/") + to_string(convention);
    rec.expected = "F(x_sigma) = M(sigma) F(x)";
    std::size_t checked = 0, skipped = 0;
    std::string witness;
    for (const auto& x : xs) {
      RTriple lhs, rhs;
      try {
        lhs = f_triple(f, act_on_tuple(x, sigma));
        rhs = m * f_triple(f, x);
      } catch (const Error&) {
        ++skipped;
        continue;
      }
      ++checked;
      double r = 0.0;
      for (std::size_t i = 0; i < 3; ++i) r = std::max(r, std::abs(lhs[i] - rhs[i]));
      rec.residual = std::max(rec.residual, r);
      if (r > tol && witness.empty()) {
        witness = label_tuple(f, x);
        rec.values = {lhs[0], lhs[1], lhs[2], rhs[0], rhs[1], rhs[2]};
      }
    }
    rec.status = witness.empty() ? CheckStatus::Pass : CheckStatus::Fail;
    rec.inputs = "sigma=" + to_string(sigma) + "; " + std::to_string(checked) + " tuples, " +
                 std::to_string(skipped) + " skipped" + (witness.empty() ? "" : "; first counterexample x=" + witness);
    report.add(std::move(rec));
  }
  report.sort();
  return report;
}

GTable decompose_g(const FunctionTable& f, int a, int b, double tol) {
  const int n = static_cast<int>(f.size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorKind::InvalidInput, "distinguished label out of range");
  GTable g(f.labels());
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const FunctionTable::Index x{u, a, v, b};
      if (const auto val = f.at(x)) {
        g.set(u, v, *val);
      } else if (u == a || v == b) {
        g.set(u, v, 0.0);
      } else {
        throw Error(ErrorKind::RelationViolated, "F" + label_tuple(f, x) + " is undefined");
      }
    }
  }
  const FunctionTable rebuilt = build_F_from_g(g);
  for (const auto& x : f.tuples(false)) {
    const auto val = f.at(x);
    if (!val) continue;
    const double r = *rebuilt.at(x);
    if (std::abs(r - *val) > tol) {
      std::ostringstream os;
      os << "g does not reproduce F" << label_tuple(f, x) << ": " << r << " vs " << *val;
      throw Error(ErrorKind::RelationViolated, os.str());
    }
  }
  return g;
}

GTable decompose_g(const FunctionTable& f, double tol) {
  std::vector<int> order(f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return f.labels()[static_cast<std::size_t>(i)] < f.labels()[static_cast<std::size_t>(j)];
  });
  if (order.size() < 2) throw Error(ErrorKind::InvalidInput, "decomposition needs two labels");
  return decompose_g(f, order[0], order[1], tol);
}

FunctionTable build_F_from_g(const GTable& g) {
  FunctionTable f(g.labels());
  for (const auto& x : f.tuples(false)) {
    f.set(x, g.at(x[0], x[2]) - g.at(x[0], x[3]) - g.at(x[1], x[2]) + g.at(x[1], x[3]));
  }
  return f;
}

FunctionTable quadratic_table(const std::vector<double>& xs) {
  std::vector<std::string> labels;
  for (double v : xs) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    labels.emplace_back(buf, res.ptr);
  }
  FunctionTable f(std::move(labels));
  for (const auto& x : f.tuples(false)) {
    const auto at = [&](int i) { return xs[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])]; };
    f.set(x, (at(0) - at(1)) * (at(2) - at(3)));
  }
  return f;
}

}  // namespace rotquad
