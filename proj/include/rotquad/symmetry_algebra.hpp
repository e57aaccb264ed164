#pragma once

// S4 acting on 4-tuples, the 3-dimensional integer representation Theta, and
// functions F: X^4 -> R with their cyclic triples and coboundary
// decompositions F(x1,x2,x3,x4) = g(x1,x3) - g(x1,x4) - g(x2,x3) + g(x2,x4).

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotquad/report.hpp"

namespace rotquad {

/// Bijection of {1,2,3,4}; images[i-1] = sigma(i).
class Permutation {
 public:
  Permutation() noexcept : images_{1, 2, 3, 4} {}
  /// Throws InvalidInput unless `images` is a bijection of {1,2,3,4}.
  explicit Permutation(std::array<int, 4> images);

  static Permutation identity() noexcept { return {}; }
  /// sigma_i = (i, i+1), i in {1,2,3}.
  static Permutation generator(int i);

  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::array<int, 4>& images() const noexcept { return images_; }

  /// Function composition: (a * b)(i) = a(b(i)).
  Permutation operator*(const Permutation& rhs) const noexcept;
  Permutation inverse() const noexcept;
  bool is_identity() const noexcept { return images_ == std::array<int, 4>{1, 2, 3, 4}; }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::array<int, 4> images_;
};

/// Cycle notation such as "(123)" or "(12)(34)"; "e" for the identity.
std::string to_string(const Permutation& p);

/// Whitespace-insensitive cycle notation; "e" or "()" is the identity and
/// cycles compose right to left. Throws ParseError.
Permutation parse_cycles(std::string_view text);

/// All 24 elements, ordered by image arrays.
std::vector<Permutation> all_permutations();

/// x_sigma = (x[sigma(1)], ..., x[sigma(4)]). A right action:
/// act_on_tuple(act_on_tuple(x, s), r) == act_on_tuple(x, s * r).
template <class T>
std::array<T, 4> act_on_tuple(const std::array<T, 4>& x, const Permutation& s) {
  return {x[static_cast<std::size_t>(s(1) - 1)], x[static_cast<std::size_t>(s(2) - 1)],
          x[static_cast<std::size_t>(s(3) - 1)], x[static_cast<std::size_t>(s(4) - 1)]};
}

using RTriple = std::array<double, 3>;

struct IntMatrix3 {
  std::array<std::array<int, 3>, 3> m{};

  static IntMatrix3 identity() noexcept;
  IntMatrix3 operator*(const IntMatrix3& rhs) const noexcept;
  RTriple operator*(const RTriple& v) const noexcept;
  IntMatrix3 transpose() const noexcept;
  int det() const noexcept;
  friend bool operator==(const IntMatrix3&, const IntMatrix3&) = default;
};

std::string to_string(const IntMatrix3& a);

/// Theta on the generating transpositions sigma_1, sigma_2, sigma_3.
IntMatrix3 theta_generator(int i);

/// Two generator words for sigma (indices of sigma_i, composed left to right
/// as functions): a right-to-left bubble reduction and a left-acting
/// reduction. They differ for every sigma.
std::vector<int> generator_word(const Permutation& sigma);
std::vector<int> alternate_generator_word(const Permutation& sigma);

IntMatrix3 theta_of_word(const std::vector<int>& word);

/// Theta(sigma) as a homomorphism for function composition. Throws
/// std::logic_error if the two generator words disagree.
IntMatrix3 theta(const Permutation& sigma);

/// Theta(sigma^-1): the assignment compatible with the right action on tuples,
/// so that F(x_sigma) = theta_action(sigma) F(x).
IntMatrix3 theta_action(const Permutation& sigma);

struct KernelImage {
  std::vector<Permutation> kernel;
  std::size_t image_size = 0;
};

KernelImage theta_kernel_image();

/// Generator displays, Coxeter relations, factorization independence,
/// (anti-)homomorphism, kernel, image size and the zero-sum plane.
Report verify_theta();

/// Real-valued function on X^4 for a finite labelled set X. Entries may be
/// undefined; relation checks skip instances that touch an undefined entry.
class FunctionTable {
 public:
  using Index = std::array<int, 4>;

  /// Labels must be distinct and non-empty.
  explicit FunctionTable(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Throws InvalidInput for unknown labels.
  int index_of(std::string_view label) const;

  std::optional<double> at(const Index& x) const;
  void set(const Index& x, double value);
  void clear(const Index& x);

  /// Every tuple with four distinct entries has a value.
  bool total_on_distinct() const noexcept;

  /// All tuples (with repeats when `distinct_only` is false), lexicographic.
  std::vector<Index> tuples(bool distinct_only) const;

 private:
  std::size_t offset(const Index& x) const;

  std::vector<std::string> labels_;
  std::vector<std::optional<double>> values_;
};

/// g: X^2 -> R on the same labels as a FunctionTable.
class GTable {
 public:
  explicit GTable(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double at(int u, int v) const { return values_.at(offset(u, v)); }
  void set(int u, int v, double value) { values_.at(offset(u, v)) = value; }

  friend bool operator==(const GTable&, const GTable&) = default;

 private:
  std::size_t offset(int u, int v) const;

  std::vector<std::string> labels_;
  std::vector<double> values_;
};

std::string label_tuple(const FunctionTable& f, const FunctionTable::Index& x);

/// Cyclic sum, sign flips under sigma_1 and sigma_3, and the coboundary
/// relation for every w. One record per relation; a failing record carries the
/// first counterexample. `tol` is 0 for exact integer tables.
Report check_relations(const FunctionTable& f, double tol = 1e-9);

/// (F(x), F(x_tau), F(x_tau^2)). Throws InvalidInput if an entry is undefined.
RTriple f_triple(const FunctionTable& f, const FunctionTable::Index& x);

enum class ThetaConvention { Action, Literal };

const char* to_string(ThetaConvention c) noexcept;

/// F(x_sigma) = M(sigma) F(x) for all 24 sigma and all distinct tuples, with
/// M = theta_action (or the literal theta). One record per sigma.
Report verify_theorem_Fsym(const FunctionTable& f, ThetaConvention convention = ThetaConvention::Action,
                           double tol = 1e-9);

/// g(u, v) = F(u, a, v, b). Entries F(a, a, v, b) and F(u, a, b, b) that are
/// undefined are taken as 0, as the sign relations force. Throws
/// RelationViolated when a needed entry is missing or g does not reproduce F
/// on every defined entry within `tol`.
GTable decompose_g(const FunctionTable& f, int a, int b, double tol = 1e-9);
/// Default distinguished labels: the two lexicographically smallest.
GTable decompose_g(const FunctionTable& f, double tol = 1e-9);

FunctionTable build_F_from_g(const GTable& g);

/// q(x1,x2,x3,x4) = (x1 - x2)(x3 - x4) on a finite set of reals, labelled by
/// their shortest round-trip decimal form.
FunctionTable quadratic_table(const std::vector<double>& xs);

}  // namespace rotquad
