#pragma once

#include "ietflow/numeric.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ietflow {

// Pair (pi0, pi1) on an alphabet of d symbols. Symbols are indices into
// alphabet(); positions are 0-based internally and 1-based in text.
class LabeledPermutation {
public:
  LabeledPermutation() = default;
  LabeledPermutation(std::vector<std::string> alphabet, std::vector<int> top,
                     std::vector<int> bottom);

  // sigma = pi1 o pi0^{-1} given 1-based; symbols are A, B, C, ... at the
  // top positions in order.
  static LabeledPermutation from_sigma(const std::vector<int>& sigma);
  // "top: A B C / bottom: C B A", "A B C / C B A", "3 2 1" or "321".
  static LabeledPermutation parse(const std::string& text);

  size_t d() const { return top_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int top(size_t pos) const { return top_[pos]; }
  int bottom(size_t pos) const { return bottom_[pos]; }
  const std::vector<int>& top_row() const { return top_; }
  const std::vector<int>& bottom_row() const { return bottom_; }
  int pos0(int sym) const { return pos0_[sym]; }
  int pos1(int sym) const { return pos1_[sym]; }
  int symbol(const std::string& name) const;

  // 1-based sigma(i) = pi1(pi0^{-1}(i)).
  std::vector<int> sigma() const;
  // Relabels so that the symbol at top position i is the i-th letter.
  LabeledPermutation canonical() const;
  // Both rows reversed: the l-action on positions.
  LabeledPermutation reversed() const;

  std::string text() const;
  std::string sigma_text() const;

  friend bool operator==(const LabeledPermutation& a, const LabeledPermutation& b) {
    return a.alphabet_ == b.alphabet_ && a.top_ == b.top_ && a.bottom_ == b.bottom_;
  }

private:
  std::vector<std::string> alphabet_;
  std::vector<int> top_, bottom_, pos0_, pos1_;
};

using TranslationMatrix = std::vector<std::vector<int>>;

enum class Degeneracy { deg1, deg2, deg3, deg4 };
const char* to_string(Degeneracy tag);

enum class RauzyKind { top, bottom };

bool is_irreducible(const LabeledPermutation& p);
bool is_symmetric(const LabeledPermutation& p);
std::optional<Degeneracy> degeneracy(const LabeledPermutation& p);
bool is_pierost(const LabeledPermutation& p);
TranslationMatrix translation_matrix(const LabeledPermutation& p);

// Image of x under the interval exchange, by Omega-translation.
Rational iet_apply(const LabeledPermutation& p, const std::vector<Rational>& lengths,
                   const Rational& x);
// Symbol whose top interval contains x.
int iet_interval(const LabeledPermutation& p, const std::vector<Rational>& lengths,
                 const Rational& x);
Rational iet_inverse(const LabeledPermutation& p, const std::vector<Rational>& lengths,
                     const Rational& x);

// Permutation part of one polygonal induction step.
LabeledPermutation rauzy_move(const LabeledPermutation& p, RauzyKind kind);

using SigmaKey = std::vector<int>;

// Closure of the canonical form of seed under both Rauzy moves (and the
// l-action when extended). Keys are 1-based sigma vectors, sorted.
std::vector<SigmaKey> rauzy_class(const LabeledPermutation& seed, bool extended,
                                  size_t cap = 1000000);
// All irreducible sigma of size d, partitioned into classes.
std::vector<std::vector<SigmaKey>> all_rauzy_classes(size_t d, bool extended,
                                                     size_t cap = 1000000);

LabeledPermutation find_pierost(const std::vector<SigmaKey>& cls);

struct AcceptableSymbols {
  int alpha1, alpha2, gamma1, gamma2;
};
std::optional<AcceptableSymbols> find_acceptable_symbols(const LabeledPermutation& p);
bool satisfies_acceptable(const LabeledPermutation& p, const AcceptableSymbols& s);

} // namespace ietflow
