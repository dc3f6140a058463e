#include "ietflow/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ietflow {

namespace {

std::vector<int> inverse(const std::vector<int>& row) {
  std::vector<int> inv(row.size(), -1);
  for (size_t i = 0; i < row.size(); ++i) inv[row[i]] = static_cast<int>(i);
  return inv;
}

std::string trim(std::string s) {
  auto ns = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), ns));
  s.erase(std::find_if(s.rbegin(), s.rend(), ns).base(), s.end());
  return s;
}

std::vector<std::string> tokens(const std::string& row) {
  std::istringstream is(row);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  if (out.size() == 1 && out[0].size() > 1) {
    std::string one = out[0];
    out.clear();
    for (char c : one) out.emplace_back(1, c);
  }
  return out;
}

std::string letter_name(size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  return "S" + std::to_string(i + 1);
}

} // namespace

LabeledPermutation::LabeledPermutation(std::vector<std::string> alphabet, std::vector<int> top,
                                       std::vector<int> bottom)
    : alphabet_(std::move(alphabet)), top_(std::move(top)), bottom_(std::move(bottom)) {
  size_t d = alphabet_.size();
  if (d < 2) throw DomainError("a permutation needs at least 2 symbols");
  if (top_.size() != d || bottom_.size() != d) throw DomainError("row length differs from alphabet size");
  for (const auto* row : {&top_, &bottom_}) {
    std::vector<int> seen(d, 0);
    for (int s : *row) {
      if (s < 0 || static_cast<size_t>(s) >= d || seen[s]++) throw DomainError("rows are not bijections");
    }
  }
  pos0_ = inverse(top_);
  pos1_ = inverse(bottom_);
}

LabeledPermutation LabeledPermutation::from_sigma(const std::vector<int>& sigma) {
  size_t d = sigma.size();
  std::vector<std::string> names;
  for (size_t i = 0; i < d; ++i) names.push_back(letter_name(i));
  std::vector<int> top(d), bottom(d, -1);
  std::iota(top.begin(), top.end(), 0);
  for (size_t i = 0; i < d; ++i) {
    int s = sigma[i];
    if (s < 1 || static_cast<size_t>(s) > d || bottom[s - 1] != -1)
      throw DomainError("sigma is not a permutation of 1..d");
    bottom[s - 1] = static_cast<int>(i);
  }
  return LabeledPermutation(names, top, bottom);
}

LabeledPermutation LabeledPermutation::parse(const std::string& raw) {
  std::string text = trim(raw);
  if (auto k = text.rfind("-order"); k != std::string::npos && k + 6 == text.size())
    text = trim(text.substr(0, k));
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')')
    text = trim(text.substr(1, text.size() - 2));
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    auto t = tokens(text);
    std::vector<int> sigma;
    for (const auto& s : t) {
      if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit))
        throw DomainError("cannot parse permutation: " + raw);
      sigma.push_back(std::stoi(s));
    }
    return from_sigma(sigma);
  }
  std::string top = trim(text.substr(0, slash)), bot = trim(text.substr(slash + 1));
  if (top.rfind("top:", 0) == 0) top = trim(top.substr(4));
  if (bot.rfind("bottom:", 0) == 0) bot = trim(bot.substr(7));
  auto tt = tokens(top), bt = tokens(bot);
  if (tt.size() != bt.size() || tt.empty()) throw DomainError("rows differ in length: " + raw);
  std::vector<int> trow, brow;
  for (size_t i = 0; i < tt.size(); ++i) trow.push_back(static_cast<int>(i));
  for (const auto& s : bt) {
    auto it = std::find(tt.begin(), tt.end(), s);
    if (it == tt.end()) throw DomainError("bottom symbol not in top row: " + s);
    brow.push_back(static_cast<int>(it - tt.begin()));
  }
  return LabeledPermutation(tt, trow, brow);
}

int LabeledPermutation::symbol(const std::string& name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) throw DomainError("unknown symbol " + name);
  return static_cast<int>(it - alphabet_.begin());
}

std::vector<int> LabeledPermutation::sigma() const {
  std::vector<int> s(d());
  for (size_t i = 0; i < d(); ++i) s[i] = pos1_[top_[i]] + 1;
  return s;
}

LabeledPermutation LabeledPermutation::canonical() const { return from_sigma(sigma()); }

LabeledPermutation LabeledPermutation::reversed() const {
  std::vector<int> t(top_.rbegin(), top_.rend()), b(bottom_.rbegin(), bottom_.rend());
  return LabeledPermutation(alphabet_, t, b);
}

std::string LabeledPermutation::text() const {
  std::string s = "top:";
  for (int a : top_) s += " " + alphabet_[a];
  s += " / bottom:";
  for (int a : bottom_) s += " " + alphabet_[a];
  return s;
}

std::string LabeledPermutation::sigma_text() const {
  std::string s = "(";
  auto sg = sigma();
  for (size_t i = 0; i < sg.size(); ++i) s += (i ? " " : "") + std::to_string(sg[i]);
  return s + ")";
}

const char* to_string(Degeneracy tag) {
  switch (tag) {
  case Degeneracy::deg1: return "deg1";
  case Degeneracy::deg2: return "deg2";
  case Degeneracy::deg3: return "deg3";
  case Degeneracy::deg4: return "deg4";
  }
  return "?";
}

bool is_irreducible(const LabeledPermutation& p) {
  auto s = p.sigma();
  int mx = 0;
  for (size_t k = 1; k < s.size(); ++k) {
    mx = std::max(mx, s[k - 1]);
    if (mx == static_cast<int>(k)) return false;
  }
  return true;
}

bool is_symmetric(const LabeledPermutation& p) {
  int d = static_cast<int>(p.d());
  for (int a = 0; a < d; ++a)
    if (p.pos1(a) != d - 1 - p.pos0(a)) return false;
  return true;
}

std::optional<Degeneracy> degeneracy(const LabeledPermutation& p) {
  if (!is_irreducible(p)) throw DomainError("degeneracy is defined for irreducible permutations");
  int d = static_cast<int>(p.d());
  auto s = p.sigma();
  std::vector<int> si(d + 1);
  for (int i = 1; i <= d; ++i) si[s[i - 1]] = i;
  auto sig = [&](int i) { return s[i - 1]; };
  for (int j = 1; j < d; ++j)
    if (sig(j + 1) == sig(j) + 1) return Degeneracy::deg1;
  if (si[d] + 1 <= d && sig(si[d] + 1) == sig(d) + 1) return Degeneracy::deg2;
  if (sig(1) - 1 >= 1 && si[1] - 1 == si[sig(1) - 1]) return Degeneracy::deg3;
  if (si[d] == si[1] - 1 && sig(d) == sig(1) - 1) return Degeneracy::deg4;
  return std::nullopt;
}

bool is_pierost(const LabeledPermutation& p) {
  auto s = p.sigma();
  int d = static_cast<int>(s.size());
  return s[0] == d && s[d - 1] == 1;
}

TranslationMatrix translation_matrix(const LabeledPermutation& p) {
  size_t d = p.d();
  TranslationMatrix om(d, std::vector<int>(d, 0));
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      int ia = static_cast<int>(a), ib = static_cast<int>(b);
      if (p.pos0(ia) < p.pos0(ib) && p.pos1(ia) > p.pos1(ib)) om[a][b] = 1;
      else if (p.pos0(ia) > p.pos0(ib) && p.pos1(ia) < p.pos1(ib)) om[a][b] = -1;
    }
  return om;
}

int iet_interval(const LabeledPermutation& p, const std::vector<Rational>& lengths,
                 const Rational& x) {
  if (lengths.size() != p.d()) throw DomainError("length vector size differs from d");
  Rational left = 0;
  for (size_t i = 0; i < p.d(); ++i) {
    const Rational& l = lengths[p.top(i)];
    if (l < 0) throw DomainError("negative length");
    if (x >= left && x < left + l) return p.top(i);
    left += l;
  }
  throw DomainError("point outside [0, |lambda|)");
}

Rational iet_apply(const LabeledPermutation& p, const std::vector<Rational>& lengths,
                   const Rational& x) {
  int a = iet_interval(p, lengths, x);
  auto om = translation_matrix(p);
  Rational y = x;
  for (size_t b = 0; b < p.d(); ++b)
    if (om[a][b] != 0) y += om[a][b] * lengths[b];
  return y;
}

Rational iet_inverse(const LabeledPermutation& p, const std::vector<Rational>& lengths,
                     const Rational& x) {
  Rational left = 0;
  for (size_t i = 0; i < p.d(); ++i) {
    int a = p.bottom(i);
    if (x >= left && x < left + lengths[a]) {
      auto om = translation_matrix(p);
      Rational y = x;
      for (size_t b = 0; b < p.d(); ++b)
        if (om[a][b] != 0) y -= om[a][b] * lengths[b];
      return y;
    }
    left += lengths[a];
  }
  throw DomainError("point outside [0, |lambda|)");
}

LabeledPermutation rauzy_move(const LabeledPermutation& p, RauzyKind kind) {
  size_t d = p.d();
  std::vector<int> top = p.top_row(), bottom = p.bottom_row();
  if (kind == RauzyKind::bottom) {
    int winner = bottom[d - 1], loser = top[d - 1];
    top.pop_back();
    auto it = std::find(top.begin(), top.end(), winner);
    top.insert(it + 1, loser);
  } else {
    int winner = top[d - 1], loser = bottom[d - 1];
    bottom.pop_back();
    auto it = std::find(bottom.begin(), bottom.end(), winner);
    bottom.insert(it + 1, loser);
  }
  return LabeledPermutation(p.alphabet(), top, bottom);
}

namespace {

bool acceptable_with(const LabeledPermutation& p, const TranslationMatrix& om,
                     const AcceptableSymbols& s) {
  int first = p.top(0), last = p.top(p.d() - 1);
  std::array<int, 4> q{s.alpha1, s.alpha2, s.gamma1, s.gamma2};
  for (int i = 0; i < 4; ++i) {
    if (q[i] == first || q[i] == last) return false;
    for (int j = i + 1; j < 4; ++j)
      if (q[i] == q[j]) return false;
  }
  return om[s.alpha1][s.alpha2] == 0 && om[s.alpha2][s.alpha1] == 0 &&
         om[s.alpha1][s.gamma2] * om[s.alpha2][s.gamma1] == 0 &&
         om[s.alpha1][s.gamma1] * om[s.alpha2][s.gamma2] != 0;
}

} // namespace

bool satisfies_acceptable(const LabeledPermutation& p, const AcceptableSymbols& s) {
  return acceptable_with(p, translation_matrix(p), s);
}

std::optional<AcceptableSymbols> find_acceptable_symbols(const LabeledPermutation& p) {
  if (!is_irreducible(p)) throw DomainError("acceptable symbols: reducible permutation");
  if (!is_pierost(p)) throw DomainError("acceptable symbols: sigma(1)=d and sigma(d)=1 required");
  if (degeneracy(p)) throw DomainError("acceptable symbols: degenerate permutation");
  int d = static_cast<int>(p.d());
  auto om = translation_matrix(p);
  for (int a1 = 0; a1 < d; ++a1)
    for (int a2 = 0; a2 < d; ++a2)
      for (int g1 = 0; g1 < d; ++g1)
        for (int g2 = 0; g2 < d; ++g2) {
          AcceptableSymbols s{a1, a2, g1, g2};
          if (acceptable_with(p, om, s)) return s;
        }
  return std::nullopt;
}

} // namespace ietflow
