#ifndef MULBOUND_WORDS_HPP
#define MULBOUND_WORDS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mulbound/bounds.hpp"

namespace mulbound {

// Letters of the expansion alphabet. A splits off the last equation, B0 keeps
// the rank defect while cutting a hyperplane, B1 drops it.
enum class Letter : unsigned char { A = 0, B0 = 1, B1 = 2 };

inline const char* to_string(Letter l) {
  switch (l) {
    case Letter::A: return "A";
    case Letter::B0: return "B0";
    case Letter::B1: return "B1";
  }
  return "?";
}

/// Parameter triple carried along a word; recorded after every letter.
struct TripleState {
  int a = 0, b = 0, delta = 0;
  bool operator==(const TripleState&) const = default;
};

struct Word {
  std::vector<Letter> letters;
  std::vector<TripleState> trace;  // state after each letter

  int b1_count() const {
    return static_cast<int>(std::count(letters.begin(), letters.end(), Letter::B1));
  }
  int a_count() const {
    return static_cast<int>(std::count(letters.begin(), letters.end(), Letter::A));
  }
  int length() const { return static_cast<int>(letters.size()); }

  std::string str() const {
    std::string s;
    for (Letter l : letters) s += to_string(l);
    return s;
  }
  /// Collapse B0/B1 to B.
  std::string collapsed_str() const {
    std::string s;
    for (Letter l : letters) s += (l == Letter::A ? 'A' : 'B');
    return s;
  }
  bool operator<(const Word& o) const { return letters < o.letters; }
  bool operator==(const Word& o) const { return letters == o.letters; }
};

namespace detail {

// Full state while expanding; (i, M) pin down delta = M + b - i.
struct ExpandFrame {
  int i, M, a, b;
};

inline void expand_rec(const ExpandFrame& st, std::vector<Letter>& letters,
                       std::vector<TripleState>& trace, std::vector<Word>& out) {
  if (st.b == 0) {
    out.push_back(Word{letters, trace});
    return;
  }
  const int D = st.M + st.b - st.i;

  // Child A: (i-1, M, a-D, b-1), triple (a'-D', b'-1, D').
  {
    ExpandFrame child{st.i - 1, st.M, st.a - D, st.b - 1};
    letters.push_back(Letter::A);
    trace.push_back(TripleState{child.a, child.b, child.M + child.b - child.i});
    expand_rec(child, letters, trace, out);
    letters.pop_back();
    trace.pop_back();
  }

  // Child B: mirror exactly the branch the DP maximum selects.
  const ExpandFrame b0{st.i - 1, st.M - 1, st.a - D, st.b};
  const ExpandFrame b1{st.i - 1, st.M - 1, st.a - D - (st.b - 1), st.b - 1};
  bool take_b0 = false;
  if (feasible(b0.i, b0.M, b0.a, b0.b)) {
    const BigInt v0 = bound_dp_unchecked(b0.i, b0.M, b0.a, b0.b);
    const BigInt v1 = bound_dp_unchecked(b1.i, b1.M, b1.a, b1.b);
    take_b0 = v0 >= v1;
  }
  const ExpandFrame& child = take_b0 ? b0 : b1;
  letters.push_back(take_b0 ? Letter::B0 : Letter::B1);
  trace.push_back(TripleState{child.a, child.b, child.M + child.b - child.i});
  expand_rec(child, letters, trace, out);
  letters.pop_back();
  trace.pop_back();
}

}  // namespace detail

/// Leaf words of the bound_dp expansion tree; |result| = bound_dp(i,M,a,b).
/// The empty word corresponds to a state that is already at b = 0.
inline std::vector<Word> expand_words(int i, int M, int a, int b) {
  detail::require_feasible(i, M, a, b, "expand_words");
  std::vector<Word> out;
  std::vector<Letter> letters;
  std::vector<TripleState> trace;
  detail::expand_rec(detail::ExpandFrame{i, M, a, b}, letters, trace, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Split a word set by the number of B1 letters. Buckets are disjoint and
/// cover the input.
inline std::map<int, std::vector<Word>> partition_by_b1(const std::vector<Word>& words) {
  std::map<int, std::vector<Word>> part;
  for (const auto& w : words) part[w.b1_count()].push_back(w);
  return part;
}

/// True iff collapsing B0/B1 to B leaves all words pairwise distinct.
inline bool check_collapse_injectivity(const std::vector<Word>& words) {
  std::set<std::string> seen;
  for (const auto& w : words)
    if (!seen.insert(w.collapsed_str()).second) return false;
  return true;
}

struct WordCapBucket {
  int l = 0;
  long long count = 0;
  BigInt count_cap;      // C(A_l, b-l), or 1 for l = b
  long long max_len = 0;
  long long len_cap = -1;  // A_l; -1 when the length bound is skipped (l = b)
  bool count_ok = false;
  bool len_ok = false;
};

struct WordCapReport {
  int i = 0, M = 0, a = 0, b = 0;
  long long total_words = 0;
  std::vector<WordCapBucket> buckets;
  bool ok = false;
};

/// Checks |W_l| <= C(A_l, b-l) and max word length <= A_l per bucket, with
/// A_l = [(a-lb)/(delta-l)]; for l = b only |W_b| <= 1 is asserted.
inline WordCapReport check_word_caps(int i, int M, int a, int b) {
  detail::require_feasible(i, M, a, b, "check_word_caps");
  const auto words = expand_words(i, M, a, b);
  const auto part = partition_by_b1(words);
  const int D = M + b - i;

  WordCapReport rep;
  rep.i = i;
  rep.M = M;
  rep.a = a;
  rep.b = b;
  rep.total_words = static_cast<long long>(words.size());
  rep.ok = true;
  for (int l = 0; l <= b; ++l) {
    WordCapBucket bucket;
    bucket.l = l;
    auto it = part.find(l);
    const std::vector<Word>* wl = (it == part.end()) ? nullptr : &it->second;
    bucket.count = wl ? static_cast<long long>(wl->size()) : 0;
    if (wl)
      for (const auto& w : *wl)
        bucket.max_len = std::max(bucket.max_len, static_cast<long long>(w.length()));
    if (l == b) {
      bucket.count_cap = 1;
      bucket.len_cap = -1;
      bucket.count_ok = bucket.count <= 1;
      bucket.len_ok = true;
    } else {
      const long long A_l = (static_cast<long long>(a) - static_cast<long long>(l) * b) / (D - l);
      bucket.count_cap = binomial(A_l, b - l);
      bucket.len_cap = A_l;
      bucket.count_ok = BigInt(bucket.count) <= bucket.count_cap;
      bucket.len_ok = bucket.max_len <= A_l;
    }
    rep.ok = rep.ok && bucket.count_ok && bucket.len_ok;
    rep.buckets.push_back(std::move(bucket));
  }
  return rep;
}

}  // namespace mulbound

#endif
