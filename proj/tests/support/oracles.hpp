// Copyright 2026 The labgrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's numeric paths: tokenisation is ASCII-only, vectors are std::map
// based, sums are plain loops in long double.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::string> ascii_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct DocFreq {
  std::map<std::string, int> df;
  int n = 0;

  void add(const std::string& text) {
    auto toks = ascii_tokens(text);
    std::set<std::string> uniq(toks.begin(), toks.end());
    for (const auto& t : uniq) ++df[t];
    ++n;
  }
  long double idf(const std::string& t) const {
    auto it = df.find(t);
    const long double d = it == df.end() ? 0 : it->second;
    return std::log((1.0L + n) / (1.0L + d)) + 1.0L;
  }
};

inline std::map<std::string, long double> tfidf(const std::string& text, const DocFreq& stats) {
  std::map<std::string, int> tf;
  for (const auto& t : ascii_tokens(text)) ++tf[t];
  std::map<std::string, long double> v;
  for (const auto& [t, c] : tf) v[t] = (1.0L + std::log(static_cast<long double>(c))) * stats.idf(t);
  return v;
}

inline double cosine(const std::map<std::string, long double>& a, const std::map<std::string, long double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (const auto& [t, w] : a) {
    na += w * w;
    auto it = b.find(t);
    if (it != b.end()) dot += w * it->second;
  }
  for (const auto& [t, w] : b) nb += w * w;
  if (na == 0 || nb == 0) return 0.0;
  return static_cast<double>(std::clamp(dot / std::sqrt(na * nb), 0.0L, 1.0L));
}

inline double text_cosine(const std::string& a, const std::string& b, const DocFreq& stats) {
  return cosine(tfidf(a, stats), tfidf(b, stats));
}

// Greedy first-wins near-duplicate filter, quadratic in the input.
struct GreedyResult {
  std::vector<std::string> kept;
  std::vector<std::pair<std::string, std::string>> dropped;  // (id, duplicate_of)
};

inline GreedyResult greedy_dedup(const std::vector<std::pair<std::string, std::string>>& items, double threshold,
                                 const DocFreq& stats) {
  GreedyResult r;
  std::vector<std::size_t> kept_idx;
  for (std::size_t i = 0; i < items.size(); ++i) {
    bool drop = false;
    for (std::size_t k : kept_idx) {
      if (text_cosine(items[i].second, items[k].second, stats) >= threshold) {
        r.dropped.emplace_back(items[i].first, items[k].first);
        drop = true;
        break;
      }
    }
    if (!drop) {
      kept_idx.push_back(i);
      r.kept.push_back(items[i].first);
    }
  }
  return r;
}

struct ToySplit {
  double threshold;
  double left_mean;
  double right_mean;
};

// Exhaustive single-split search: every midpoint between adjacent distinct
// values with at least two rows per side; the smallest SSE wins, the first
// threshold on ties.
inline ToySplit best_single_split(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> values(x);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  long double best_sse = INFINITY;
  ToySplit best{};
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double t = (values[i] + values[i + 1]) / 2;
    long double sl = 0, sr = 0;
    int nl = 0, nr = 0;
    for (std::size_t r = 0; r < x.size(); ++r) {
      if (x[r] < t) {
        sl += y[r];
        ++nl;
      } else {
        sr += y[r];
        ++nr;
      }
    }
    if (nl < 2 || nr < 2) continue;
    const long double ml = sl / nl, mr = sr / nr;
    long double sse = 0;
    for (std::size_t r = 0; r < x.size(); ++r) {
      const long double d = y[r] - (x[r] < t ? ml : mr);
      sse += d * d;
    }
    if (sse < best_sse) {
      best_sse = sse;
      best = {t, static_cast<double>(ml), static_cast<double>(mr)};
    }
  }
  return best;
}

// Textbook sample Pearson correlation.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / n, my = sy / n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// Average ranks (1-based), ties share the mean of their positions.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int less = 0, equal = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < x[i]) ++less;
      if (x[j] == x[i]) ++equal;
    }
    r[i] = less + (equal + 1) / 2.0;
  }
  return r;
}

}  // namespace oracle
