#include "qft/examples.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qft::examples {

std::vector<std::string> sft_words(const std::vector<std::vector<int>>& A, int depth) {
  const std::size_t d = A.size();
  if (d > 10) throw std::invalid_argument("sft_words: at most 10 symbols");
  std::vector<std::string> out{""}, frontier;
  for (std::size_t v = 0; v < d; ++v) frontier.push_back(std::string(1, static_cast<char>('0' + v)));
  for (int n = 1; n <= depth; ++n) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      auto last = static_cast<std::size_t>(w.back() - '0');
      for (std::size_t v = 0; v < d; ++v)
        if (A[last][v]) next.push_back(w + static_cast<char>('0' + v));
    }
    frontier = std::move(next);
  }
  return out;
}

Puzzle sft_puzzle(const std::vector<std::vector<int>>& A, int depth) {
  auto words = sft_words(A, depth);
  return from_subshift(std::set<std::string>(words.begin(), words.end()), depth);
}

Puzzle full_shift(int symbols, int depth) {
  std::vector<std::vector<int>> A(static_cast<std::size_t>(symbols), std::vector<int>(static_cast<std::size_t>(symbols), 1));
  return sft_puzzle(A, depth);
}

Puzzle golden_mean(int depth) { return sft_puzzle({{1, 1}, {1, 0}}, depth); }

Puzzle union_collapse_puzzle(const LanguageFamily& words, int depth) {
  const std::string root = "root";
  PuzzleBuilder b(depth);
  b.add(root, 0);
  std::vector<std::pair<std::string, bool>> placed;  // word, collapses
  for (int n = 1; n <= depth; ++n)
    for (int k = 0; k <= n; ++k)
      for (const auto& w : words(k, n)) {
        if (static_cast<int>(w.size()) != n) throw std::invalid_argument("language word has the wrong length");
        b.add(w, n);
        placed.emplace_back(w, k == n && k >= 1);
      }
  auto at = [&](const std::string& w) {
    auto id = b.find(w.empty() ? root : w);
    if (!id) throw PuzzleError("language family is not closed: missing '" + w + "'");
    return *id;
  };
  for (const auto& [w, collapses] : placed) {
    PieceId v = at(w);
    if (collapses) {
      PieceId z = at(std::string(w.size() - 1, '0'));
      b.set_i(v, z);
      b.set_f(v, z);
    } else {
      b.set_i(v, at(w.substr(0, w.size() - 1)));
      b.set_f(v, at(w.substr(1)));
    }
  }
  return std::move(b).build();
}

namespace {

char fresh_letter(int k) {
  static const std::string pool = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  if (k < 0 || k >= static_cast<int>(pool.size())) throw std::invalid_argument("out of fresh letters");
  return pool[static_cast<std::size_t>(k)];
}

void all_words(const std::string& alphabet, int n, std::string& cur, std::vector<std::string>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (char c : alphabet) {
    cur.push_back(c);
    all_words(alphabet, n, cur, out);
    cur.pop_back();
  }
}

std::vector<std::string> all_words(const std::string& alphabet, int n) {
  std::vector<std::string> out;
  std::string cur;
  all_words(alphabet, n, cur, out);
  return out;
}

}  // namespace

Puzzle nasty_puzzle(int depth) {
  return union_collapse_puzzle(
      [](int k, int n) -> std::vector<std::string> {
        if (k == 0) return {std::string(static_cast<std::size_t>(n), '0')};
        std::string alpha{fresh_letter(2 * (k - 1)), fresh_letter(2 * (k - 1) + 1)};
        return all_words(alpha, n);
      },
      depth);
}

int bad_zeta_period(int n) {
  // blocks 1; 1,2; 1,2,3; ...
  int block = 1;
  while (n > block) {
    n -= block;
    ++block;
  }
  return n;
}

Puzzle bad_zeta_puzzle(int depth) {
  std::vector<int> offset{0};
  for (int k = 1; k <= depth; ++k) offset.push_back(offset.back() + bad_zeta_period(k));
  return union_collapse_puzzle(
      [offset](int k, int n) -> std::vector<std::string> {
        if (k == 0) return all_words("01", n);
        int per = bad_zeta_period(k);
        std::vector<std::string> out;
        for (int j = 0; j < per; ++j) {
          std::string w;
          for (int m = 0; m < n; ++m) w.push_back(fresh_letter(offset[static_cast<std::size_t>(k - 1)] + (j + m) % per));
          out.push_back(w);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      },
      depth);
}

Puzzle non_determined_puzzle() {
  PuzzleBuilder b(4);
  PieceId R = b.add("R", 0);
  PieceId r = b.add("r", 1);
  PieceId p = b.add("p", 2), q = b.add("q", 2);
  PieceId u = b.add("u", 3), v = b.add("v", 3);
  PieceId u2 = b.add("u'", 4), v2 = b.add("v'", 4);
  b.set_i(r, R);
  b.set_f(r, R);
  for (PieceId x : {p, q}) {
    b.set_i(x, r);
    b.set_f(x, r);
  }
  b.set_i(u, p);
  b.set_i(v, q);
  b.set_f(u, p);
  b.set_f(v, p);
  b.set_i(u2, u);
  b.set_i(v2, v);
  b.set_f(u2, u);
  b.set_f(v2, u);
  return std::move(b).build();
}

}  // namespace qft::examples
