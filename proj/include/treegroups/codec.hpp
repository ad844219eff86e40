// Copyright 2026 The treegroups Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREEGROUPS_CODEC_HPP
#define TREEGROUPS_CODEC_HPP

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treegroups/errors.hpp"
#include "treegroups/portrait.hpp"

// Text form of portraits:
//
//   Portrait := Perm Children?
//   Children := "[" Portrait ("," Portrait)* "]"       exactly d children
//   Perm     := "e" | digit string (d <= 10) | "(" int ("," int)* ")"
//
// A label without children has a trivial subtree below it. Whitespace is
// ignored. Example (d = 2): "10[e,10[e,e]]".

namespace treegroups {

namespace detail {

class PortraitParser {
 public:
  PortraitParser(std::string_view text, int d) : text_(text), d_(d) {}

  struct Node {
    Perm label;
    std::vector<Node> children;
  };

  Node parse_all() {
    Node root = parse_node();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string &what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Perm parse_perm() {
    const char c = peek();
    if (c == 'e') {
      ++pos_;
      return Perm::identity(d_);
    }
    std::vector<int> images;
    const std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      while (true) {
        skip_ws();
        std::size_t digits_start = pos_;
        int value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          value = value * 10 + (text_[pos_] - '0');
          if (value > 255) fail("perm image too large");
          ++pos_;
        }
        if (pos_ == digits_start) fail("expected integer in perm");
        images.push_back(value);
        const char sep = peek();
        ++pos_;
        if (sep == ')') break;
        if (sep != ',') {
          --pos_;
          fail("expected ',' or ')' in perm");
        }
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      if (d_ > 10) fail("degree > 10 requires parenthesised perms");
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        images.push_back(text_[pos_] - '0');
        ++pos_;
      }
    } else {
      fail("expected perm");
    }
    if (static_cast<int>(images.size()) != d_) {
      pos_ = start;
      fail("perm has " + std::to_string(images.size()) + " images, expected " + std::to_string(d_));
    }
    try {
      return Perm::from_ints(images);
    } catch (const std::invalid_argument &) {
      pos_ = start;
      fail("not a permutation");
    }
  }

  Node parse_node() {
    Node node{parse_perm(), {}};
    if (peek() == '[') {
      ++pos_;
      while (true) {
        node.children.push_back(parse_node());
        const char sep = peek();
        if (sep == ']') {
          ++pos_;
          break;
        }
        if (sep != ',') fail("expected ',' or ']'");
        ++pos_;
      }
      if (static_cast<int>(node.children.size()) != d_) fail("expected exactly d children");
    }
    return node;
  }

  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;
};

inline int node_depth(const PortraitParser::Node &n) {
  int deepest = 0;
  for (const auto &c : n.children) deepest = std::max(deepest, node_depth(c));
  return 1 + deepest;
}

inline void fill_labels(const PortraitParser::Node &n, int d, int level, std::size_t rank,
                        std::vector<std::uint8_t> &flat) {
  const std::size_t at = (internal_vertex_count(d, level) + rank) * d;
  std::copy(n.label.images().begin(), n.label.images().end(), flat.begin() + static_cast<std::ptrdiff_t>(at));
  for (int j = 0; j < static_cast<int>(n.children.size()); ++j)
    fill_labels(n.children[j], d, level + 1, rank * d + j, flat);
}

inline void format_perm(std::span<const std::uint8_t> p, std::string &out) {
  bool identity = true;
  for (std::size_t i = 0; i < p.size(); ++i) identity &= p[i] == i;
  if (identity) {
    out += 'e';
  } else if (p.size() <= 10) {
    for (auto x : p) out += static_cast<char>('0' + x);
  } else {
    out += '(';
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(p[i]);
    }
    out += ')';
  }
}

}  // namespace detail

/// Parses portrait text. Without an explicit depth the depth is the nesting
/// depth of the text; with one, the text is padded with trivial labels.
inline Portrait parse_portrait(std::string_view text, Degree d, std::optional<int> depth = std::nullopt) {
  detail::PortraitParser parser(text, d);
  auto root = parser.parse_all();
  const int nesting = detail::node_depth(root);
  if (depth && *depth == 0) {
    if (!root.label.is_identity() || !root.children.empty())
      throw ParseError("depth-0 portrait must be written 'e'", 0);
    return Portrait::identity(d, 0);
  }
  const int n = depth.value_or(nesting);
  if (n < nesting)
    throw ParseError("text has depth " + std::to_string(nesting) + " > requested " + std::to_string(n), 0);
  const Portrait blank = Portrait::identity(d, n);
  std::vector<std::uint8_t> flat(blank.flat_labels().begin(), blank.flat_labels().end());
  detail::fill_labels(root, d, 0, 0, flat);
  return Portrait::from_flat(d, n, std::move(flat));
}

/// Canonical text: children lists are written only where the subtree below
/// carries a non-trivial label. parse_portrait(format_portrait(g), d, depth(g)) == g.
inline std::string format_portrait(const Portrait &g) {
  const int d = g.degree();
  if (g.depth() == 0) return "e";
  // nontrivial[v]: some label in the subtree rooted at v (inclusive) is not the identity
  const std::size_t n = g.internal_count();
  std::vector<bool> nontrivial(n, false);
  for (std::size_t v = n; v-- > 0;) {
    auto l = g.label_at(v);
    bool nt = false;
    for (int j = 0; j < d; ++j) nt |= l[j] != j;
    const std::size_t first_child = v * d + 1;
    if (first_child < n)
      for (int j = 0; j < d; ++j) nt = nt || nontrivial[first_child + j];
    nontrivial[v] = nt;
  }
  std::string out;
  auto emit = [&](auto &&self, std::size_t v) -> void {
    detail::format_perm(g.label_at(v), out);
    const std::size_t first_child = v * d + 1;
    if (first_child >= n) return;
    bool below = false;
    for (int j = 0; j < d; ++j) below = below || nontrivial[first_child + j];
    if (!below) return;
    out += '[';
    for (int j = 0; j < d; ++j) {
      if (j) out += ',';
      self(self, first_child + j);
    }
    out += ']';
  };
  emit(emit, 0);
  return out;
}

}  // namespace treegroups

#endif  // TREEGROUPS_CODEC_HPP
