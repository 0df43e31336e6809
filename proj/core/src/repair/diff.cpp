// Copyright 2026 The guardfix Authors
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
#include "guardfix/repair/diff.hpp"

#include <algorithm>
#include <sstream>

namespace guardfix::repair {

std::string apply_edits(std::string_view text, std::vector<TextEdit> edits) {
  std::sort(edits.begin(), edits.end(), [](const TextEdit& a, const TextEdit& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
  });
  std::string out;
  std::size_t pos = 0;
  for (const auto& e : edits) {
    if (e.begin < pos || e.end < e.begin || e.end > text.size()) {
      throw SpanDrift("edit [" + std::to_string(e.begin) + ", " + std::to_string(e.end) +
                      ") overlaps another edit or lies outside the text");
    }
    out.append(text.substr(pos, e.begin - pos));
    out += e.replacement;
    pos = e.end;
  }
  out.append(text.substr(pos));
  return out;
}

namespace {

/// Lines including their terminators; a missing final newline is kept as is.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl + 1;
    lines.push_back(text.substr(pos, end - pos));
    pos = end;
  }
  return lines;
}

enum class Op { Keep, Del, Add };

/// Myers O((N+M)D) shortest edit script.
std::vector<Op> edit_script(const std::vector<std::string_view>& a, const std::vector<std::string_view>& b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  const int max = n + m;
  std::vector<int> v(2 * max + 2, 0);
  std::vector<std::vector<int>> trace;
  int found_d = -1;
  for (int d = 0; d <= max && found_d < 0; ++d) {
    trace.push_back(v);
    for (int k = -d; k <= d; k += 2) {
      int x;
      if (k == -d || (k != d && v[max + k - 1] < v[max + k + 1])) x = v[max + k + 1];
      else x = v[max + k - 1] + 1;
      int y = x - k;
      while (x < n && y < m && a[x] == b[y]) ++x, ++y;
      v[max + k] = x;
      if (x >= n && y >= m) {
        found_d = d;
        break;
      }
    }
  }
  std::vector<Op> ops;
  int x = n, y = m;
  for (int d = found_d; d > 0; --d) {
    const auto& pv = trace[d];
    int k = x - y;
    int prev_k = (k == -d || (k != d && pv[max + k - 1] < pv[max + k + 1])) ? k + 1 : k - 1;
    int prev_x = pv[max + prev_k];
    int prev_y = prev_x - prev_k;
    while (x > prev_x && y > prev_y) {
      ops.push_back(Op::Keep);
      --x, --y;
    }
    ops.push_back(x == prev_x ? Op::Add : Op::Del);
    x = prev_x, y = prev_y;
  }
  while (x > 0 && y > 0) {
    ops.push_back(Op::Keep);
    --x, --y;
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

void emit_line(std::ostringstream& out, char tag, std::string_view line) {
  out << tag << line;
  if (line.empty() || line.back() != '\n') out << "\n\\ No newline at end of file\n";
}

std::string range(int start, int count) {
  if (count == 1) return std::to_string(start);
  return std::to_string(start) + "," + std::to_string(count);
}

}  // namespace

std::string unified_diff(std::string_view before, std::string_view after, const std::string& old_name,
                         const std::string& new_name, int context) {
  auto a = split_lines(before);
  auto b = split_lines(after);
  auto ops = edit_script(a, b);
  if (std::all_of(ops.begin(), ops.end(), [](Op o) { return o == Op::Keep; })) return "";

  // Positions (in ops) of changes, grouped into hunks with shared context.
  std::vector<std::pair<std::size_t, std::size_t>> hunks;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] == Op::Keep) continue;
    std::size_t j = i;
    while (j + 1 < ops.size() && ops[j + 1] != Op::Keep) ++j;
    std::size_t lo = i >= static_cast<std::size_t>(context) ? i - context : 0;
    std::size_t hi = std::min(ops.size(), j + 1 + context);
    if (!hunks.empty() && lo <= hunks.back().second) hunks.back().second = hi;
    else hunks.emplace_back(lo, hi);
    i = j;
  }

  std::ostringstream out;
  out << "--- " << old_name << "\n+++ " << new_name << "\n";
  std::size_t op_pos = 0;
  int ai = 0, bi = 0;
  for (const auto& [lo, hi] : hunks) {
    for (; op_pos < lo; ++op_pos) {
      if (ops[op_pos] != Op::Add) ++ai;
      if (ops[op_pos] != Op::Del) ++bi;
    }
    int a_count = 0, b_count = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (ops[i] != Op::Add) ++a_count;
      if (ops[i] != Op::Del) ++b_count;
    }
    out << "@@ -" << range(a_count ? ai + 1 : ai, a_count) << " +" << range(b_count ? bi + 1 : bi, b_count)
        << " @@\n";
    for (; op_pos < hi; ++op_pos) {
      switch (ops[op_pos]) {
        case Op::Keep: emit_line(out, ' ', a[ai++]); ++bi; break;
        case Op::Del: emit_line(out, '-', a[ai++]); break;
        case Op::Add: emit_line(out, '+', b[bi++]); break;
      }
    }
  }
  return out.str();
}

std::string apply_unified_diff(std::string_view text, std::string_view diff, bool reverse) {
  auto src = split_lines(text);
  auto lines = split_lines(diff);
  std::string out;
  std::size_t src_pos = 0;
  std::size_t i = 0;
  auto strip = [](std::string_view l) {
    if (!l.empty() && l.back() == '\n') l.remove_suffix(1);
    return l;
  };
  while (i < lines.size() && strip(lines[i]).rfind("@@", 0) != 0) ++i;
  while (i < lines.size()) {
    std::string_view header = strip(lines[i++]);
    if (header.rfind("@@ -", 0) != 0) throw DiffMismatch("malformed hunk header: " + std::string(header));
    int old_start = 0, new_start = 0;
    {
      std::string h(header);
      std::size_t minus = h.find('-'), plus = h.find('+');
      old_start = std::stoi(h.substr(minus + 1));
      new_start = std::stoi(h.substr(plus + 1));
    }
    int start = reverse ? new_start : old_start;
    // Hunk line numbers are 1-based; a zero-length range names the line before.
    std::size_t target = static_cast<std::size_t>(start > 0 ? start - 1 : 0);
    std::vector<std::pair<char, std::string>> body;
    while (i < lines.size() && strip(lines[i]).rfind("@@", 0) != 0) {
      std::string_view l = lines[i++];
      if (strip(l).rfind("\\ No newline", 0) == 0) {
        if (!body.empty() && !body.back().second.empty() && body.back().second.back() == '\n') {
          body.back().second.pop_back();
        }
        continue;
      }
      if (l.empty()) throw DiffMismatch("empty hunk line");
      body.emplace_back(l[0], std::string(l.substr(1)));
    }
    // A hunk without old-side lines inserts after line `start`.
    bool has_old = std::any_of(body.begin(), body.end(), [&](const auto& p) {
      return p.first == ' ' || p.first == (reverse ? '+' : '-');
    });
    if (!has_old) target = static_cast<std::size_t>(start);
    if (target < src_pos || target > src.size()) throw DiffMismatch("hunk out of order or out of range");
    for (; src_pos < target; ++src_pos) out += src[src_pos];
    for (const auto& [tag, content] : body) {
      char del = reverse ? '+' : '-';
      char add = reverse ? '-' : '+';
      if (tag == ' ' || tag == del) {
        if (src_pos >= src.size() || src[src_pos] != content) {
          throw DiffMismatch("context mismatch at line " + std::to_string(src_pos + 1));
        }
        if (tag == ' ') out += content;
        ++src_pos;
      } else if (tag == add) {
        out += content;
      } else {
        throw DiffMismatch(std::string("unexpected hunk line tag '") + tag + "'");
      }
    }
  }
  for (; src_pos < src.size(); ++src_pos) out += src[src_pos];
  return out;
}

long diff_line_delta(std::string_view diff) {
  long delta = 0;
  for (auto line : split_lines(diff)) {
    if (line.rfind("+++", 0) == 0 || line.rfind("---", 0) == 0) continue;
    if (!line.empty() && line[0] == '+') ++delta;
    if (!line.empty() && line[0] == '-') --delta;
  }
  return delta;
}

}  // namespace guardfix::repair
