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
#include "guardfix/bench/generator.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <random>
#include <sstream>

#include "guardfix/support/text.hpp"

namespace guardfix::bench {

namespace {

constexpr std::int64_t kIntMax = 2147483647;
constexpr std::int64_t kSqrtIntMax = 46340;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed ^ 0x9e3779b97f4a7c15ULL) {}
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }
  bool chance(int percent) { return range(0, 99) < percent; }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(items.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

class Writer {
 public:
  void line(const std::string& text) {
    if (text.empty()) {
      out_ << '\n';
    } else {
      out_ << std::string(static_cast<std::size_t>(indent_) * 4, ' ') << text << '\n';
    }
    ++lines_;
  }
  void open(const std::string& text) {
    line(text);
    ++indent_;
  }
  void close(const std::string& text = "}") {
    --indent_;
    line(text);
  }
  std::uint32_t next_line() const { return static_cast<std::uint32_t>(lines_ + 1); }
  std::size_t lines() const { return lines_; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  int indent_ = 0;
  std::size_t lines_ = 0;
};

std::string num(std::int64_t v) { return std::to_string(v); }

using Binding = std::pair<std::string, std::int64_t>;

// Arithmetic over constants; every intermediate value stays within [-100, 100]
// except the loop accumulator, which stays within [-1000, 1000].
class FillerBuilder {
 public:
  FillerBuilder(Writer& w, Rng& rng, int loop_iterations) : w_(w), rng_(rng), loops_(loop_iterations) {}

  void function(const std::string& name, int statements) {
    values_.clear();
    counter_ = 0;
    acc_ = 0;
    w_.line("int " + name + "(void)");
    w_.open("{");
    w_.line("int acc = 0;");
    w_.line("int i;");
    for (int k = 0; k < statements; ++k) {
      auto roll = rng_.range(0, 9);
      if (roll < 6 || values_.size() < 2) {
        assign(true);
      } else if (roll < 8) {
        branch();
      } else {
        loop();
      }
    }
    w_.line("printIntLine(acc);");
    w_.line("return acc;");
    w_.close();
    w_.line("");
  }

 private:
  std::string fresh() { return "v" + std::to_string(counter_++); }

  void assign(bool may_reassign) {
    if (values_.size() < 2 || rng_.chance(25)) {
      auto v = rng_.range(-100, 100);
      auto name = fresh();
      w_.line("int " + name + " = " + num(v) + ";");
      values_.push_back({name, v});
      return;
    }
    Binding a = rng_.pick(values_);
    Binding b = rng_.pick(values_);
    auto c = rng_.range(2, 9);
    std::vector<Binding> options = {
        {a.first + " + " + b.first, a.second + b.second},
        {a.first + " - " + b.first, a.second - b.second},
        {a.first + " * " + b.first, a.second * b.second},
        {a.first + " / " + num(c), a.second / c},
        {a.first + " + " + num(c), a.second + c},
        {"acc + " + a.first, acc_ + a.second},
    };
    std::vector<Binding> safe;
    for (auto& o : options) {
      if (o.second >= -100 && o.second <= 100) safe.push_back(o);
    }
    if (safe.empty()) safe.push_back({num(a.second), a.second});
    Binding chosen = rng_.pick(safe);
    if (may_reassign && rng_.chance(30)) {
      w_.line(a.first + " = " + chosen.first + ";");
      for (auto& v : values_) {
        if (v.first == a.first) v.second = chosen.second;
      }
    } else {
      auto name = fresh();
      w_.line("int " + name + " = " + chosen.first + ";");
      values_.push_back({name, chosen.second});
    }
  }

  // Arms only declare block-local names, so outer values are unchanged afterwards.
  void branch() {
    Binding a = rng_.pick(values_);
    auto c = rng_.range(-100, 100);
    auto saved = values_;
    w_.open("if (" + a.first + " > " + num(c) + ") {");
    arm();
    values_ = saved;
    w_.close();
    w_.open("else {");
    arm();
    values_ = saved;
    w_.close();
  }

  void arm() {
    auto n = rng_.range(1, 3);
    for (std::int64_t k = 0; k < n; ++k) assign(false);
  }

  void loop() {
    auto step = rng_.range(1, 5);
    if (acc_ + step * loops_ > 1000) step = -step;
    w_.open("for (i = 0; i < " + num(loops_) + "; i = i + 1) {");
    w_.line("acc = acc + " + num(step) + ";");
    w_.close();
    acc_ += step * loops_;
  }

  Writer& w_;
  Rng& rng_;
  int loops_;
  int counter_ = 0;
  std::int64_t acc_ = 0;
  std::vector<Binding> values_;
};

std::vector<std::uint32_t> write_decoy(Writer& w, Rng& rng, const std::string& name) {
  std::vector<std::uint32_t> lines;
  w.line("int " + name + "(void)");
  w.open("{");
  w.line("int d = RAND32();");
  w.line("int e = 0;");
  auto kind = rng.range(0, 4);
  auto c = rng.range(2, 1000);
  switch (kind) {
    case 0:
      w.open("if (d <= " + num(kSqrtIntMax) + " && d >= " + num(-kSqrtIntMax) + ") {");
      lines.push_back(w.next_line());
      w.line("e = d * d;");
      break;
    case 1:
      w.open("if (d <= " + num(kIntMax - c) + ") {");
      lines.push_back(w.next_line());
      w.line("e = d + " + num(c) + ";");
      break;
    case 2:
      w.open("if (d <= " + num(kIntMax / c) + " && d >= " + num(-(kIntMax / c)) + ") {");
      lines.push_back(w.next_line());
      w.line("e = d * " + num(c) + ";");
      break;
    case 3:
      w.open("if (d >= " + num(-kIntMax + c) + ") {");
      lines.push_back(w.next_line());
      w.line("e = d - " + num(c) + ";");
      break;
    default: {
      auto hi = rng.range(-1000, 1000);
      w.open("if (d > " + num(hi) + " && d < " + num(hi - c) + ") {");
      lines.push_back(w.next_line());
      w.line("e = d * d;");
      break;
    }
  }
  w.close();
  w.line("return e;");
  w.close();
  w.line("");
  return lines;
}

struct TruePositive {
  std::uint32_t line = 0;
  std::string operation;
  std::vector<Integer> witness;
};

// The reaching path admits both the witness and in-range values (s = 0).
TruePositive write_true_positive(Writer& w, Rng& rng, const std::string& name, int depth) {
  TruePositive tp;
  std::int64_t s = 0;
  std::int64_t c = 0;
  std::string site;
  switch (rng.range(0, 2)) {
    case 0:
      s = rng.range(kSqrtIntMax + 1, 3000000);
      if (rng.chance(50)) s = -s;
      site = "r = s * s;";
      tp.operation = "square";
      break;
    case 1:
      c = rng.range(2, 1000);
      s = rng.range(kIntMax / c + 1, kIntMax);
      if (rng.chance(50)) s = -s;
      site = "r = s * " + num(c) + ";";
      tp.operation = "mul-const";
      break;
    default:
      c = rng.range(1, 1000);
      s = rng.range(kIntMax - c + 1, kIntMax);
      site = "r = s + " + num(c) + ";";
      tp.operation = "add-const";
      break;
  }
  std::int64_t t = rng.range(-1000, 1000);
  w.line("int " + name + "(void)");
  w.open("{");
  w.line("int s = RAND32();");
  w.line("int t = RAND32();");
  w.line("int r = 0;");
  for (int k = 0; k < depth; ++k) {
    std::string cond;
    switch (rng.range(0, 4)) {
      case 0:
        cond = "s > " + num(std::min<std::int64_t>(s, 0) - rng.range(1, 1000000));
        break;
      case 1: {
        std::int64_t x = 0;
        do {
          x = rng.range(-5000000, 5000000);
        } while (x == s || x == 0);
        cond = "s != " + num(x);
        break;
      }
      case 2:
        cond = "t > " + num(t - rng.range(1, 500));
        break;
      case 3:
        cond = "t < " + num(t + rng.range(1, 500));
        break;
      default: {
        std::int64_t x = t;
        while (x == t) x = rng.range(-2000, 2000);
        cond = "t != " + num(x);
        break;
      }
    }
    w.open("if (" + cond + ") {");
  }
  tp.line = w.next_line();
  w.line(site);
  for (int k = 0; k < depth; ++k) w.close();
  w.line("printIntLine(r);");
  w.line("return 0;");
  w.close();
  w.line("");
  tp.witness = {Integer(s), Integer(t)};
  return tp;
}

}  // namespace

const std::vector<std::string>& loc_classes() {
  static const std::vector<std::string> classes = {"1K", "2K", "6K", "11K", "20K"};
  return classes;
}

int loc_class_lines(const std::string& loc_class) {
  if (loc_class.empty() || loc_class == "min") return 0;
  if (loc_class == "1K") return 1000;
  if (loc_class == "2K") return 2000;
  if (loc_class == "6K") return 6000;
  if (loc_class == "11K") return 11000;
  if (loc_class == "20K") return 20000;
  throw Error("unknown size class '" + loc_class + "'");
}

nlohmann::json to_json(const ManifestEntry& e) {
  nlohmann::json witness = nlohmann::json::array();
  for (const auto& v : e.witness) witness.push_back(to_string(v));
  return {{"file", e.file},           {"tp_line", e.tp_line},         {"kind", e.kind},
          {"tp_operation", e.tp_operation}, {"decoy_lines", e.decoy_lines}, {"witness", witness},
          {"loc_class", e.loc_class}, {"loc", e.loc},                 {"seed", e.seed}};
}

ManifestEntry manifest_entry_from_json(const nlohmann::json& j) {
  ManifestEntry e;
  e.file = j.at("file").get<std::string>();
  e.tp_line = j.at("tp_line").get<std::uint32_t>();
  e.kind = j.value("kind", std::string("integer-overflow"));
  e.tp_operation = j.value("tp_operation", std::string());
  e.decoy_lines = j.value("decoy_lines", std::vector<std::uint32_t>{});
  for (const auto& v : j.value("witness", nlohmann::json::array())) {
    auto parsed = parse_integer(v.get<std::string>());
    if (!parsed) throw ManifestMismatch("bad witness value in manifest entry for " + e.file);
    e.witness.push_back(*parsed);
  }
  e.loc_class = j.value("loc_class", std::string());
  e.loc = j.value("loc", std::size_t{0});
  e.seed = j.value("seed", std::uint64_t{0});
  return e;
}

GeneratedProgram generate_program(const BenchSpec& spec, const std::string& file_name) {
  Rng rng(spec.seed);
  Writer w;
  int target = spec.target_loc > 0 ? spec.target_loc : loc_class_lines(spec.loc_class);
  int loops = std::clamp(spec.loop_iteration_count, 1, 8);
  int calls = std::max(spec.function_count, 0);

  GeneratedProgram out;
  out.manifest.file = file_name;
  out.manifest.loc_class = spec.loc_class;
  out.manifest.seed = spec.seed;

  w.line("int RAND32(void);");
  w.line("void printIntLine(int value);");
  w.line("");
  for (int k = 0; k < spec.false_positive_count; ++k) {
    auto lines = write_decoy(w, rng, "check_range_" + std::to_string(k));
    out.manifest.decoy_lines.insert(out.manifest.decoy_lines.end(), lines.begin(), lines.end());
  }
  if (spec.seed_true_positive) {
    auto tp = write_true_positive(w, rng, "process_input", std::max(spec.seed_depth, 0));
    out.manifest.tp_line = tp.line;
    out.manifest.tp_operation = tp.operation;
    out.manifest.witness = tp.witness;
  }

  FillerBuilder filler(w, rng, loops);
  auto main_lines = static_cast<std::size_t>(calls) + 7;
  int index = 0;
  while (index < calls || w.lines() + main_lines < static_cast<std::size_t>(target)) {
    auto remaining = static_cast<std::int64_t>(target) - static_cast<std::int64_t>(w.lines() + main_lines);
    auto statements = std::clamp<std::int64_t>(remaining / 2, 4, rng.range(8, 30));
    filler.function("compute_" + std::to_string(index), static_cast<int>(statements));
    ++index;
  }

  w.line("int main(void)");
  w.open("{");
  w.line("int total = 0;");
  for (int k = 0; k < calls; ++k) {
    w.line("total = total + compute_" + std::to_string(k) + "();");
  }
  if (spec.seed_true_positive) w.line("process_input();");
  w.line("printIntLine(total);");
  w.line("return 0;");
  w.close();

  out.source = w.str();
  out.manifest.loc = count_lines(out.source);
  return out;
}

std::vector<ManifestEntry> generate_corpus(const std::string& dir, int count, std::uint64_t seed,
                                           const std::vector<std::string>& classes) {
  std::filesystem::create_directories(dir);
  Rng rng(seed);
  std::vector<ManifestEntry> entries;
  for (int i = 0; i < count; ++i) {
    BenchSpec spec;
    spec.function_count = static_cast<int>(rng.range(2, 6));
    spec.loop_iteration_count = static_cast<int>(rng.range(1, 4));
    spec.false_positive_count = static_cast<int>(rng.range(1, 3));
    spec.seed_depth = static_cast<int>(rng.range(1, 4));
    spec.seed = seed * 1000003ULL + static_cast<std::uint64_t>(i) + 1;
    spec.loc_class = classes.empty() ? std::string() : classes[static_cast<std::size_t>(i) % classes.size()];
    std::ostringstream name;
    name << "prog_" << std::setw(4) << std::setfill('0') << i;
    if (!spec.loc_class.empty()) name << '_' << spec.loc_class;
    name << ".c";
    auto program = generate_program(spec, name.str());
    write_file_atomic((std::filesystem::path(dir) / name.str()).string(), program.source);
    entries.push_back(program.manifest);
  }
  write_manifest((std::filesystem::path(dir) / "manifest.jsonl").string(), entries);
  return entries;
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::vector<ManifestEntry> entries;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      entries.push_back(manifest_entry_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ManifestMismatch(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return entries;
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
  std::string text;
  for (const auto& e : entries) text += to_json(e).dump() + "\n";
  write_file_atomic(path, text);
}

}  // namespace guardfix::bench
