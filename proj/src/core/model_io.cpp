// Copyright 2026 The lcpseg Authors
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

#include "core/model_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace lcpseg {

namespace {

std::vector<std::string> split_lines(std::string_view content) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= content.size()) {
    const size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < content.size()) lines.emplace_back(content.substr(start));
      break;
    }
    lines.emplace_back(content.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

// Shortest representation that parses back to the same double.
std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& origin, size_t line) {
  double value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError(origin, line, "malformed real value \"" + std::string(text) + "\"");
  }
  return value;
}

uint64_t parse_u64(std::string_view text, const std::string& origin, size_t line) {
  uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError(origin, line, "malformed integer \"" + std::string(text) + "\"");
  }
  return value;
}

std::string_view expect_field(std::string_view item, std::string_view key,
                              const std::string& origin, size_t line) {
  if (item.size() <= key.size() + 1 || item.substr(0, key.size()) != key ||
      item[key.size()] != '=') {
    throw ParseError(origin, line,
                     "expected \"" + std::string(key) + "=<value>\", got \"" +
                         std::string(item) + "\"");
  }
  return item.substr(key.size() + 1);
}

}  // namespace

std::string bpe_model_to_string(const MergeTable& table) {
  std::string out(kBpeModelHeader);
  out += '\n';
  for (const auto& rule : table.rules) {
    out += escape_token(rule.left);
    out += '\t';
    out += escape_token(rule.right);
    out += '\n';
  }
  return out;
}

MergeTable bpe_model_from_string(std::string_view content, const std::string& origin) {
  const auto lines = split_lines(content);
  if (lines.empty() || lines[0] != kBpeModelHeader) {
    throw ParseError(origin, 1,
                     "bad model header; expected \"" + std::string(kBpeModelHeader) + "\"");
  }
  MergeTable table;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(origin, i + 1, "expected exactly one tab separating the rule pair");
    }
    MergeRule rule;
    try {
      rule.left = unescape_token(std::string_view(line).substr(0, tab));
      rule.right = unescape_token(std::string_view(line).substr(tab + 1));
    } catch (const ParseError& e) {
      throw ParseError(origin, i + 1, e.what());
    }
    if (rule.left.empty() || rule.right.empty()) {
      throw ParseError(origin, i + 1, "merge rule side must be non-empty");
    }
    rule.priority = static_cast<int32_t>(table.rules.size());
    table.rules.push_back(std::move(rule));
  }
  return table;
}

std::string lcp_model_to_string(const LcpModel& model) {
  std::string out(kLcpModelHeader);
  out += '\n';
  out += "v=" + std::to_string(model.vocab_size);
  out += " l=" + std::to_string(model.partial_vocab);
  out += " k=" + format_double(model.topk);
  out += " seed=" + std::to_string(model.seed);
  out += '\n';
  for (const auto& entry : model.entries) {
    out += escape_token(entry);
    out += '\n';
  }
  return out;
}

LcpModel lcp_model_from_string(std::string_view content, const std::string& origin) {
  const auto lines = split_lines(content);
  if (lines.empty() || lines[0] != kLcpModelHeader) {
    throw ParseError(origin, 1,
                     "bad model header; expected \"" + std::string(kLcpModelHeader) + "\"");
  }
  if (lines.size() < 2) throw ParseError(origin, 2, "missing hyperparameter line");

  std::istringstream fields(lines[1]);
  std::string v_item, l_item, k_item, seed_item, extra;
  if (!(fields >> v_item >> l_item >> k_item >> seed_item) || (fields >> extra)) {
    throw ParseError(origin, 2, "expected \"v=<int> l=<int> k=<real> seed=<int>\"");
  }
  LcpModel model;
  model.vocab_size = parse_u64(expect_field(v_item, "v", origin, 2), origin, 2);
  model.partial_vocab = parse_u64(expect_field(l_item, "l", origin, 2), origin, 2);
  model.topk = parse_double(expect_field(k_item, "k", origin, 2), origin, 2);
  model.seed = parse_u64(expect_field(seed_item, "seed", origin, 2), origin, 2);
  if (model.vocab_size == 0 || model.partial_vocab == 0 ||
      model.partial_vocab > model.vocab_size || !(model.topk > 0.0) || model.topk > 1.0) {
    throw ParseError(origin, 2, "hyperparameters out of range");
  }

  for (size_t i = 2; i < lines.size(); ++i) {
    std::string entry;
    try {
      entry = unescape_token(lines[i]);
    } catch (const ParseError& e) {
      throw ParseError(origin, i + 1, e.what());
    }
    if (entry.empty()) throw ParseError(origin, i + 1, "empty vocabulary entry");
    model.entries.push_back(std::move(entry));
  }
  return model;
}

void save_bpe_model(const MergeTable& table, const std::string& path) {
  write_file(path, bpe_model_to_string(table));
}

MergeTable load_bpe_model(const std::string& path) {
  return bpe_model_from_string(read_file(path), path);
}

void save_lcp_model(const LcpModel& model, const std::string& path) {
  write_file(path, lcp_model_to_string(model));
}

LcpModel load_lcp_model(const std::string& path) {
  return lcp_model_from_string(read_file(path), path);
}

ModelKind sniff_model(const std::string& path) {
  const std::string content = read_file(path);
  const size_t nl = content.find('\n');
  const std::string_view header =
      std::string_view(content).substr(0, nl == std::string::npos ? content.size() : nl);
  if (header == kBpeModelHeader) return ModelKind::kBpe;
  if (header == kLcpModelHeader) return ModelKind::kLcp;
  throw ParseError(path, 1, "unrecognized model header \"" + std::string(header) + "\"");
}

std::string render_tokens(std::span<const std::string> tokens, std::string_view separator,
                          std::string_view blank_marker) {
  std::string out;
  bool first = true;
  for (const auto& token : tokens) {
    if (!first) out += separator;
    first = false;
    for (const char c : token) {
      if (c == kBlankSymbol) {
        out += blank_marker;
      } else {
        out += c;
      }
    }
  }
  return out;
}

std::vector<std::string> parse_rendered(std::string_view line, std::string_view separator,
                                        std::string_view blank_marker) {
  if (separator.empty()) throw ParamError("separator must be non-empty");
  std::vector<std::string> tokens;
  if (line.empty()) return tokens;
  size_t start = 0;
  while (start <= line.size()) {
    const size_t sep = line.find(separator, start);
    const std::string_view piece =
        line.substr(start, sep == std::string_view::npos ? line.size() - start : sep - start);
    std::string token;
    size_t pos = 0;
    while (pos < piece.size()) {
      if (!blank_marker.empty() && piece.compare(pos, blank_marker.size(), blank_marker) == 0) {
        token += kBlankSymbol;
        pos += blank_marker.size();
      } else {
        token += piece[pos++];
      }
    }
    tokens.push_back(std::move(token));
    if (sep == std::string_view::npos) break;
    start = sep + separator.size();
  }
  return tokens;
}

void write_rendered_file(const std::string& path,
                         std::span<const SymbolSequence> sequences,
                         const SymbolTable& symbols, std::string_view separator,
                         std::string_view blank_marker) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  std::vector<std::string> texts;
  for (const auto& seq : sequences) {
    texts.clear();
    texts.reserve(seq.ids.size());
    for (const TokenId id : seq.ids) texts.push_back(symbols.text(id));
    out << render_tokens(texts, separator, blank_marker) << '\n';
  }
  if (!out) throw IoError("error while writing output file: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading file: " + path);
  return std::move(buffer).str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error while writing file: " + path);
}

}  // namespace lcpseg
