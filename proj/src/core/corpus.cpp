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

#include "core/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace lcpseg {

TokenId SymbolTable::intern(std::string_view text) {
  auto it = index_.find(std::string(text));
  if (it != index_.end()) return it->second;
  const TokenId id = static_cast<TokenId>(texts_.size());
  texts_.emplace_back(text);
  index_.emplace(texts_.back(), id);
  return id;
}

std::optional<TokenId> SymbolTable::find(std::string_view text) const {
  auto it = index_.find(std::string(text));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::text(TokenId id) const {
  if (id < 0 || static_cast<size_t>(id) >= texts_.size()) {
    throw ContractError("symbol id " + std::to_string(id) + " out of range");
  }
  return texts_[static_cast<size_t>(id)];
}

std::vector<std::string> tokenize_sentence(std::string_view raw) {
  return split_scalars(raw);
}

bool validate_segmentation(std::span<const std::string> tokens, std::string_view raw) {
  size_t pos = 0;
  for (const auto& token : tokens) {
    if (pos + token.size() > raw.size()) return false;
    if (raw.compare(pos, token.size(), token) != 0) return false;
    pos += token.size();
  }
  return pos == raw.size();
}

Corpus Corpus::from_lines(std::vector<std::string> lines, BoundaryMode mode) {
  Corpus corpus;
  corpus.mode_ = mode;
  corpus.raw_lines_ = std::move(lines);
  corpus.sequences_.reserve(corpus.raw_lines_.size());
  for (size_t i = 0; i < corpus.raw_lines_.size(); ++i) {
    const std::string& raw = corpus.raw_lines_[i];
    SymbolSequence seq;
    seq.origin = i;
    std::vector<std::string> symbols;
    try {
      symbols = tokenize_sentence(raw);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(i + 1) + ": " + e.what());
    }
    seq.ids.reserve(symbols.size());
    for (const auto& s : symbols) seq.ids.push_back(corpus.symbols_.intern(s));
    corpus.sequences_.push_back(std::move(seq));
  }

  std::vector<TokenId> base;
  base.reserve(corpus.symbols_.size());
  for (size_t id = 0; id < corpus.symbols_.size(); ++id) base.push_back(static_cast<TokenId>(id));
  std::sort(base.begin(), base.end(), [&](TokenId a, TokenId b) {
    return corpus.symbols_.text(a) < corpus.symbols_.text(b);
  });
  corpus.base_symbols_ = std::move(base);

  if (mode == BoundaryMode::kRespectWordBoundaries) {
    const auto blank = corpus.symbols_.find(std::string(1, kBlankSymbol));
    corpus.boundary_id_ = blank.value_or(kNoToken);
  }
  return corpus;
}

Corpus Corpus::from_file(const std::string& path, BoundaryMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading corpus file: " + path);
  std::string content = std::move(buffer).str();

  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= content.size()) {
    const size_t nl = content.find('\n', start);
    if (nl == std::string::npos) {
      // Final fragment; a trailing LF terminates the last line rather than
      // opening an empty one.
      if (start < content.size()) lines.push_back(content.substr(start));
      break;
    }
    lines.push_back(content.substr(start, nl - start));
    start = nl + 1;
  }
  return from_lines(std::move(lines), mode);
}

bool Vocabulary::insert(TokenId id) {
  if (id < 0) throw ParamError("vocabulary entry id must be non-negative");
  if (static_cast<size_t>(id) >= ranks_.size()) ranks_.resize(id + 1, -1);
  if (ranks_[static_cast<size_t>(id)] >= 0) return false;
  ranks_[static_cast<size_t>(id)] = static_cast<int32_t>(entries_.size());
  entries_.push_back(id);
  return true;
}

bool Vocabulary::contains(TokenId id) const { return rank(id) >= 0; }

int32_t Vocabulary::rank(TokenId id) const {
  if (id < 0 || static_cast<size_t>(id) >= ranks_.size()) return -1;
  return ranks_[static_cast<size_t>(id)];
}

void FreqTable::add(TokenId left, TokenId right, uint32_t n) {
  counts_[pack(left, right)] += n;
  total_ += n;
}

uint32_t FreqTable::count(TokenId left, TokenId right) const {
  auto it = counts_.find(pack(left, right));
  return it == counts_.end() ? 0u : it->second;
}

void FreqTable::for_each(const std::function<void(TokenId, TokenId, uint32_t)>& fn) const {
  for (const auto& [key, count] : counts_) {
    const auto [left, right] = unpack(key);
    fn(left, right, count);
  }
}

}  // namespace lcpseg
