// Copyright 2026 The gf2bench Authors
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

#include "gf2bench/bitvec.hpp"

#include <bit>

#include "gf2bench/errors.hpp"

namespace gf2bench {

BitVector::BitVector(std::size_t size)
    : size_(size), words_((size + 63) / 64, 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw DimensionError("bit string contains a character other than 0/1");
    }
  }
  return out;
}

BitVector BitVector::from_word(std::size_t size, std::uint64_t word) {
  if (size > 64) throw DimensionError("from_word: size exceeds 64 bits");
  BitVector out(size);
  if (size == 0) return out;
  const std::uint64_t keep = size == 64 ? ~0ull : ((1ull << size) - 1);
  out.words_[0] = word & keep;
  return out;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t bit = 1ull << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t BitVector::popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

std::size_t BitVector::popcount_prefix(std::size_t count) const {
  if (count > size_) count = size_;
  std::size_t total = 0;
  const std::size_t full = count >> 6;
  for (std::size_t i = 0; i < full; ++i) total += std::popcount(words_[i]);
  const std::size_t rest = count & 63;
  if (rest != 0) {
    total += std::popcount(words_[full] & ((1ull << rest) - 1));
  }
  return total;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

}  // namespace gf2bench
