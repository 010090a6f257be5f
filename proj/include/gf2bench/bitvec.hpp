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

#ifndef GF2BENCH_BITVEC_HPP_
#define GF2BENCH_BITVEC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gf2bench {

// Fixed-length vector over GF(2), packed into 64-bit words.
//
// Bit i lives in word i / 64 at position i % 64. Unused high bits of the last
// word are always zero. The text form writes bit 0 first, so the string
// "1000" is the vector with only bit 0 set; this matches the column order of
// the flattened variables x_0 .. x_{N-1} in rendered prompts.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  static BitVector from_string(std::string_view bits);
  static BitVector from_word(std::size_t size, std::uint64_t word);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value);

  std::size_t popcount() const;
  // Number of set bits among positions [0, count).
  std::size_t popcount_prefix(std::size_t count) const;

  std::span<const std::uint64_t> words() const { return words_; }
  // First word; the whole vector when size() <= 64.
  std::uint64_t word0() const { return words_.empty() ? 0 : words_[0]; }

  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace gf2bench

#endif  // GF2BENCH_BITVEC_HPP_
