#include "ntsim/bitmap.hpp"

#include <algorithm>
#include <charconv>

namespace ntsim {

namespace {

constexpr std::size_t kMaxPieces = std::size_t{1} << 20;
constexpr char kHexDigits[] = "0123456789abcdef";

std::size_t
hex_width(std::size_t n_pieces)
{
  return 2 * ((n_pieces + 7) / 8);
}

int
hex_value(char c)
{
  if (c >= '0' && c <= '9') {
    return c - '0';
  }
  if (c >= 'a' && c <= 'f') {
    return c - 'a' + 10;
  }
  return -1;
}

} // namespace

Bitmap::Bitmap(std::size_t n_pieces)
  : m_bits(n_pieces, false)
{
  if (n_pieces == 0) {
    throw std::invalid_argument("bitmap must cover at least one piece");
  }
}

Bitmap
Bitmap::full(std::size_t n_pieces)
{
  Bitmap b(n_pieces);
  std::fill(b.m_bits.begin(), b.m_bits.end(), true);
  return b;
}

std::size_t
Bitmap::count() const noexcept
{
  return static_cast<std::size_t>(std::count(m_bits.begin(), m_bits.end(), true));
}

Bitmap&
Bitmap::operator|=(const Bitmap& other)
{
  if (other.size() != size()) {
    throw LengthMismatch("bitmap sizes differ: " + std::to_string(size()) + " vs " +
                         std::to_string(other.size()));
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (other.m_bits[i]) {
      m_bits[i] = true;
    }
  }
  return *this;
}

EncodedBitmap
encode_bitmap(const Bitmap& bitmap)
{
  const std::size_t width = hex_width(bitmap.size());
  std::string hex(width, '0');
  for (std::size_t nibble = 0; nibble < width; ++nibble) {
    unsigned value = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      std::size_t bit = nibble * 4 + j;
      if (bit < bitmap.size() && bitmap.test(bit)) {
        value |= 1u << j;
      }
    }
    hex[width - 1 - nibble] = kHexDigits[value];
  }
  return {std::move(hex), std::to_string(bitmap.size())};
}

Bitmap
decode_bitmap(std::string_view hex, std::string_view length)
{
  std::size_t n = 0;
  if (length.empty() || (length.size() > 1 && length.front() == '0')) {
    throw MalformedBitmap("bad bitmap length: '" + std::string(length) + "'");
  }
  auto [ptr, ec] = std::from_chars(length.data(), length.data() + length.size(), n);
  if (ec != std::errc{} || ptr != length.data() + length.size() || n == 0 || n > kMaxPieces) {
    throw MalformedBitmap("bad bitmap length: '" + std::string(length) + "'");
  }

  const std::size_t width = hex_width(n);
  if (hex.size() != width) {
    throw MalformedBitmap("bitmap hex has " + std::to_string(hex.size()) + " digits, expected " +
                          std::to_string(width));
  }

  Bitmap bitmap(n);
  for (std::size_t nibble = 0; nibble < width; ++nibble) {
    int value = hex_value(hex[width - 1 - nibble]);
    if (value < 0) {
      throw MalformedBitmap("non-hex bitmap text: '" + std::string(hex) + "'");
    }
    for (std::size_t j = 0; j < 4; ++j) {
      if ((value >> j) & 1) {
        std::size_t bit = nibble * 4 + j;
        if (bit >= n) {
          throw MalformedBitmap("bitmap has bits set beyond its length");
        }
        bitmap.set(bit);
      }
    }
  }
  return bitmap;
}

} // namespace ntsim
