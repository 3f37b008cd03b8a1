#ifndef NTSIM_BITMAP_HPP
#define NTSIM_BITMAP_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ntsim {

class MalformedBitmap : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class LengthMismatch : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-length set of held pieces; bit i is piece i.
class Bitmap
{
public:
  /// @throw std::invalid_argument if @p n_pieces is zero
  explicit
  Bitmap(std::size_t n_pieces);

  static Bitmap
  full(std::size_t n_pieces);

  std::size_t
  size() const noexcept
  {
    return m_bits.size();
  }

  bool
  test(std::size_t i) const
  {
    return m_bits.at(i);
  }

  void
  set(std::size_t i)
  {
    m_bits.at(i) = true;
  }

  void
  reset(std::size_t i)
  {
    m_bits.at(i) = false;
  }

  std::size_t
  count() const noexcept;

  bool
  complete() const noexcept
  {
    return count() == size();
  }

  /// @throw LengthMismatch
  Bitmap&
  operator|=(const Bitmap& other);

  friend bool
  operator==(const Bitmap&, const Bitmap&) = default;

private:
  std::vector<bool> m_bits;
};

/// The two name components carrying a bitmap: lowercase hex of the bit
/// vector read as an integer (bit 0 = piece 0), and the decimal length.
struct EncodedBitmap
{
  std::string hex;
  std::string length;

  friend bool
  operator==(const EncodedBitmap&, const EncodedBitmap&) = default;
};

EncodedBitmap
encode_bitmap(const Bitmap& bitmap);

/// @throw MalformedBitmap on non-hex text, bad length, or bits set past the length
Bitmap
decode_bitmap(std::string_view hex, std::string_view length);

} // namespace ntsim

#endif // NTSIM_BITMAP_HPP
