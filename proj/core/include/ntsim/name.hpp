#ifndef NTSIM_NAME_HPP
#define NTSIM_NAME_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ntsim {

class MalformedName : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/**
 * @brief Hierarchical name made of one or more non-empty text components.
 *
 * The canonical text form is "/" followed by the components joined with "/".
 * Components never contain '/'.
 */
class Name
{
public:
  /// @throw MalformedName if @p components is empty or holds an invalid component
  explicit
  Name(std::vector<std::string> components);

  static Name
  parse(std::string_view text);

  std::string
  to_uri() const;

  std::size_t
  size() const noexcept
  {
    return m_components.size();
  }

  const std::string&
  operator[](std::size_t i) const
  {
    return m_components[i];
  }

  const std::vector<std::string>&
  components() const noexcept
  {
    return m_components;
  }

  friend bool
  operator==(const Name&, const Name&) = default;

  friend auto
  operator<=>(const Name&, const Name&) = default;

private:
  std::vector<std::string> m_components;
};

/// @throw MalformedName on empty input, missing leading '/', or an empty component
Name
parse_name(std::string_view text);

} // namespace ntsim

#endif // NTSIM_NAME_HPP
