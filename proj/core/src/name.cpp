#include "ntsim/name.hpp"

namespace ntsim {

Name::Name(std::vector<std::string> components)
  : m_components(std::move(components))
{
  if (m_components.empty()) {
    throw MalformedName("name must have at least one component");
  }
  for (const auto& c : m_components) {
    if (c.empty()) {
      throw MalformedName("empty name component");
    }
    if (c.find('/') != std::string::npos) {
      throw MalformedName("name component contains '/': " + c);
    }
  }
}

Name
Name::parse(std::string_view text)
{
  if (text.empty()) {
    throw MalformedName("empty name");
  }
  if (text.front() != '/') {
    throw MalformedName("name must begin with '/': " + std::string(text));
  }

  std::vector<std::string> components;
  std::size_t pos = 1;
  while (true) {
    auto slash = text.find('/', pos);
    auto part = text.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
    if (part.empty()) {
      throw MalformedName("empty component in " + std::string(text));
    }
    components.emplace_back(part);
    if (slash == std::string_view::npos) {
      break;
    }
    pos = slash + 1;
  }
  return Name(std::move(components));
}

std::string
Name::to_uri() const
{
  std::string out;
  for (const auto& c : m_components) {
    out += '/';
    out += c;
  }
  return out;
}

Name
parse_name(std::string_view text)
{
  return Name::parse(text);
}

} // namespace ntsim
