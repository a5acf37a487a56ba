#pragma once

#include <jumpkit.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#ifndef JUMPKIT_FIXTURES
#define JUMPKIT_FIXTURES "fixtures"
#endif

namespace testing {

inline std::string fixture_path(const std::string& rel) { return std::string(JUMPKIT_FIXTURES) + "/" + rel; }

inline std::string read_fixture(const std::string& rel) {
  std::ifstream in(fixture_path(rel));
  if (!in) throw std::runtime_error("missing fixture " + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline jumpkit::GroupPresentation fixture_presentation(const std::string& name) {
  return jumpkit::parse_presentation(read_fixture("presentations/" + name + ".txt"));
}

inline jumpkit::LaurentPoly poly(const std::string& text, std::size_t n) { return jumpkit::parse_laurent(text, n); }

// Random word over q generators with total length at most len.
inline jumpkit::Word random_word(std::mt19937_64& rng, std::size_t q, std::size_t len) {
  std::uniform_int_distribution<std::size_t> g(0, q - 1);
  std::uniform_int_distribution<int> s(0, 1);
  jumpkit::Word w;
  for (std::size_t i = 0; i < len; ++i) w.push(g(rng), s(rng) ? 1 : -1);
  return w;
}

}  // namespace testing
