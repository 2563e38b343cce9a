#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcsample {

/// Malformed edge-list input. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
  public:
	ParseError(std::size_t line, const std::string& detail, const std::string& source = {})
		: std::runtime_error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ": " + detail),
		  m_line(line), m_detail(detail) {}

	std::size_t line() const noexcept { return m_line; }
	const std::string& detail() const noexcept { return m_detail; }

  private:
	std::size_t m_line;
	std::string m_detail;
};

/// Input data that parses but cannot be used (empty graph, zero-BC target, unknown vertex id).
class DataError : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

/// An argument outside the documented domain of a function.
class ParameterError : public std::invalid_argument {
  public:
	using std::invalid_argument::invalid_argument;
};

} // namespace bcsample
