#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scholarmap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The CSV header lacks one or more required columns.
class SchemaError : public Error {
 public:
  SchemaError(std::string message, std::vector<std::string> missing)
      : Error(std::move(message)), missing_(std::move(missing)) {}

  const std::vector<std::string>& missing_columns() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;
};

/// A data row failed validation. `row` is the 1-based data row (the header
/// is not counted); `line` is the 1-based physical line where the record starts.
class RowError : public Error {
 public:
  RowError(std::size_t row, std::size_t line, std::string field, const std::string& detail)
      : Error("row " + std::to_string(row) + " (line " + std::to_string(line) + "), field '" +
              field + "': " + detail),
        row_(row),
        line_(line),
        field_(std::move(field)) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t row_;
  std::size_t line_;
  std::string field_;
};

class DuplicateIdError : public Error {
 public:
  DuplicateIdError(std::string id, std::size_t first_row, std::size_t second_row)
      : Error("rows " + std::to_string(first_row) + " and " + std::to_string(second_row) +
              " both map to id '" + id + "'"),
        id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class EmptyQueryError : public Error {
 public:
  using Error::Error;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NotSpdError : public Error {
 public:
  using Error::Error;
};

/// A map/query parameter is out of range. `code` is the machine-readable
/// identifier returned by the HTTP API (e.g. "invalid_k").
class InvalidParamError : public Error {
 public:
  InvalidParamError(std::string code, const std::string& message)
      : Error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Cluster count outside [1, n] (or the map's narrower slider range).
class InvalidKError : public InvalidParamError {
 public:
  explicit InvalidKError(const std::string& message) : InvalidParamError("invalid_k", message) {}
};

class IoError : public Error {
 public:
  IoError(std::filesystem::path path, const std::string& detail)
      : Error(path.string() + ": " + detail), path_(std::move(path)) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace scholarmap
