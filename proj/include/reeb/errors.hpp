#ifndef REEB_ERRORS_HPP
#define REEB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reeb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Input does not have the required dimension (degenerate or mismatched). */
class DimensionError : public Error {
 public:
  using Error::Error;
};

/** Reeb vector not in the open dual of the moment cone. */
class ReebMembershipError : public Error {
 public:
  using Error::Error;
};

/** Argument outside the domain of a function (boundary point, nonpositive factor, s outside S). */
class DomainError : public Error {
 public:
  using Error::Error;
};

/** Semantic validation failure; `check` names the violated rule. */
class ValidationError : public Error {
 public:
  ValidationError(std::string check, const std::string& what)
      : Error(check + ": " + what), check_(std::move(check)) {}
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

}  // namespace reeb

#endif
