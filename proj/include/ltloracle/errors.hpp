// errors.hpp — exception hierarchy shared by all modules.
//
// Every error carries a Category; the CLI maps categories to exit codes
// (usage=1, io=2, data=3, resource=4, external=5).

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltloracle {

class Error : public std::runtime_error {
public:
    enum class Category { Usage = 1, Io = 2, Data = 3, Resource = 4, External = 5 };

    Error(Category cat, const std::string& msg) : std::runtime_error(msg), category_(cat) {}

    Category category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    Category category_;
};

/// LTL text that does not match the grammar.  position is a 0-based byte
/// offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& msg)
        : Error(Category::Data, msg + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Identifier not present in the declared alphabet.
class UnknownAtomError : public Error {
public:
    explicit UnknownAtomError(const std::string& atom)
        : Error(Category::Data, "unknown atom '" + atom + "' (not in declared alphabet)"),
          atom_(atom) {}
    const std::string& atom() const noexcept { return atom_; }

private:
    std::string atom_;
};

/// A configurable state/size cap was exceeded.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& msg) : Error(Category::Resource, msg) {}
};

/// A lasso that is not structurally a run of the Kripke structure.
class MalformedLassoError : public Error {
public:
    explicit MalformedLassoError(const std::string& msg) : Error(Category::Data, msg) {}
};

/// External tool could not be started.
class SpawnError : public Error {
public:
    explicit SpawnError(const std::string& msg) : Error(Category::External, msg) {}
};

/// External tool exceeded its wall-clock budget.
class TimeoutError : public Error {
public:
    explicit TimeoutError(const std::string& msg) : Error(Category::External, msg) {}
};

/// External tool output did not contain a recognizable verdict.
class UnrecognizedOutputError : public Error {
public:
    explicit UnrecognizedOutputError(const std::string& msg) : Error(Category::External, msg) {}
};

/// Invalid data fed to a learner or pipeline stage.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(Category::Data, msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(Category::Io, msg) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(Category::Usage, msg) {}
};

} // namespace ltloracle
