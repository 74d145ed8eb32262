#pragma once

#include <stdexcept>
#include <string>

namespace rpp {

//! Classes of failure; each maps onto a CLI exit code.
enum class ErrorKind {
    InvalidArgument,   //!< bad parameter or violated precondition
    Contract,          //!< missing metadata, degenerate input
    Singularity,       //!< coincident or near-coincident points in a force sum
    Coincidence,       //!< displaced points landed on each other
    UnsupportedWindow,
    UnsupportedDimension,
    WindowTooSmall,
    Resource,
    Parse,
};

/*!
 * Exception type thrown by every module.
 *
 * The kind is what callers dispatch on; the message is for humans.
 */
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

//! Index of the point that triggered a singularity, if known.
class SingularityError : public Error
{
  public:
    SingularityError(std::size_t index, std::string const& what)
        : Error(ErrorKind::Singularity, what), index_(index)
    {
    }

    std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

char const* to_string(ErrorKind kind);

// Warning sink; defaults to std::clog. Pass nullptr to silence. Returns the
// previous handler.
using WarningHandler = void (*)(std::string const&);
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string const& message);

}  // namespace rpp
