#include "rpp/error.hpp"

#include <atomic>
#include <iostream>

namespace rpp {

char const* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Coincidence: return "coincidence";
    case ErrorKind::UnsupportedWindow: return "unsupported-window";
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::WindowTooSmall: return "window-too-small";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

namespace {
void default_handler(std::string const& message)
{
    std::clog << "warning: " << message << '\n';
}

std::atomic<WarningHandler> g_handler{&default_handler};
}  // namespace

WarningHandler set_warning_handler(WarningHandler handler)
{
    return g_handler.exchange(handler);
}

void warn(std::string const& message)
{
    if (auto h = g_handler.load())
        h(message);
}

}  // namespace rpp
