#ifndef STRINGYZETA_ERRORS_HPP
#define STRINGYZETA_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace stringyzeta {

// Domain failure carrying a stable error name; the CLI prints the name and
// exits with status 1.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const char* name, const std::string& what) {
    throw DomainError(name, what);
}

} // namespace stringyzeta

#endif
