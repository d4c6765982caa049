#pragma once

#include <stdexcept>
#include <string>

namespace fdb::groupoid {

enum class GroupoidErrc {
    invalid_group,
    invalid_groupoid,
    unknown_object,
    codomain_mismatch,
    not_functorial,
    invalid_action,
};

inline const char* errc_name(GroupoidErrc c)
{
    switch (c) {
    case GroupoidErrc::invalid_group: return "InvalidGroup";
    case GroupoidErrc::invalid_groupoid: return "InvalidGroupoid";
    case GroupoidErrc::unknown_object: return "UnknownObject";
    case GroupoidErrc::codomain_mismatch: return "CodomainMismatch";
    case GroupoidErrc::not_functorial: return "NotFunctorial";
    case GroupoidErrc::invalid_action: return "InvalidAction";
    }
    return "GroupoidError";
}

class GroupoidError : public std::runtime_error {
public:
    GroupoidError(GroupoidErrc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    GroupoidErrc code() const noexcept { return code_; }

private:
    GroupoidErrc code_;
};

} // namespace fdb::groupoid
