#ifndef GTB_ERRORS_HPP
#define GTB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gtb {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arm indices carried by errors are 0-based, matching the library API.
// The CLI layer converts to the 1-based indexing used in config files.

struct AsymmetricMatrix final : Error {
    AsymmetricMatrix(int i_, int j_)
        : Error("connectivity matrix is not symmetric at (" + std::to_string(i_) + "," +
                std::to_string(j_) + ")"),
          i(i_), j(j_) {}
    int i, j;
};

struct MissingSelfLoop final : Error {
    explicit MissingSelfLoop(int arm_)
        : Error("connectivity matrix has no self-loop on arm " + std::to_string(arm_)), arm(arm_) {}
    int arm;
};

struct InstanceTooLarge final : Error {
    InstanceTooLarge(const std::string& what_, double size_, double cap_)
        : Error(what_ + " exceeds cap (" + std::to_string(size_) + " > " + std::to_string(cap_) + ")"),
          size(size_), cap(cap_) {}
    double size, cap;
};

struct IndexOutOfRange final : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

struct GenerationFailed final : Error {
    explicit GenerationFailed(const std::string& msg) : Error(msg) {}
};

struct OddHorizon final : Error {
    explicit OddHorizon(long t)
        : Error("lower-bound pair requires an even horizon T >= 4, got " + std::to_string(t)) {}
};

struct HorizonExceeded final : Error {
    explicit HorizonExceeded(long t) : Error("episode already at horizon T=" + std::to_string(t)) {}
};

struct InvalidArm final : Error {
    InvalidArm(int arm_, int k)
        : Error("arm " + std::to_string(arm_) + " outside [0," + std::to_string(k) + ")"), arm(arm_) {}
    int arm;
};

struct NonDeterministicHistory final : Error {
    NonDeterministicHistory()
        : Error("deterministic estimator invoked on a sigma>0 history") {}
};

struct NotBlockDiagonal final : Error {
    NotBlockDiagonal() : Error("connectivity matrix is not block-diagonal") {}
};

struct StochasticInstance final : Error {
    StochasticInstance() : Error("deterministic algorithm requires sigma=0") {}
};

struct BadParameters final : Error {
    explicit BadParameters(const std::string& msg) : Error(msg) {}
};

struct BadArguments final : Error {
    explicit BadArguments(const std::string& msg) : Error(msg) {}
};

struct OracleMismatch final : Error {
    explicit OracleMismatch(const std::string& msg) : Error(msg) {}
};

struct ConfigError final : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace gtb

#endif
