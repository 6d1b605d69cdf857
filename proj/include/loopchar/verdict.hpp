#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace loopchar {

/// Outcome of a certificate check. On failure `witness` holds a sample point
/// (or index) where the check broke and `detail` says what differed.
struct Verdict {
    bool passed = true;
    std::vector<std::int64_t> witness;
    std::string detail;
    // Sampling box actually used, for checks that sample.
    std::int64_t box = 0;

    explicit operator bool() const noexcept { return passed; }

    static Verdict fail(std::vector<std::int64_t> at, std::string why, std::int64_t box = 0) {
        return Verdict{false, std::move(at), std::move(why), box};
    }
};

}  // namespace loopchar
