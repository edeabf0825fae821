#pragma once

#include <optional>

#include "fastlexrank/types.hpp"

namespace fastlexrank {

enum class ScoreMethod { Power, Fast };

struct CentralityScores {
    Vector values;
    ScoreMethod method = ScoreMethod::Fast;
    std::optional<int> iterations;
    std::optional<bool> converged;
};

}  // namespace fastlexrank
