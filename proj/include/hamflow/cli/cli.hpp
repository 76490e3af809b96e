#pragma once

namespace hamflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIndeterminate = 3;

int run(int argc, char** argv);

}  // namespace hamflow::cli
