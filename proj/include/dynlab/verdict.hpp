#pragma once

#include <string_view>

namespace dynlab {

enum class Verdict { pass, fail, indeterminate };

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::indeterminate: return "INDETERMINATE";
    }
    return "INDETERMINATE";
}

// CLI exit-code contract: 0 PASS, 1 FAIL, 3 INDETERMINATE (2 is input error).
constexpr int exit_code(Verdict v) {
    switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::indeterminate: return 3;
    }
    return 3;
}

constexpr Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

} // namespace dynlab
