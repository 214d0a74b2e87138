#pragma once

#include <string>
#include <vector>

namespace hallpair {

/// One rewrite step of a derivation. The rule tag must come from the static
/// registry; assertions records caller-asserted facts (product structures,
/// containments) the engine does not verify.
struct TraceStep {
    std::string rule;
    std::string input;
    std::string output;
    std::string assertion;
};

class Trace {
public:
    void step(std::string rule, std::string input, std::string output, std::string assertion = "");
    const std::vector<TraceStep>& steps() const { return steps_; }
    std::string render_text() const;
    std::string render_latex() const;

    static const std::vector<std::string>& rule_registry();
    static bool registered(const std::string& rule);

private:
    std::vector<TraceStep> steps_;
};

}  // namespace hallpair
