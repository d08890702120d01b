#ifndef HOPF3_INPUT_HPP
#define HOPF3_INPUT_HPP

#include "hopf3/classify.hpp"
#include "hopf3/report.hpp"

namespace hopf3 {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vector-field input: exponent-keyed exact rational coefficients plus
// options. TOML for hand-written files, JSON for machine use.
struct InputSpec {
    VectorField3 field = VectorField3::zero();
    ClassifyOptions options;
    Json echo; // normalized form for the report
};

InputSpec load_input(const std::string& path, const std::string& format /* "", "toml", "json" */);

} // namespace hopf3

#endif
