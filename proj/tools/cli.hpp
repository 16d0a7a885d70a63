#pragma once

#include <eqgraph/error.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace eqgraph::cli
{
    /// Exit codes: 0 property holds or object produced, 1 property fails,
    /// 2 usage or input error, 3 resource bound hit or inconclusive.
    constexpr int exit_ok = 0;
    constexpr int exit_fails = 1;
    constexpr int exit_usage = 2;
    constexpr int exit_bound = 3;

    auto exit_code(ErrorKind kind) -> int;

    auto build_id() -> std::string;

    /// `args` excludes the program name. Data goes to `out` (or --output),
    /// diagnostics to `err`.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
