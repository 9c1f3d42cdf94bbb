#pragma once

#include "hardy/config.hpp"
#include "hardy/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy::cli {

enum ExitCode
{
    exit_pass = 0,
    exit_violation = 1,
    exit_input = 2,
    exit_solver = 3
};

/*!
 * Runs the experiment named in the config and returns its report.
 *
 * Experiments: lemma1, lemma2, convex, mu, dirichlet, subgraph, exterior,
 * truncated, sharpness, robin-ev, neg-ev-demo. Throws on invalid input.
 */
verify::VerificationReport execute(config::RunConfig const& cfg);

//! 0 on pass, 3 on solver failure, 1 otherwise
int exit_code(verify::VerificationReport const& rep);

/*!
 * execute, then print a summary and write the report files when cfg.out is
 * set. Errors are reported on err and mapped to exit codes.
 */
int run(config::RunConfig const& cfg, std::ostream& out, std::ostream& err);

//! Interior weight and nearest boundary point at each point; CSV to os
void weight_eval(config::RunConfig const& cfg, std::vector<Point> const& points, std::ostream& os);

//! δ, projection, uniqueness and optionally d_e at each point; CSV to os
void geometry_probe(geometry::Domain const& domain,
                    std::vector<Point> const& points,
                    std::optional<Vector> const& direction,
                    std::ostream& os);

//! Points from CSV text (one per line, optional header, '#' comments)
std::vector<Point> read_points(std::istream& in);

//! Command-line entry point
int main(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

} // namespace hardy::cli
