#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpp/estimators.hpp"
#include "rpp/random.hpp"
#include "rpp/repulsion.hpp"

namespace rpp {

enum class Process { Poisson, Ginibre, Sobol };
enum class Method { MC, MCRB, MCCV, RQMC };

std::string to_string(Process p);
std::string to_string(Method m);
Process process_from_string(std::string const& s);
Method method_from_string(std::string const& s);

//! Per-cell replicated estimates along one parameter axis.
struct SweepResult
{
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<EstimateReport> per_cell;
    std::vector<std::size_t> failed;
    std::map<std::string, std::string> metadata;
};

struct SlopeFit
{
    double slope{0};
    double intercept{0};
    double slope_stderr{0};
    double r_squared{0};
};

//! Ordinary least squares y = slope * x + intercept; needs >= 3 points and
//! non-constant xs.
SlopeFit ols_fit(std::span<double const> xs, std::span<double const> ys);

//! Integration box used by every experiment: [-1/2, 1/2]^d.
Window integration_box(int d);

/*!
 * Draw a process on the ball of radius diam(K)/2 around the origin at
 * intensity rho.
 *
 * Ginibre (d = 2 only) eigenvalues are rescaled to intensity rho; with
 * ginibre_size = 0 the matrix size is chosen so the circular law covers the
 * ball with a margin. Sobol points are scrambled, scaled to the cube
 * circumscribing the ball and cropped.
 */
Configuration sample_source(Process process, int d, double rho, Seed seed,
                            int ginibre_size = 0);

//! Matrix size used by sample_source for Ginibre when none is given.
int default_ginibre_size(double rho);

//! Repel every point of source with the origin-ordered force and keep the
//! images that land in k. epsilon = 0 just restricts.
Configuration repel_into(Configuration const& source, Window const& k, double epsilon);

//! Points of the repelled process in K = [-1/2, 1/2]^d, from a source sample
//! drawn by sample_source.
Configuration sample_repelled_in_box(Process process, int d, double rho, double epsilon,
                                     Seed seed, int ginibre_size = 0);

struct EpsilonSweepConfig
{
    Process process{Process::Poisson};
    int d{3};
    double rho{500};
    std::string integrand{"f1"};
    std::vector<double> epsilons;
    int reps{50};
    Seed seed{};
    int ginibre_size{0};
};

/*!
 * Standard deviation of the self-normalized estimator on K against epsilon.
 *
 * Replication r uses stream r for every epsilon, so all cells share the
 * same underlying samples.
 */
SweepResult epsilon_sweep(EpsilonSweepConfig const& cfg);

struct MethodRun
{
    double estimate{0};
    //! Integrand evaluations charged to the budget.
    std::size_t n_points{0};
};

/*!
 * One replication of a method with a target budget of n points.
 *
 * MC, MCCV and RQMC evaluate f exactly n times; the MCCV pilot of size n is
 * not charged. MCRB draws n uniform points in K plus a binomial shell of the
 * same density on B(0, diam(K)/2) \ K, repels all of them with epsilon_0 and
 * returns (|K|/n) sum f over the images in K; it is charged the number of
 * images in K, which is n on average.
 */
MethodRun run_method(Method method, int d, Integrand const& f, std::size_t n, Seed seed);

struct NSweepConfig
{
    std::vector<Method> methods;
    int d{3};
    std::string integrand{"f3"};
    std::vector<std::size_t> n_values;
    int reps{100};
    Seed seed{};
};

struct MethodSweep
{
    Method method;
    SweepResult result;
    //! OLS of log std against log mean points; absent with < 3 cells.
    std::optional<SlopeFit> slope;
};

std::vector<MethodSweep> n_sweep(NSweepConfig const& cfg);

struct ErrorStudyConfig
{
    std::vector<Method> methods;
    int d{3};
    std::string integrand{"f2"};
    std::size_t n{500};
    int reps{200};
    Seed seed{};
};

//! Signed errors against the reference integral, one cell per method.
SweepResult error_study(ErrorStudyConfig const& cfg);
//! Same with an arbitrary integrand on K and its known integral.
SweepResult error_study(ErrorStudyConfig const& cfg, Integrand const& f, double reference);

}  // namespace rpp
