#ifndef EPILOG_MODEL_H
#define EPILOG_MODEL_H

namespace epilog
{

/**
 * @brief Rates of the controlled logistic model.
 *
 * dy/dt = (1-u) r y (1 - gamma y) + (1-v) h, with y the cumulative number of cases.
 */
struct ModelParams {
    double r     = 0.0; ///< human-to-human transmission rate, per day
    double gamma = 0.0; ///< treatment facility rate; 1/gamma is the final epidemic size in persons
    double h     = 0.0; ///< zoonotic transmission rate, persons per day

    /// Fitted values for the 2022 US outbreak (10 May to 31 Dec).
    static constexpr ModelParams reference()
    {
        return {0.06, 0.000034, 5.99};
    }

    /// Throws DomainError unless r > 0, gamma > 0, h >= 0 and 1/gamma is finite.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Constant-in-time intervention levels.
struct ControlPolicy {
    double u                    = 0.0; ///< efficacy of control 1 (human-to-human), in [0, 1]
    double v                    = 0.0; ///< efficacy of control 2 (animal-to-human), in [0, 1]
    double treatment_multiplier = 1.0; ///< gamma is scaled by this factor, >= 1

    static constexpr ControlPolicy none()
    {
        return {};
    }

    void validate() const;

    bool is_null() const
    {
        return u == 0.0 && v == 0.0 && treatment_multiplier == 1.0;
    }

    friend bool operator==(const ControlPolicy&, const ControlPolicy&) = default;
};

/// Effective rates under a policy and the radicals of the tanh solution.
struct DerivedConstants {
    double a1 = 0.0; ///< (1-u) r
    double a2 = 0.0; ///< 1 / (m gamma), the effective carrying capacity
    double a3 = 0.0; ///< (1-v) h
    double b1 = 0.0; ///< sqrt(a1 a2 + 4 a3)
    double b2 = 0.0; ///< sqrt(a1 / a2)
    double b3 = 0.0; ///< sqrt(a1 a2)
};

struct Equilibria {
    double xi1 = 0.0; ///< upper root of the right-hand side, the attained final size
    double xi2 = 0.0; ///< lower root, negative whenever a3 > 0
};

struct PeakInfo {
    double peak_day           = 0.0; ///< days after t = 0 at which daily incidence is maximal
    double peak_daily_cases   = 0.0; ///< a1 a2 / 4 + a3
    double cumulative_at_peak = 0.0; ///< a2 / 2
    bool already_passed       = false; ///< true when y0 >= a2 / 2, in which case peak_day <= 0
};

DerivedConstants derive_constants(const ModelParams& params, const ControlPolicy& policy);

/// Right-hand side of the model at cumulative case count y.
double rhs(double y, const ModelParams& params, const ControlPolicy& policy);
double rhs(double y, const DerivedConstants& c);

/**
 * @brief Exact solution on the growing branch, anchored at y(0) = y0.
 *
 * y(t) = a2/2 + (b1 / (2 b2)) tanh(k (t - t*)), k = b1 b2 / 2.
 * Requires u < 1 and xi2 < y0 < xi1, otherwise throws DomainError.
 */
double closed_form(double t, double y0, const ModelParams& params, const ControlPolicy& policy);

/**
 * @brief Shift t* of the tanh solution for initial value y0, i.e. the inflection time.
 *
 * Same preconditions as closed_form().
 */
double inflection_time(double y0, const ModelParams& params, const ControlPolicy& policy);

/**
 * @brief Exact solution for any y0 >= 0 and u < 1.
 *
 * Uses the tanh branch between the equilibria, the coth branch above xi1, and the constant
 * solution at an equilibrium. Calibration relies on it so that trial parameters that put y0
 * above the final size still give a finite objective.
 */
double exact_solution(double t, double y0, const ModelParams& params, const ControlPolicy& policy);

/// Roots of the quadratic right-hand side. Throws DomainError for u = 1.
Equilibria equilibria(const ModelParams& params, const ControlPolicy& policy);

/// Analytic peak of daily incidence. Throws DomainError for u = 1 or y0 outside (xi2, xi1).
PeakInfo peak_incidence(const ModelParams& params, const ControlPolicy& policy, double y0);

} // namespace epilog

#endif // EPILOG_MODEL_H
