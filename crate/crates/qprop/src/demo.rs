//! The spin-3/2 walkthrough: derives the y-axis projector, runs both
//! membership methods on the three fixture kets, solves the range and
//! kernel systems, and checks the distributivity failure.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use qprop_core::clinalg::least_squares_solve;
use qprop_core::logic::distributivity_check;
use qprop_core::sampling::overdetermination_report;
use qprop_core::spin::{eigenprojector, spin32_fixtures, spin_matrices, Spin, SpinFixtureSet};
use qprop_core::valuation::{born_probability, check_consistency, membership};
use qprop_core::{
    Complex64, ComplexMatrix, MembershipMethod, Result, Semantics, StateVector, Tolerance,
    TruthValue,
};

use crate::format::complex_json;
use crate::report::{complex_str, membership_str, render_grid, truth_bit, Table};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenprojectorSection {
    pub observable: &'static str,
    pub eigenvalue: f64,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OverdeterminationSection {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub overdetermined_r: bool,
    pub overdetermined_k: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateSection {
    pub state: String,
    pub membership_residual: &'static str,
    pub membership_linsys: &'static str,
    pub residual_range: f64,
    pub residual_kernel: f64,
    pub truth_sv: &'static str,
    pub truth_ql: &'static str,
    pub probability: f64,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionSection {
    pub system: &'static str,
    pub rhs: String,
    pub solution: Vec<[f64; 2]>,
    pub expected: Vec<[f64; 2]>,
    pub max_deviation: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistributivitySection {
    pub q: &'static str,
    pub p: &'static str,
    pub state: String,
    pub lhs_formula: &'static str,
    pub rhs_formula: &'static str,
    pub lhs: Option<u8>,
    pub rhs: Option<u8>,
    pub lhs_subspace_dim: usize,
    pub rhs_subspace_dim: usize,
    pub distributive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoReport {
    pub eigenprojector: EigenprojectorSection,
    pub overdetermination: OverdeterminationSection,
    pub states: Vec<StateSection>,
    pub kernel_solution: SolutionSection,
    pub range_solution: SolutionSection,
    pub distributivity: DistributivitySection,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn label(s: &StateVector) -> String {
    s.label().unwrap_or("").to_owned()
}

fn solve(
    system: &'static str,
    a: &ComplexMatrix,
    rhs: &StateVector,
    expected: &[Complex64],
    tol: &Tolerance,
) -> Result<SolutionSection> {
    let ls = least_squares_solve(a, rhs.vector(), tol)?;
    let solution: Vec<Complex64> = (0..ls.solution.rows())
        .map(|i| ls.solution[(i, 0)])
        .collect();
    let max_deviation = solution
        .iter()
        .zip(expected)
        .map(|(x, e)| (x - e).norm())
        .fold(0.0, f64::max);
    Ok(SolutionSection {
        system,
        rhs: label(rhs),
        solution: solution.iter().copied().map(complex_json).collect(),
        expected: expected.iter().copied().map(complex_json).collect(),
        max_deviation,
        residual: ls.residual_norm,
    })
}

pub fn demo_spin32(tol: &Tolerance) -> Result<DemoReport> {
    let fx = spin32_fixtures();
    let p = &fx.projector_y32;
    let mut checks = Vec::new();
    let mut check = |name, passed, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        })
    };

    let sy = spin_matrices(Spin::from_twice(3)?).y;
    let derived = eigenprojector(&sy, 1.5, tol)?;
    let max_deviation = (derived.matrix() - p.matrix())
        .as_slice()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    check(
        "eigenprojector matches fixture",
        max_deviation <= 1e-12,
        format!("max entry deviation {max_deviation:.3e}"),
    );

    let od = overdetermination_report(p, tol);
    check(
        "both systems overdetermined",
        od.m == 1 && od.k == 3 && od.overdetermined_r && od.overdetermined_k,
        format!("n = {}, m = {}, k = {}", od.n, od.m, od.k),
    );

    let kets = [&fx.ket_y32, &fx.ket_y12, &fx.ket_x32];
    let want = [TruthValue::True, TruthValue::False, TruthValue::Gap];
    let want_pr = [1.0, 0.0, 0.125];
    let mut states = Vec::new();
    for ((ket, want), want_pr) in kets.into_iter().zip(want).zip(want_pr) {
        let res = membership(ket, p, MembershipMethod::Residual, tol)?;
        let lin = membership(ket, p, MembershipMethod::LinearSystem, tol)?;
        let sv = res.truth(Semantics::Supervaluation);
        let pr = born_probability(ket, p)?;
        let consistent = check_consistency(ket, p, Semantics::Supervaluation, tol)?.consistent;
        check(
            "truth value",
            sv == want && lin.truth(Semantics::Supervaluation) == want,
            format!(
                "{} under {}: {sv}",
                label(ket),
                SpinFixtureSet::PROJECTOR_Y32
            ),
        );
        check(
            "probability",
            (pr - want_pr).abs() <= 1e-9 && consistent,
            format!("Pr = {pr}"),
        );
        states.push(StateSection {
            state: label(ket),
            membership_residual: membership_str(res.membership),
            membership_linsys: membership_str(lin.membership),
            residual_range: res.residual_range,
            residual_kernel: res.residual_kernel,
            truth_sv: sv.as_str(),
            truth_ql: res.truth(Semantics::QuantumLogicTotal).as_str(),
            probability: pr,
            consistent,
        });
    }

    let s = 1.0 / (8.0 * SQRT_2);
    let want_k = [
        Complex64::new(0.0, -3f64.sqrt() * s),
        Complex64::new(2.0 * s, 0.0),
        Complex64::new(0.0, s),
    ];
    let kernel_solution = solve(
        "KX = |Y+1/2>",
        &fx.kernel_generators(),
        &fx.ket_y12,
        &want_k,
        tol,
    )?;
    check(
        "kernel solution",
        kernel_solution.max_deviation <= 1e-9 && kernel_solution.residual <= 1e-9,
        format!(
            "deviation {:.3e}, residual {:.3e}",
            kernel_solution.max_deviation, kernel_solution.residual
        ),
    );
    let want_r = [Complex64::new(0.0, 1.0 / (2.0 * SQRT_2))];
    let range_solution = solve(
        "RX = |Y+3/2>",
        &fx.range_generator(),
        &fx.ket_y32,
        &want_r,
        tol,
    )?;
    check(
        "range solution",
        range_solution.max_deviation <= 1e-9 && range_solution.residual <= 1e-12,
        format!(
            "deviation {:.3e}, residual {:.3e}",
            range_solution.max_deviation, range_solution.residual
        ),
    );

    let d = distributivity_check(&fx.projector_x32(), p, &fx.ket_x32, tol)?;
    let distributivity = DistributivitySection {
        q: SpinFixtureSet::PROJECTOR_X32,
        p: SpinFixtureSet::PROJECTOR_Y32,
        state: label(&fx.ket_x32),
        lhs_formula: "Q & (P | !P)",
        rhs_formula: "(Q & P) | (Q & !P)",
        lhs: truth_bit(d.lhs_value),
        rhs: truth_bit(d.rhs_value),
        lhs_subspace_dim: d.lhs_subspace_dim,
        rhs_subspace_dim: d.rhs_subspace_dim,
        distributive: d.holds,
    };
    check(
        "distributivity fails",
        distributivity.lhs == Some(1) && distributivity.rhs == Some(0),
        format!("lhs {}, rhs {}", d.lhs_value, d.rhs_value),
    );

    let passed = checks.iter().all(|c| c.passed);
    Ok(DemoReport {
        eigenprojector: EigenprojectorSection {
            observable: "S_y, j = 3/2",
            eigenvalue: 1.5,
            max_deviation,
        },
        overdetermination: OverdeterminationSection {
            n: od.n,
            m: od.m,
            k: od.k,
            overdetermined_r: od.overdetermined_r,
            overdetermined_k: od.overdetermined_k,
        },
        states,
        kernel_solution,
        range_solution,
        distributivity,
        checks,
        passed,
    })
}

fn solution_table(title: &str, s: &SolutionSection) -> Table {
    let show = |v: &[[f64; 2]]| {
        v.iter()
            .map(|[re, im]| complex_str(Complex64::new(*re, *im)))
            .collect::<Vec<_>>()
            .join(", ")
    };
    Table::new(title)
        .row("system", s.system)
        .row("solution", show(&s.solution))
        .row("expected", show(&s.expected))
        .row("max_deviation", format!("{:.3e}", s.max_deviation))
        .row("residual", format!("{:.3e}", s.residual))
}

impl DemoReport {
    /// Plain-text rendering; the state rows form one grid.
    pub fn to_text(&self, config: &Table) -> String {
        let bit = |b: Option<u8>| b.map_or("gap".to_owned(), |b| b.to_string());
        let head = [
            Table::new("eigenprojector")
                .row("observable", self.eigenprojector.observable)
                .row("eigenvalue", self.eigenprojector.eigenvalue)
                .row(
                    "max_deviation",
                    format!("{:.3e}", self.eigenprojector.max_deviation),
                ),
            Table::new("overdetermination")
                .row("n", self.overdetermination.n)
                .row("m", self.overdetermination.m)
                .row("k", self.overdetermination.k),
        ];
        let rows: Vec<Vec<String>> = self
            .states
            .iter()
            .map(|s| {
                vec![
                    s.state.clone(),
                    s.membership_residual.into(),
                    s.membership_linsys.into(),
                    s.truth_sv.into(),
                    s.truth_ql.into(),
                    format!("{:.6}", s.probability),
                ]
            })
            .collect();
        let grid = render_grid(
            "states against Y+3/2",
            &["state", "residual", "linsys", "SV", "QL", "Pr"],
            &rows,
        );
        let dist = &self.distributivity;
        let mut checks = Table::new("checks");
        for c in &self.checks {
            checks.push(
                format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name),
                &c.detail,
            );
        }
        let tail = [
            solution_table("kernel solution", &self.kernel_solution),
            solution_table("range solution", &self.range_solution),
            Table::new("distributivity")
                .row("Q, P", format!("{}, {}", dist.q, dist.p))
                .row("state", &dist.state)
                .row(dist.lhs_formula, bit(dist.lhs))
                .row(dist.rhs_formula, bit(dist.rhs)),
            checks,
            config.clone(),
        ];
        format!(
            "{}\n{}\n{}",
            crate::report::render(&head),
            grid,
            crate::report::render(&tail)
        )
    }
}
