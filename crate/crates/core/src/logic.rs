//! Propositional formulas over projector atoms.
//!
//! A formula is evaluated by computing the subspace that represents it and
//! then testing membership of the state in that subspace. The connective
//! table only appears in [`meet_membership_rule`], which conjoins the
//! membership predicates of two formulas instead of intersecting their
//! subspaces.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::clinalg::Tolerance;
use crate::error::{Error, Result};
use crate::subspace::{self, Projector, Subspace};
use crate::valuation::{self, Semantics, StateVector, TruthValue};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub label: String,
    pub projector: Arc<Projector>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(label: impl Into<String>, projector: impl Into<Arc<Projector>>) -> Self {
        Self::Atom(Atom {
            label: label.into(),
            projector: projector.into(),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Self::Not(Box::new(self))
    }

    pub fn and(self, rhs: Self) -> Self {
        Self::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        Self::Or(Box::new(self), Box::new(rhs))
    }

    pub fn depth(&self) -> usize {
        match self {
            Self::Atom(_) => 0,
            Self::Not(f) => 1 + f.depth(),
            Self::And(a, b) | Self::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Ambient dimension shared by every atom.
    pub fn ambient_dim(&self) -> Result<usize> {
        fn walk(f: &Formula, expected: &mut Option<usize>) -> Result<()> {
            match f {
                Formula::Atom(a) => {
                    let found = a.projector.dim();
                    match *expected {
                        None => *expected = Some(found),
                        Some(e) if e != found => {
                            return Err(Error::MixedAtomDimensions {
                                label: a.label.clone(),
                                expected: e,
                                found,
                            })
                        }
                        Some(_) => {}
                    }
                    Ok(())
                }
                Formula::Not(g) => walk(g, expected),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    walk(a, expected)?;
                    walk(b, expected)
                }
            }
        }
        let mut dim = None;
        walk(self, &mut dim)?;
        Ok(dim.expect("a formula has at least one atom"))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Atom(a) => f.write_str(&a.label),
            Self::Not(g) => write!(f, "!{g}"),
            Self::And(a, b) => write!(f, "({a} & {b})"),
            Self::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

/// Subspace representing the formula: atoms map to ranges, `!` to the
/// orthocomplement, `&` to the meet and `|` to the join.
pub fn represent(f: &Formula, tol: &Tolerance) -> Result<Subspace> {
    f.ambient_dim()?;
    represent_unchecked(f, tol)
}

fn represent_unchecked(f: &Formula, tol: &Tolerance) -> Result<Subspace> {
    match f {
        Formula::Atom(a) => Ok(subspace::range_of(&a.projector, tol)),
        Formula::Not(g) => Ok(subspace::ortho_complement(&represent_unchecked(g, tol)?)),
        Formula::And(a, b) => subspace::meet(
            &represent_unchecked(a, tol)?,
            &represent_unchecked(b, tol)?,
            tol,
        ),
        Formula::Or(a, b) => subspace::join(
            &represent_unchecked(a, tol)?,
            &represent_unchecked(b, tol)?,
            tol,
        ),
    }
}

/// Valuates the projector onto the formula's representing subspace.
pub fn evaluate(
    f: &Formula,
    state: &StateVector,
    semantics: Semantics,
    tol: &Tolerance,
) -> Result<TruthValue> {
    let s = represent(f, tol)?;
    valuation::valuate(state, &subspace::projector_of(&s), semantics, tol)
}

/// Conjunction of the two membership predicates under supervaluation,
/// combined with strong Kleene `and`.
pub fn meet_membership_rule(
    state: &StateVector,
    a: &Formula,
    b: &Formula,
    tol: &Tolerance,
) -> Result<TruthValue> {
    let va = evaluate(a, state, Semantics::Supervaluation, tol)?;
    let vb = evaluate(b, state, Semantics::Supervaluation, tol)?;
    Ok(va & vb)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistributivityReport {
    /// Value of `Q & (P | !P)`.
    pub lhs_value: TruthValue,
    /// Value of `(Q & P) | (Q & !P)`.
    pub rhs_value: TruthValue,
    pub lhs_subspace_dim: usize,
    pub rhs_subspace_dim: usize,
    pub holds: bool,
}

/// Compares `Q & (P | !P)` with `(Q & P) | (Q & !P)` under total semantics.
pub fn distributivity_check(
    q: &Projector,
    p: &Projector,
    state: &StateVector,
    tol: &Tolerance,
) -> Result<DistributivityReport> {
    let q = Formula::atom("Q", q.clone());
    let p = Formula::atom("P", p.clone());
    let lhs = q.clone().and(p.clone().or(p.clone().not()));
    let rhs = q.clone().and(p.clone()).or(q.and(p.not()));

    let lhs_space = represent(&lhs, tol)?;
    let rhs_space = represent(&rhs, tol)?;
    let sem = Semantics::QuantumLogicTotal;
    let lhs_value = valuation::valuate(state, &subspace::projector_of(&lhs_space), sem, tol)?;
    let rhs_value = valuation::valuate(state, &subspace::projector_of(&rhs_space), sem, tol)?;
    Ok(DistributivityReport {
        lhs_value,
        rhs_value,
        lhs_subspace_dim: lhs_space.dim(),
        rhs_subspace_dim: rhs_space.dim(),
        holds: lhs_value == rhs_value,
    })
}
