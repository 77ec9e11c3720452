//! Conditions on a pair of decompositions `{V_i}`, `{V*_j}` under which the
//! projection algebras `D`, `D*` behave like those of a tridiagonal or
//! q-inverting pair.
//!
//! For the generator conditions the operators `A = Σ c_i F_i` of `D` satisfying
//! a containment form a subspace `C` of coefficient vectors. `A` generates `D`
//! iff its coefficients are pairwise distinct, and over an infinite field `C`
//! holds such a vector iff `C` lies in no hyperplane `c_i = c_j`.

use crate::exactmath::Scalar;
use crate::linalg::{algebra_closure_dim, flags_opposite, kernel, Decomposition, LinalgError, Matrix, Subspace};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// A generator `A₊` of `D` with `A₊ V*_j ⊆ V*_0 + ... + V*_{j+1}`.
    PlusGenerator,
    /// A generator `A₋` of `D` with `A₋ V*_j ⊆ V*_{j-1} + ... + V*_δ`.
    MinusGenerator,
    /// A generator `A*₊` of `D*` with `A*₊ V_i ⊆ V_0 + ... + V_{i+1}`.
    DualPlusGenerator,
    /// A generator `A*₋` of `D*` with `A*₋ V_i ⊆ V_{i-1} + ... + V_d`.
    DualMinusGenerator,
    /// No proper nonzero subspace is invariant under both `D` and `D*`.
    Irreducible,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::PlusGenerator,
        Condition::MinusGenerator,
        Condition::DualPlusGenerator,
        Condition::DualMinusGenerator,
        Condition::Irreducible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::PlusGenerator => "plus-generator",
            Condition::MinusGenerator => "minus-generator",
            Condition::DualPlusGenerator => "dual-plus-generator",
            Condition::DualMinusGenerator => "dual-minus-generator",
            Condition::Irreducible => "irreducible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome<S> {
    pub condition: Condition,
    pub passed: bool,
    /// Coefficients `c_i` of a generator `Σ c_i F_i` meeting the condition.
    pub witness: Option<Vec<S>>,
    /// Dimension of the coefficient space (generator conditions) or of the
    /// generated algebra (irreducibility).
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedCheck<S> {
    pub outcomes: Vec<ConditionOutcome<S>>,
}

impl<S: Scalar> GeneralizedCheck<S> {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, c: Condition) -> &ConditionOutcome<S> {
        self.outcomes.iter().find(|o| o.condition == c).expect("all conditions evaluated")
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        for o in &self.outcomes {
            let location = match &o.witness {
                Some(w) => format!(
                    "witness [{}]",
                    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                ),
                None => format!("dimension {}", o.dimension),
            };
            r.check(o.passed, o.condition.name(), location);
        }
        r
    }
}

/// Evaluates all five conditions for the decompositions `v` and `vstar`.
pub fn generalized_conditions_check<S: Scalar>(
    v: &Decomposition<S>,
    vstar: &Decomposition<S>,
) -> Result<GeneralizedCheck<S>, LinalgError> {
    if v.ambient() != vstar.ambient() {
        return Err(LinalgError::AmbientMismatch {
            left: v.ambient(),
            right: vstar.ambient(),
        });
    }
    let f = v.projections();
    let fstar = vstar.projections();
    let mut outcomes = vec![
        generator_condition(Condition::PlusGenerator, &f, vstar, |j| vstar.sum_upto(j + 1)),
        generator_condition(Condition::MinusGenerator, &f, vstar, |j| vstar.sum_from(j - 1)),
        generator_condition(Condition::DualPlusGenerator, &fstar, v, |i| v.sum_upto(i + 1)),
        generator_condition(Condition::DualMinusGenerator, &fstar, v, |i| v.sum_from(i - 1)),
    ];
    let n = v.ambient();
    let all: Vec<Matrix<S>> = f.iter().chain(&fstar).cloned().collect();
    let dim = algebra_closure_dim(&all)?;
    outcomes.push(ConditionOutcome {
        condition: Condition::Irreducible,
        passed: dim == n * n,
        witness: None,
        dimension: dim,
    });
    Ok(GeneralizedCheck { outcomes })
}

/// Annihilator `{φ | φ·t = 0 for t in T}` as a list of vectors.
fn annihilator<S: Scalar>(t: &Subspace<S>) -> Vec<Vec<S>> {
    kernel(&t.basis_matrix()).basis().to_vec()
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn generator_condition<S: Scalar>(
    condition: Condition,
    projections: &[Matrix<S>],
    acted_on: &Decomposition<S>,
    target: impl Fn(isize) -> Subspace<S>,
) -> ConditionOutcome<S> {
    let m = projections.len();
    let mut rows = Vec::new();
    for j in 0..=acted_on.diameter() {
        let ann = annihilator(&target(j as isize));
        for u in acted_on.component(j).basis() {
            let images: Vec<Vec<S>> = projections.iter().map(|f| f.apply(u)).collect();
            for phi in &ann {
                rows.push(images.iter().map(|fu| dot(phi, fu)).collect::<Vec<S>>());
            }
        }
    }
    let solutions: Vec<Vec<S>> = if rows.is_empty() {
        Subspace::full(m).basis().to_vec()
    } else {
        kernel(&Matrix::from_rows(rows).expect("rows have equal length"))
            .basis()
            .to_vec()
    };
    let separated = (0..m).all(|a| (a + 1..m).all(|b| solutions.iter().any(|s| s[a] != s[b])));
    let witness = if separated { distinct_combination(&solutions, m) } else { None };
    ConditionOutcome {
        condition,
        passed: witness.is_some(),
        witness,
        dimension: solutions.len(),
    }
}

/// Finds `Σ t^k b_k` with pairwise distinct coordinates for some `t = 1, 2, ...`.
///
/// When no hyperplane `c_a = c_b` contains every `b_k`, each difference
/// `c_a - c_b` is a nonzero polynomial in `t` of degree below the number of
/// basis vectors, so the search ends within `pairs * len + 1` values of `t`.
fn distinct_combination<S: Scalar>(basis: &[Vec<S>], m: usize) -> Option<Vec<S>> {
    if m == 1 {
        return Some(basis.first().cloned().unwrap_or_else(|| vec![S::one()]));
    }
    let pairs = m * (m - 1) / 2;
    for t in 1..=(pairs * basis.len() + 1) as i64 {
        let t = S::from_i64(t);
        let mut w = vec![S::zero(); m];
        let mut power = S::one();
        for b in basis {
            for (x, y) in w.iter_mut().zip(b) {
                *x = x.clone() + power.clone() * y.clone();
            }
            power = power * t.clone();
        }
        if (0..m).all(|a| (a + 1..m).all(|b| w[a] != w[b])) {
            return Some(w);
        }
    }
    None
}

/// Coefficients `c` with `x = Σ c_i F_i`, if `x` lies in the projection algebra.
fn coefficients_in<S: Scalar>(dec: &Decomposition<S>, x: &Matrix<S>) -> Option<Vec<S>> {
    let coeffs: Vec<S> = dec
        .components()
        .iter()
        .map(|c| {
            let u = &c.basis()[0];
            let p = u.iter().position(|a| !a.is_zero()).expect("basis vectors are nonzero");
            x.apply(u)[p].clone() / u[p].clone()
        })
        .collect();
    let rebuilt = dec.operator_with_eigenvalues(&coeffs).expect("one value per component");
    (rebuilt == *x).then_some(coeffs)
}

/// Checks specific operators against the four generator conditions: each
/// must lie in its algebra with distinct coefficients and satisfy the
/// containment.
pub fn check_assignment<S: Scalar>(
    v: &Decomposition<S>,
    vstar: &Decomposition<S>,
    a_plus: &Matrix<S>,
    a_minus: &Matrix<S>,
    astar_plus: &Matrix<S>,
    astar_minus: &Matrix<S>,
) -> Report {
    let mut report = Report::new();
    let cases = [
        (Condition::PlusGenerator, a_plus, v, vstar, true),
        (Condition::MinusGenerator, a_minus, v, vstar, false),
        (Condition::DualPlusGenerator, astar_plus, vstar, v, true),
        (Condition::DualMinusGenerator, astar_minus, vstar, v, false),
    ];
    for (cond, x, algebra, acted_on, raising) in cases {
        let generator = coefficients_in(algebra, x)
            .is_some_and(|c| (0..c.len()).all(|a| (a + 1..c.len()).all(|b| c[a] != c[b])));
        report.check(generator, cond.name(), "generates the projection algebra");
        for j in 0..=acted_on.diameter() {
            let j = j as isize;
            let target = if raising {
                acted_on.sum_upto(j + 1)
            } else {
                acted_on.sum_from(j - 1)
            };
            let image = acted_on.component(j as usize).image(x).expect("square");
            report.check(
                image.is_subspace_of(&target).expect("common ambient"),
                cond.name(),
                format!("containment at {j}"),
            );
        }
    }
    report
}

/// Checks that the flags induced by `{V_i}`, `{V*_i}` and their inversions
/// are mutually opposite.
pub fn check_induced_flags_opposite<S: Scalar>(v: &Decomposition<S>, vstar: &Decomposition<S>) -> Report {
    let mut report = Report::new();
    if !report.check(v.diameter() == vstar.diameter(), "diameters-equal", "V, Vstar") {
        return report;
    }
    let labelled = [
        ("V", v.induced_flag()),
        ("Vstar", vstar.induced_flag()),
        ("V inverted", v.inverted().induced_flag()),
        ("Vstar inverted", vstar.inverted().induced_flag()),
    ];
    for (a, fa) in &labelled {
        for (b, fb) in &labelled {
            if a == b {
                continue;
            }
            let ok = flags_opposite(fa, fb).is_ok_and(|u| u.is_some());
            report.check(ok, "flags-opposite", format!("{a}, {b}"));
        }
    }
    report
}
